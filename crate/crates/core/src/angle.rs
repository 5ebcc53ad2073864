//! Exact angles of the form `(k/m)·π` and the congruences that drive the
//! enumeration of representation classes.
//!
//! Every value here is a rational multiple of π stored as a reduced
//! [`Ratio<i64>`]; nothing in this module touches floating point except the
//! explicit [`RationalAngle::radians`] escape hatch used by the geometry code.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AngleError {
    #[error("pretzel parameter must be nonzero")]
    ZeroParameter,
    #[error("the cofactor sum of the parameters vanishes; the non-central value is not finitely constrained")]
    ZeroDeterminant,
    #[error("zero denominator in angle")]
    ZeroDenominator,
    #[error("cannot parse angle {0:?}")]
    Parse(String),
}

/// An angle `coeff · π` with `coeff` an exact rational.
///
/// Constructed values are always reduced and wrapped into `[0, 2π)`.
/// [`RationalAngle::fold_to_distance`] produces values in `[0, π]`, which are
/// still inside the canonical range.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalAngle(Ratio<i64>);

impl RationalAngle {
    pub const ZERO: RationalAngle = RationalAngle(Ratio::new_raw(0, 1));
    pub const PI: RationalAngle = RationalAngle(Ratio::new_raw(1, 1));

    /// `numerator/denominator · π`, wrapped into `[0, 2π)`.
    pub fn new(numerator: i64, denominator: i64) -> Result<Self, AngleError> {
        if denominator == 0 {
            return Err(AngleError::ZeroDenominator);
        }
        Ok(Self::from_ratio(Ratio::new(numerator, denominator)))
    }

    /// Wraps an arbitrary multiple of π into `[0, 2π)`.
    pub fn from_ratio(coeff: Ratio<i64>) -> Self {
        let two = Ratio::from_integer(2);
        let mut r = coeff % two;
        if r.is_negative() {
            r += two;
        }
        RationalAngle(r)
    }

    /// The coefficient of π, in `[0, 2)`.
    pub fn coeff(&self) -> Ratio<i64> {
        self.0
    }

    pub fn numerator(&self) -> i64 {
        *self.0.numer()
    }

    pub fn denominator(&self) -> i64 {
        *self.0.denom()
    }

    pub fn radians(&self) -> f64 {
        std::f64::consts::PI * (*self.0.numer() as f64) / (*self.0.denom() as f64)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// `true` for 0 and π, the angles at which consecutive points coincide or
    /// are antipodal.
    pub fn is_endpoint(&self) -> bool {
        self.0.is_zero() || self.0 == Ratio::from_integer(1)
    }

    pub fn add_mod_2pi(self, other: RationalAngle) -> RationalAngle {
        add_mod_2pi(self, other)
    }

    pub fn neg_mod_2pi(self) -> RationalAngle {
        RationalAngle::from_ratio(-self.0)
    }

    pub fn sub_mod_2pi(self, other: RationalAngle) -> RationalAngle {
        RationalAngle::from_ratio(self.0 - other.0)
    }

    pub fn fold_to_distance(self) -> RationalAngle {
        fold_to_distance(self)
    }
}

pub fn add_mod_2pi(a: RationalAngle, b: RationalAngle) -> RationalAngle {
    RationalAngle::from_ratio(a.0 + b.0)
}

/// Spherical distance represented by an angle: `a` if `a ≤ π`, else `2π − a`.
pub fn fold_to_distance(a: RationalAngle) -> RationalAngle {
    let one = Ratio::from_integer(1);
    if a.0 <= one {
        a
    } else {
        RationalAngle(Ratio::from_integer(2) - a.0)
    }
}

impl fmt::Display for RationalAngle {
    /// Formats the coefficient of π, e.g. `3/7`, `1`, `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl FromStr for RationalAngle {
    type Err = AngleError;

    /// Parses `k/m` or `k` as the coefficient of π.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let parse = |t: &str| {
            t.trim()
                .parse::<i64>()
                .map_err(|_| AngleError::Parse(s.to_string()))
        };
        match s.split_once('/') {
            Some((n, d)) => RationalAngle::new(parse(n)?, parse(d)?),
            None => RationalAngle::new(parse(s)?, 1),
        }
    }
}

impl Serialize for RationalAngle {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for RationalAngle {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Which central value the distinguished element `(s_i s_{i+1})^{p_i}` takes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CentralCase {
    PlusOne,
    MinusOne,
}

impl CentralCase {
    /// The value of the binary dihedral parameter β (as a multiple of π) at
    /// which the general chain congruence reduces to this case.
    pub fn beta(self) -> RationalAngle {
        match self {
            CentralCase::PlusOne => RationalAngle::PI,
            CentralCase::MinusOne => RationalAngle::ZERO,
        }
    }

    pub fn sign(self) -> i32 {
        match self {
            CentralCase::PlusOne => 1,
            CentralCase::MinusOne => -1,
        }
    }
}

impl fmt::Display for CentralCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CentralCase::PlusOne => f.write_str("+1"),
            CentralCase::MinusOne => f.write_str("-1"),
        }
    }
}

/// Distances `α = kπ/|p|`, `0 ≤ k ≤ |p|`, with `p·α ≡ pπ` (PlusOne) or
/// `p·α ≡ (p+1)π` (MinusOne) modulo 2π. Ascending.
pub fn solve_edge_congruence(p: i64, case: CentralCase) -> Result<Vec<RationalAngle>, AngleError> {
    if p == 0 {
        return Err(AngleError::ZeroParameter);
    }
    let m = p.abs();
    let parity = match case {
        CentralCase::PlusOne => p.rem_euclid(2),
        CentralCase::MinusOne => (p + 1).rem_euclid(2),
    };
    Ok((0..=m)
        .filter(|k| k.rem_euclid(2) == parity)
        .map(|k| RationalAngle(Ratio::new(k, m)))
        .collect())
}

/// `Σᵢ Πⱼ≠ᵢ pⱼ`, the signed determinant of the pretzel diagram.
pub fn cofactor_sum(p: &[i64]) -> i64 {
    (0..p.len())
        .map(|i| {
            p.iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, &x)| x)
                .product::<i64>()
        })
        .sum()
}

/// Step angles `a ∈ [0, 2π)` with `p·a ≡ β + (p+1)π (mod 2π)`.
///
/// The right-hand side encodes `ρ((s_i s_{i+1})^p) = −e^{iβ}` for points on
/// the ⟨j,k⟩ great circle: `(j e^{iθ} · j e^{iθ'})^p = (−1)^p e^{ip(θ'−θ)}`.
/// For odd `p` this is `p·a ≡ β`; `β = π` and `β = 0` are the +1 and −1
/// cases respectively.
pub fn chain_step_angles(p: i64, beta: RationalAngle) -> Result<Vec<RationalAngle>, AngleError> {
    if p == 0 {
        return Err(AngleError::ZeroParameter);
    }
    let target = beta.0 + Ratio::from_integer(p + 1);
    let mut out: Vec<RationalAngle> = (0..p.abs())
        .map(|k| {
            RationalAngle::from_ratio(
                (target + Ratio::from_integer(2 * k)) / Ratio::from_integer(p),
            )
        })
        .collect();
    out.sort();
    out.dedup();
    Ok(out)
}

/// All step tuples `(a_1, …, a_n)` with `p_i a_i ≡ β + (p_i+1)π` and
/// `Σ a_i ≡ 0 (mod 2π)`, in lexicographic order.
pub fn closed_chain_tuples(
    p: &[i64],
    beta: RationalAngle,
) -> Result<Vec<Vec<RationalAngle>>, AngleError> {
    let n = p.len();
    let steps = p
        .iter()
        .map(|&pi| chain_step_angles(pi, beta))
        .collect::<Result<Vec<_>, _>>()?;
    if n == 0 {
        return Ok(Vec::new());
    }
    let last: HashSet<RationalAngle> = steps[n - 1].iter().copied().collect();
    let mut out = Vec::new();
    let mut prefix = Vec::with_capacity(n);
    extend_chain(
        &steps[..n - 1],
        &last,
        RationalAngle::ZERO,
        &mut prefix,
        &mut out,
    );
    Ok(out)
}

fn extend_chain(
    steps: &[Vec<RationalAngle>],
    last: &HashSet<RationalAngle>,
    partial: RationalAngle,
    prefix: &mut Vec<RationalAngle>,
    out: &mut Vec<Vec<RationalAngle>>,
) {
    match steps.split_first() {
        None => {
            let closing = partial.neg_mod_2pi();
            if last.contains(&closing) {
                let mut tuple = prefix.clone();
                tuple.push(closing);
                out.push(tuple);
            }
        }
        Some((choices, rest)) => {
            for &a in choices {
                prefix.push(a);
                extend_chain(rest, last, partial.add_mod_2pi(a), prefix, out);
                prefix.pop();
            }
        }
    }
}

/// One non-central value β together with every closed step tuple realizing it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BetaSolution {
    pub beta: RationalAngle,
    pub tuples: Vec<Vec<RationalAngle>>,
}

/// Every `β ∈ (0, 2π) \ {π}` admitting a closed step tuple, with its tuples.
///
/// Summing the congruences shows `β·Δ'/π ∈ ℤ` where `Δ'` is the cofactor sum,
/// so the candidates `β = mπ/|Δ'|` are exhaustive.
pub fn solve_beta_congruences(p: &[i64]) -> Result<Vec<BetaSolution>, AngleError> {
    if p.contains(&0) {
        return Err(AngleError::ZeroParameter);
    }
    let delta = cofactor_sum(p).abs();
    if delta == 0 {
        return Err(AngleError::ZeroDeterminant);
    }
    let mut out = Vec::new();
    for m in 1..2 * delta {
        let beta = RationalAngle(Ratio::new(m, delta));
        if beta.is_endpoint() {
            continue;
        }
        let tuples = closed_chain_tuples(p, beta)?;
        if !tuples.is_empty() {
            out.push(BetaSolution { beta, tuples });
        }
    }
    Ok(out)
}

/// Running sums `θ_1 = 0, θ_{i+1} = θ_i + a_i` of a step tuple; the last
/// step closes the chain and is not included.
pub fn chain_thetas(steps: &[RationalAngle]) -> Vec<RationalAngle> {
    let mut thetas = Vec::with_capacity(steps.len());
    let mut acc = RationalAngle::ZERO;
    for a in steps {
        thetas.push(acc);
        acc = acc.add_mod_2pi(*a);
    }
    thetas
}

/// `true` iff `a` and `b` are coprime as integers (sign ignored).
pub fn coprime(a: i64, b: i64) -> bool {
    a.abs().gcd(&b.abs()) == 1
}
