//! Pretzel parameters and their classical invariants.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::angle::{cofactor_sum, coprime};
use crate::rep;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KnotError {
    #[error("pretzel parameter at position {0} is zero; P(0,q,r) is a connected sum of two torus links, not a pretzel")]
    ZeroParameter(usize),
    #[error("a pretzel diagram needs at least two twist regions, got {0}")]
    TooFewStrands(usize),
    #[error("{0} has {1} components; the count applies to knots only")]
    NotAKnot(PretzelKnot, usize),
    #[error("{0}: Seifert matrix and signature are implemented for three odd parameters only")]
    UnsupportedShape(PretzelKnot),
    #[error("cannot parse pretzel parameters {0:?}: expected comma-separated nonzero integers, e.g. 3,5,7 or p=-3,5,7")]
    Parse(String),
}

/// `P(p_1, …, p_n)`, `n ≥ 2`, all `p_i ≠ 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct PretzelKnot {
    p: Vec<i64>,
}

impl TryFrom<Vec<i64>> for PretzelKnot {
    type Error = KnotError;
    fn try_from(p: Vec<i64>) -> Result<Self, Self::Error> {
        PretzelKnot::new(p)
    }
}

impl From<PretzelKnot> for Vec<i64> {
    fn from(k: PretzelKnot) -> Self {
        k.p
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Determinant {
    pub signed: i64,
    pub absolute: u64,
}

/// `V = ½·doubled`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeifertMatrix {
    pub doubled: [[i64; 2]; 2],
}

impl SeifertMatrix {
    pub fn entries(&self) -> [[Ratio<i64>; 2]; 2] {
        let d = self.doubled;
        let h = |x: i64| Ratio::new(x, 2);
        [[h(d[0][0]), h(d[0][1])], [h(d[1][0]), h(d[1][1])]]
    }

    /// `V + Vᵗ`, which has integer entries.
    pub fn symmetrized(&self) -> [[i64; 2]; 2] {
        let d = self.doubled;
        [
            [d[0][0], (d[0][1] + d[1][0]) / 2],
            [(d[0][1] + d[1][0]) / 2, d[1][1]],
        ]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BridgeEstimate {
    Two,
    Three,
    Unknown,
}

impl PretzelKnot {
    pub fn new(p: Vec<i64>) -> Result<Self, KnotError> {
        if p.len() < 2 {
            return Err(KnotError::TooFewStrands(p.len()));
        }
        if let Some(i) = p.iter().position(|&x| x == 0) {
            return Err(KnotError::ZeroParameter(i + 1));
        }
        Ok(PretzelKnot { p })
    }

    pub fn params(&self) -> &[i64] {
        &self.p
    }

    pub fn strands(&self) -> usize {
        self.p.len()
    }

    pub fn determinant(&self) -> Determinant {
        let signed = cofactor_sum(&self.p);
        Determinant {
            signed,
            absolute: signed.unsigned_abs(),
        }
    }

    pub fn component_count(&self) -> usize {
        let even = self.p.iter().filter(|&&x| x % 2 == 0).count();
        match even {
            0 if self.p.len() % 2 == 1 => 1,
            0 => 2,
            e => e,
        }
    }

    pub fn is_knot(&self) -> bool {
        self.component_count() == 1
    }

    /// `(|Δ|−1)/2`, the number of irreducible binary dihedral classes of a knot.
    pub fn klassen_bd_count(&self) -> Result<u64, KnotError> {
        if !self.is_knot() {
            return Err(KnotError::NotAKnot(self.clone(), self.component_count()));
        }
        Ok((self.determinant().absolute - 1) / 2)
    }

    pub fn pairwise_coprime(&self) -> bool {
        let n = self.p.len();
        (0..n).all(|i| (i + 1..n).all(|j| coprime(self.p[i], self.p[j])))
    }

    /// Some `|p_i| = 1`: the diagram reduces to a 2-bridge knot or link.
    pub fn has_unit_parameter(&self) -> bool {
        self.p.iter().any(|x| x.abs() == 1)
    }

    fn genus_one_params(&self) -> Result<(i64, i64, i64), KnotError> {
        match self.p[..] {
            [p, q, r] if self.p.iter().all(|x| x % 2 != 0) => Ok((p, q, r)),
            _ => Err(KnotError::UnsupportedShape(self.clone())),
        }
    }

    /// `V = ½[[p+q, q+1], [q−1, q+r]]` for three odd parameters.
    pub fn seifert_matrix(&self) -> Result<SeifertMatrix, KnotError> {
        let (p, q, r) = self.genus_one_params()?;
        Ok(SeifertMatrix {
            doubled: [[p + q, q + 1], [q - 1, q + r]],
        })
    }

    /// Signature of `V + Vᵗ`, read off its determinant and trace.
    pub fn signature(&self) -> Result<i64, KnotError> {
        let s = self.seifert_matrix()?.symmetrized();
        let det = s[0][0] * s[1][1] - s[0][1] * s[1][0];
        let trace = s[0][0] + s[1][1];
        Ok(match det.signum() {
            1 => 2 * trace.signum(),
            -1 => 0,
            // one zero eigenvalue; the other equals the trace
            _ => trace.signum(),
        })
    }

    pub fn lin_invariant(&self) -> Result<i64, KnotError> {
        Ok(self.signature()? / 2)
    }

    /// Bridge number per the coprime three-strand criterion. A `Three` is
    /// only returned once a non-binary-dihedral class has actually been
    /// found, since 2-bridge knots have none.
    pub fn bridge_number_estimate(&self) -> BridgeEstimate {
        if self.p.len() != 3 || !self.pairwise_coprime() {
            return BridgeEstimate::Unknown;
        }
        if self.has_unit_parameter() {
            return BridgeEstimate::Two;
        }
        match rep::has_non_binary_dihedral_class(self) {
            Ok(true) => BridgeEstimate::Three,
            _ => BridgeEstimate::Unknown,
        }
    }
}

impl fmt::Display for PretzelKnot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("P(")?;
        for (i, x) in self.p.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(")")
    }
}

impl FromStr for PretzelKnot {
    type Err = KnotError;

    /// Accepts `3,5,7`, `-3,5,7`, `p=-3,5,7` and `P(-3,5,7)`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || KnotError::Parse(s.to_string());
        let mut body = s.trim();
        body = body
            .strip_prefix("p=")
            .or_else(|| body.strip_prefix("P="))
            .unwrap_or(body);
        if let Some(inner) = body.strip_prefix("P(").or_else(|| body.strip_prefix("p(")) {
            body = inner.strip_suffix(')').ok_or_else(err)?;
        }
        let p = body
            .split(',')
            .map(|t| t.trim().parse::<i64>().map_err(|_| err()))
            .collect::<Result<Vec<_>, _>>()?;
        PretzelKnot::new(p)
    }
}
