//! Conjugacy classes of traceless SU(2) representations of pretzel knot groups.
//!
//! Every class is described by the images `z_i = ρ(s_i)` of the meridians,
//! which are unit imaginary quaternions normalised so that `z_1 = j` and `z_2`
//! lies on the ⟨j,k⟩ great circle. Three strands are enumerated exactly; four
//! or more strands get exact abelian and binary dihedral parts plus numeric
//! exploration of the rest.

use std::collections::BTreeSet;

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::angle::{
    chain_thetas, closed_chain_tuples, fold_to_distance, solve_beta_congruences,
    solve_edge_congruence, AngleError, CentralCase, RationalAngle,
};
use crate::knot::PretzelKnot;
use crate::linalg::numeric_rank;
use crate::presentation::{emit_presentation, PresentationKind};
use crate::quat::{sphere_distance, ImVector, Quaternion};
use crate::sphere::{
    construct_triangle, degenerate_third_angle, triangle_realizability, GeomError, Mirror,
    Realizability, Verdict,
};
use crate::table::{paper_discrepancies, PaperDiscrepancy, PUBLISHED_NON_BD_FIGURE};

/// Quaternion relations must hold to this accuracy at every constructed class.
pub const RELATION_TOL: f64 = 1e-9;
/// `solve_closure_numeric` accepts configurations closing to this accuracy.
pub const CLOSURE_TOL: f64 = 1e-8;
/// Numeric solutions closer than this (max-norm over all points) are merged.
pub const DEDUP_RESOLUTION: f64 = 1e-4;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RepError {
    #[error("exact enumeration of this family needs exactly three strands, got {0}")]
    UnsupportedStrandCount(usize),
    #[error(transparent)]
    Angle(#[from] AngleError),
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error("points {0} and {1} coincide or are antipodal")]
    DegenerateConfiguration(usize, usize),
    #[error("distance between points {index} and {next} misses its target by {error:e}", next = index + 1)]
    ClosureViolated { index: usize, error: f64 },
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum ClassCase {
    PlusOne,
    MinusOne,
    BinaryDihedral { beta: RationalAngle },
    Abelian,
}

impl From<CentralCase> for ClassCase {
    fn from(c: CentralCase) -> Self {
        match c {
            CentralCase::PlusOne => ClassCase::PlusOne,
            CentralCase::MinusOne => ClassCase::MinusOne,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum OrbitType {
    /// `SU(2)/U(1) ≅ S²`
    Sphere,
    /// `SU(2)/{±1} ≅ ℝP³`
    ProjectiveSpace,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassFlags {
    pub abelian: bool,
    pub binary_dihedral: bool,
    pub mirror_pair_id: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RepClass {
    pub case: ClassCase,
    /// `angles[i] = d(z_i, z_{i+1})`, indices mod n.
    pub angles: Vec<RationalAngle>,
    /// Exact positions `z_i = j·e^{iθ_i}` for classes on the ⟨j,k⟩ circle.
    pub thetas: Option<Vec<RationalAngle>>,
    /// Sign of the i-component of `z_3` for non-binary-dihedral triangles.
    pub mirror: Option<Mirror>,
    pub points: Vec<ImVector>,
    pub flags: ClassFlags,
    pub orbit_type: OrbitType,
}

impl RepClass {
    fn on_circle(case: ClassCase, thetas: Vec<RationalAngle>) -> RepClass {
        let n = thetas.len();
        let angles = (0..n)
            .map(|i| fold_to_distance(thetas[(i + 1) % n].sub_mod_2pi(thetas[i])))
            .collect();
        let abelian = thetas.iter().all(|t| t.is_endpoint());
        let points = thetas.iter().map(|&t| ImVector::on_jk_circle(t)).collect();
        RepClass {
            case,
            angles,
            thetas: Some(thetas),
            mirror: None,
            points,
            flags: ClassFlags {
                abelian,
                binary_dihedral: true,
                mirror_pair_id: None,
            },
            orbit_type: if abelian {
                OrbitType::Sphere
            } else {
                OrbitType::ProjectiveSpace
            },
        }
    }

    pub fn images(&self) -> Vec<Quaternion> {
        self.points.iter().map(|z| z.as_quaternion()).collect()
    }

    /// Largest `|d(z_i, z_{i+1}) − angles[i]|`.
    pub fn max_distance_error(&self) -> f64 {
        let n = self.points.len();
        (0..n)
            .map(|i| {
                let d = sphere_distance(self.points[i], self.points[(i + 1) % n])
                    .unwrap_or(f64::INFINITY);
                (d - self.angles[i].radians()).abs()
            })
            .fold(0.0, f64::max)
    }

    /// The class with every i-component negated.
    pub fn mirrored_points(&self) -> Vec<ImVector> {
        self.points.iter().map(|z| z.mirror_i()).collect()
    }

    fn sort_key(&self) -> (Vec<Ratio<i64>>, i8, Vec<Ratio<i64>>) {
        let mirror = match self.mirror {
            None => 0,
            Some(Mirror::Positive) => 1,
            Some(Mirror::Negative) => -1,
        };
        let thetas = self.thetas.iter().flatten().map(|t| t.coeff()).collect();
        (
            self.angles.iter().map(|a| a.coeff()).collect(),
            -mirror,
            thetas,
        )
    }
}

fn sort_classes(v: &mut [RepClass]) {
    v.sort_by_key(RepClass::sort_key);
}

/// Largest relator deviation of the class in the quotient presentation.
pub fn relation_residual(k: &PretzelKnot, class: &RepClass) -> f64 {
    emit_presentation(k, PresentationKind::QuotientGroup).max_residual_points(&class.points)
}

/// The representative of `{θ, −θ}` whose first non-endpoint position lies in
/// `(0, π)`.
pub fn is_canonical_chain(thetas: &[RationalAngle]) -> bool {
    match thetas.iter().find(|t| !t.is_endpoint()) {
        None => true,
        Some(t) => t.coeff() < Ratio::from_integer(1),
    }
}

/// Sign patterns `z_i = ε_i·j`, `ε_1 = +1`, satisfying the relations.
pub fn enumerate_abelian(k: &PretzelKnot) -> Vec<RepClass> {
    let p = k.params();
    let n = p.len();
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << (n - 1)) {
        let eps: Vec<i64> = (0..n)
            .map(|i| {
                if i > 0 && mask >> (i - 1) & 1 == 1 {
                    -1
                } else {
                    1
                }
            })
            .collect();
        // z_i z_{i+1} = −ε_i ε_{i+1}
        let value = |i: usize| {
            let base = -eps[i] * eps[(i + 1) % n];
            if base == -1 && p[i] % 2 != 0 {
                -1
            } else {
                1
            }
        };
        if (1..n).all(|i| value(i) == value(0)) {
            let thetas = eps
                .iter()
                .map(|&e| {
                    if e == 1 {
                        RationalAngle::ZERO
                    } else {
                        RationalAngle::PI
                    }
                })
                .collect();
            out.push(RepClass::on_circle(ClassCase::Abelian, thetas));
        }
    }
    sort_classes(&mut out);
    out
}

fn cartesian(lists: &[Vec<RationalAngle>]) -> Vec<Vec<RationalAngle>> {
    lists.iter().fold(vec![Vec::new()], |acc, l| {
        acc.iter()
            .flat_map(|prefix| {
                l.iter().map(move |&a| {
                    let mut v = prefix.clone();
                    v.push(a);
                    v
                })
            })
            .collect()
    })
}

/// Candidate distance tuples of a central case: one congruence solution per
/// strand, every combination.
pub fn central_angle_tuples(
    k: &PretzelKnot,
    case: CentralCase,
) -> Result<Vec<Vec<RationalAngle>>, RepError> {
    let lists = k
        .params()
        .iter()
        .map(|&p| solve_edge_congruence(p, case))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(cartesian(&lists))
}

/// Three-strand candidates with their spherical realizability, abelian
/// (all-endpoint) tuples excluded.
pub fn central_candidates(
    k: &PretzelKnot,
    case: CentralCase,
) -> Result<Vec<(Vec<RationalAngle>, Realizability)>, RepError> {
    if k.strands() != 3 {
        return Err(RepError::UnsupportedStrandCount(k.strands()));
    }
    central_angle_tuples(k, case)?
        .into_iter()
        .filter(|t| !t.iter().all(|a| a.is_endpoint()))
        .map(|t| {
            let r = triangle_realizability(t[0], t[1], t[2])?;
            Ok((t, r))
        })
        .collect()
}

/// Classes with `(z_i z_{i+1})^{p_i} = ±1` for three strands.
pub fn enumerate_central_case(
    k: &PretzelKnot,
    case: CentralCase,
) -> Result<Vec<RepClass>, RepError> {
    let mut out = Vec::new();
    for (t, r) in central_candidates(k, case)? {
        match r.verdict {
            Verdict::Infeasible => {}
            Verdict::Degenerate => {
                let theta3 = degenerate_third_angle(t[0], t[1], t[2]).ok_or_else(|| {
                    RepError::Inconsistency(format!(
                        "degenerate tuple {t:?} has no planar position"
                    ))
                })?;
                out.push(RepClass::on_circle(
                    case.into(),
                    vec![RationalAngle::ZERO, t[0], theta3],
                ));
            }
            Verdict::NonDegenerate => {
                for mirror in [Mirror::Positive, Mirror::Negative] {
                    let pts = construct_triangle(t[0], t[1], t[2], mirror)?;
                    out.push(RepClass {
                        case: case.into(),
                        angles: t.clone(),
                        thetas: None,
                        mirror: Some(mirror),
                        points: pts.to_vec(),
                        flags: ClassFlags {
                            abelian: false,
                            binary_dihedral: false,
                            mirror_pair_id: None,
                        },
                        orbit_type: OrbitType::ProjectiveSpace,
                    });
                }
            }
        }
    }
    sort_classes(&mut out);
    Ok(out)
}

/// Non-abelian classes on the ⟨j,k⟩ circle, up to `θ ↦ −θ`.
///
/// Covers the β family and both central cases; works for any number of
/// strands.
pub fn enumerate_binary_dihedral(k: &PretzelKnot) -> Result<Vec<RepClass>, RepError> {
    let p = k.params();
    let mut out = Vec::new();
    let mut push_chains = |case: ClassCase, tuples: Vec<Vec<RationalAngle>>| {
        for steps in tuples {
            let thetas = chain_thetas(&steps);
            if is_canonical_chain(&thetas) && !thetas.iter().all(|t| t.is_endpoint()) {
                out.push(RepClass::on_circle(case, thetas));
            }
        }
    };
    for sol in solve_beta_congruences(p)? {
        push_chains(ClassCase::BinaryDihedral { beta: sol.beta }, sol.tuples);
    }
    for case in [CentralCase::PlusOne, CentralCase::MinusOne] {
        push_chains(case.into(), closed_chain_tuples(p, case.beta())?);
    }
    sort_classes(&mut out);
    Ok(out)
}

/// `true` iff some three-strand central case has a non-degenerate triangle.
pub fn has_non_binary_dihedral_class(k: &PretzelKnot) -> Result<bool, RepError> {
    for case in [CentralCase::PlusOne, CentralCase::MinusOne] {
        if central_candidates(k, case)?
            .iter()
            .any(|(_, r)| r.verdict == Verdict::NonDegenerate)
        {
            return Ok(true);
        }
    }
    Ok(false)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Counts {
    pub abelian: usize,
    pub binary_dihedral: usize,
    /// Binary dihedral classes with `(z_i z_{i+1})^{p_i} = ±1`.
    pub binary_dihedral_central: usize,
    pub non_bd: usize,
    pub mirror_pairs: usize,
    /// `(|Δ|−1)/2` for knots.
    pub klassen_expected: Option<u64>,
    /// The published non-binary-dihedral count, where one exists.
    pub published_non_bd: Option<u64>,
}

/// A numerically found non-binary-dihedral configuration (four or more strands).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NumericSample {
    pub case: CentralCase,
    pub angles: Vec<RationalAngle>,
    pub points: Vec<ImVector>,
    pub residual: f64,
    pub family_dimension: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RepSpaceReport {
    pub knot: PretzelKnot,
    /// Some `|p_i| = 1`, so the knot is 2-bridge in disguise.
    pub two_bridge_pathology: bool,
    pub abelian_classes: Vec<RepClass>,
    pub binary_dihedral_classes: Vec<RepClass>,
    pub non_bd_classes: Vec<RepClass>,
    /// `false` when `non_bd_classes` could not be enumerated exactly.
    pub non_bd_exhaustive: bool,
    pub numeric_samples: Vec<NumericSample>,
    pub paper_discrepancies: Vec<PaperDiscrepancy>,
    pub counts: Counts,
}

impl RepSpaceReport {
    pub fn all_classes(&self) -> impl Iterator<Item = &RepClass> {
        self.abelian_classes
            .iter()
            .chain(&self.binary_dihedral_classes)
            .chain(&self.non_bd_classes)
    }
}

/// Exact enumeration; non-binary-dihedral classes only for three strands.
pub fn enumerate_all(k: &PretzelKnot) -> Result<RepSpaceReport, RepError> {
    let abelian = enumerate_abelian(k);
    let bd = enumerate_binary_dihedral(k)?;
    let exhaustive = k.strands() == 3;
    let mut non_bd = Vec::new();
    if exhaustive {
        let mut degenerate = Vec::new();
        for case in [CentralCase::PlusOne, CentralCase::MinusOne] {
            for c in enumerate_central_case(k, case)? {
                if c.flags.binary_dihedral {
                    degenerate.push(c);
                } else {
                    non_bd.push(c);
                }
            }
        }
        check_degenerate_match(&degenerate, &bd)?;
    }
    sort_classes(&mut non_bd);
    assign_mirror_pairs(&mut non_bd)?;
    check_disjoint(&abelian, &bd, &non_bd)?;
    for c in abelian.iter().chain(&bd).chain(&non_bd) {
        let r = relation_residual(k, c);
        if !(r < RELATION_TOL) {
            return Err(RepError::Inconsistency(format!(
                "class with angles {:?} violates the relations by {r:e}",
                c.angles
            )));
        }
    }
    let counts = Counts {
        abelian: abelian.len(),
        binary_dihedral: bd.len(),
        binary_dihedral_central: bd
            .iter()
            .filter(|c| !matches!(c.case, ClassCase::BinaryDihedral { .. }))
            .count(),
        non_bd: non_bd.len(),
        mirror_pairs: non_bd.len() / 2,
        klassen_expected: k.klassen_bd_count().ok(),
        published_non_bd: paper_discrepancies(k).map(|_| PUBLISHED_NON_BD_FIGURE),
    };
    Ok(RepSpaceReport {
        knot: k.clone(),
        two_bridge_pathology: k.has_unit_parameter(),
        abelian_classes: abelian,
        binary_dihedral_classes: bd,
        non_bd_classes: non_bd,
        non_bd_exhaustive: exhaustive,
        numeric_samples: Vec::new(),
        paper_discrepancies: paper_discrepancies(k).unwrap_or_default(),
        counts,
    })
}

/// `enumerate_all`, plus numeric exploration of the central cases when the
/// exact path does not apply.
pub fn enumerate_all_with_exploration(
    k: &PretzelKnot,
    attempts: usize,
    seed: u64,
) -> Result<RepSpaceReport, RepError> {
    let mut report = enumerate_all(k)?;
    if !report.non_bd_exhaustive {
        for case in [CentralCase::PlusOne, CentralCase::MinusOne] {
            report
                .numeric_samples
                .extend(explore_central_case(k, case, attempts, seed)?);
        }
    }
    Ok(report)
}

fn check_degenerate_match(from_triangles: &[RepClass], bd: &[RepClass]) -> Result<(), RepError> {
    let key = |c: &RepClass| (c.case, c.thetas.clone());
    let a: BTreeSet<_> = from_triangles
        .iter()
        .map(|c| format!("{:?}", key(c)))
        .collect();
    let b: BTreeSet<_> = bd
        .iter()
        .filter(|c| !matches!(c.case, ClassCase::BinaryDihedral { .. }))
        .map(|c| format!("{:?}", key(c)))
        .collect();
    if a != b || a.len() != from_triangles.len() {
        return Err(RepError::Inconsistency(format!(
            "degenerate triangles {a:?} disagree with central circle chains {b:?}"
        )));
    }
    Ok(())
}

fn assign_mirror_pairs(non_bd: &mut [RepClass]) -> Result<(), RepError> {
    if non_bd.len() % 2 != 0 {
        return Err(RepError::Inconsistency(
            "odd number of non-binary-dihedral classes".into(),
        ));
    }
    for (id, pair) in non_bd.chunks_mut(2).enumerate() {
        let mirrored = pair[0].mirrored_points();
        let closes = pair[0].angles == pair[1].angles
            && pair[0].case == pair[1].case
            && mirrored
                .iter()
                .zip(&pair[1].points)
                .all(|(a, b)| a.dist_inf(b) < RELATION_TOL);
        if !closes {
            return Err(RepError::Inconsistency(format!(
                "class with angles {:?} has no mirror partner",
                pair[0].angles
            )));
        }
        for c in pair.iter_mut() {
            c.flags.mirror_pair_id = Some(id);
        }
    }
    Ok(())
}

fn check_disjoint(
    abelian: &[RepClass],
    bd: &[RepClass],
    non_bd: &[RepClass],
) -> Result<(), RepError> {
    let all: Vec<&RepClass> = abelian.iter().chain(bd).chain(non_bd).collect();
    for (i, a) in all.iter().enumerate() {
        for b in &all[i + 1..] {
            let same = a
                .points
                .iter()
                .zip(&b.points)
                .all(|(x, y)| x.dist_inf(y) < RELATION_TOL);
            // conjugation by j negates k-components on the ⟨j,k⟩ circle
            let conj = a.flags.binary_dihedral
                && b.flags.binary_dihedral
                && a.points
                    .iter()
                    .zip(&b.points)
                    .all(|(x, y)| x.dist_inf(&ImVector::new(y.x, y.y, -y.z)) < RELATION_TOL);
            if same || conj {
                return Err(RepError::Inconsistency(format!(
                    "classes with angles {:?} and {:?} coincide",
                    a.angles, b.angles
                )));
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClosureSolution {
    pub points: Vec<ImVector>,
    /// Turning angles at `z_2, …, z_{n−1}`.
    pub turning: Vec<f64>,
    pub residual: f64,
}

/// Walks the chain `z_1 = j`, `z_2 = j·e^{i·α_1}`, turning by `φ_i` against
/// the parallel-transported heading at each later vertex.
fn chain_points(alphas: &[f64], phis: &[f64]) -> Vec<ImVector> {
    let n = alphas.len();
    let mut z = ImVector::J;
    let mut u = -ImVector::K;
    let mut pts = vec![z];
    for (i, &a) in alphas[..n - 1].iter().enumerate() {
        let (c, s) = (a.cos(), a.sin());
        let next = z.scale(c) + u.scale(s);
        let arrive = u.scale(c) - z.scale(s);
        z = next;
        u = match phis.get(i) {
            Some(&phi) => arrive.scale(phi.cos()) + z.cross(&arrive).scale(phi.sin()),
            None => arrive,
        };
        pts.push(z);
    }
    pts
}

fn closure_residual(alphas: &[f64], phis: &[f64]) -> f64 {
    let pts = chain_points(alphas, phis);
    let (a, b) = (pts[pts.len() - 1], pts[0]);
    a.cross(&b).norm().atan2(a.dot(&b)) - alphas[alphas.len() - 1]
}

fn gauss_newton(alphas: &[f64], mut phis: Vec<f64>) -> (Vec<f64>, f64) {
    const H: f64 = 1e-7;
    let mut g = closure_residual(alphas, &phis);
    let mut stalled = 0;
    for _ in 0..200 {
        if g.abs() < 1e-13 {
            break;
        }
        let grad: Vec<f64> = (0..phis.len())
            .map(|i| {
                let mut hi = phis.clone();
                let mut lo = phis.clone();
                hi[i] += H;
                lo[i] -= H;
                (closure_residual(alphas, &hi) - closure_residual(alphas, &lo)) / (2.0 * H)
            })
            .collect();
        let norm2: f64 = grad.iter().map(|x| x * x).sum();
        if norm2 < 1e-24 {
            break;
        }
        let mut t = 1.0;
        let mut improved = false;
        for _ in 0..40 {
            let trial: Vec<f64> = phis
                .iter()
                .zip(&grad)
                .map(|(p, d)| p - t * g * d / norm2)
                .collect();
            let gt = closure_residual(alphas, &trial);
            if gt.abs() < g.abs() {
                // stuck near a nonzero extremum of the residual
                stalled = if gt.abs() > 0.9 * g.abs() && gt.abs() > 1e-6 {
                    stalled + 1
                } else {
                    0
                };
                phis = trial;
                g = gt;
                improved = true;
                break;
            }
            t *= 0.5;
        }
        if !improved || stalled >= 5 {
            break;
        }
    }
    (phis, g)
}

fn solve_closure(
    angles: &[RationalAngle],
    attempts: usize,
    seed: u64,
    limit: Option<usize>,
) -> Vec<ClosureSolution> {
    let n = angles.len();
    if n < 3 {
        return Vec::new();
    }
    let alphas: Vec<f64> = angles.iter().map(|a| a.radians()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut found: Vec<ClosureSolution> = Vec::new();
    for _ in 0..attempts {
        let start: Vec<f64> = (0..n - 2)
            .map(|_| rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI))
            .collect();
        let (phis, g) = gauss_newton(&alphas, start);
        if g.abs() >= CLOSURE_TOL {
            continue;
        }
        let points = chain_points(&alphas, &phis);
        let dup = found.iter().any(|s| {
            s.points
                .iter()
                .zip(&points)
                .map(|(a, b)| a.dist_inf(b))
                .fold(0.0, f64::max)
                < DEDUP_RESOLUTION
        });
        if !dup {
            let turning = phis
                .iter()
                .map(|p| {
                    (p + std::f64::consts::PI).rem_euclid(std::f64::consts::TAU)
                        - std::f64::consts::PI
                })
                .collect();
            found.push(ClosureSolution {
                points,
                turning,
                residual: g.abs(),
            });
            if limit.is_some_and(|l| found.len() >= l) {
                break;
            }
        }
    }
    found.sort_by(|a, b| {
        a.turning
            .iter()
            .zip(&b.turning)
            .map(|(x, y)| x.total_cmp(y))
            .find(|o| o.is_ne())
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    found
}

/// Random-restart search for closed chains with the given consecutive
/// distances (the last entry closes `z_n` back to `z_1`).
pub fn solve_closure_numeric(
    angles: &[RationalAngle],
    attempts: usize,
    seed: u64,
) -> Vec<ClosureSolution> {
    solve_closure(angles, attempts, seed, None)
}

fn tangent_basis(z: ImVector) -> [ImVector; 2] {
    let helper = if z.x.abs() < 0.9 {
        ImVector::I
    } else {
        ImVector::J
    };
    let e1 = z.cross(&helper).normalized();
    [e1, z.cross(&e1)]
}

/// Local dimension of the closed-chain configuration space modulo rotations:
/// nullity of the Jacobian of `⟨z_i, z_{i+1}⟩` in tangent coordinates, minus 3.
pub fn family_dimension_estimate(
    points: &[ImVector],
    angles: &[RationalAngle],
) -> Result<usize, RepError> {
    let n = points.len();
    if angles.len() != n {
        return Err(RepError::Inconsistency(format!(
            "{n} points but {} angles",
            angles.len()
        )));
    }
    for i in 0..n {
        let j = (i + 1) % n;
        let d = sphere_distance(points[i], points[j])
            .map_err(|e| RepError::Inconsistency(e.to_string()))?;
        let error = (d - angles[i].radians()).abs();
        if error > CLOSURE_TOL {
            return Err(RepError::ClosureViolated {
                index: i + 1,
                error,
            });
        }
        if d.sin().abs() < 1e-6 {
            return Err(RepError::DegenerateConfiguration(i + 1, j + 1));
        }
    }
    let bases: Vec<[ImVector; 2]> = points.iter().map(|&z| tangent_basis(z)).collect();
    let mut jac = nalgebra::DMatrix::<f64>::zeros(n, 2 * n);
    for i in 0..n {
        let j = (i + 1) % n;
        for b in 0..2 {
            jac[(i, 2 * i + b)] += bases[i][b].dot(&points[j]);
            jac[(i, 2 * j + b)] += points[i].dot(&bases[j][b]);
        }
    }
    Ok(numeric_rank(&jac, 1e-6).nullity.saturating_sub(3))
}

/// One numeric non-binary-dihedral sample per central-case distance tuple.
pub fn explore_central_case(
    k: &PretzelKnot,
    case: CentralCase,
    attempts: usize,
    seed: u64,
) -> Result<Vec<NumericSample>, RepError> {
    let mut out = Vec::new();
    for (idx, angles) in central_angle_tuples(k, case)?.into_iter().enumerate() {
        if angles.iter().all(|a| a.is_endpoint()) {
            continue;
        }
        let sols = solve_closure(&angles, attempts, seed.wrapping_add(idx as u64), Some(1));
        if let Some(s) = sols
            .into_iter()
            .find(|s| s.points.iter().any(|z| z.x.abs() > 1e-6))
        {
            let family_dimension = family_dimension_estimate(&s.points, &angles).ok();
            out.push(NumericSample {
                case,
                angles,
                points: s.points,
                residual: s.residual,
                family_dimension,
            });
        }
    }
    Ok(out)
}
