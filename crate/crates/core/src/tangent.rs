//! Zariski tangent spaces `H¹(G; su(2)_ρ)` through the word-cocycle system.
//!
//! A cocycle is determined by its values `ξ(s_i) ∈ su(2) ≅ ℝ³` on the
//! generators. Expanding every relator with `ξ(gh) = ξ(g) + Ad_{ρ(g)} ξ(h)`
//! gives three linear equations per relator; the cocycle space is their
//! common kernel and the coboundaries are the image of `ζ ↦ (ζ − Ad_{ρ(s_i)} ζ)_i`.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::knot::PretzelKnot;
use crate::linalg::{numeric_rank, RankInfo};
use crate::presentation::{emit_presentation, PresentationKind, Word};
use crate::quat::{adjoint_unchecked, Mat3, Quaternion};
use crate::rep::{RepClass, RepSpaceReport, RELATION_TOL};

/// Relative singular-value cut for rank decisions.
pub const RANK_THRESHOLD: f64 = 1e-8;
/// Required separation of the singular values from the cut.
pub const MIN_SPECTRAL_GAP: f64 = 1e3;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TangentError {
    #[error("word uses generator s{0}, but only {1} images were given")]
    UnknownGenerator(usize, usize),
    #[error("image of s{index} has norm {norm}, expected 1")]
    NonUnitPoint { index: usize, norm: f64 },
    #[error(
        "numeric rank of the {what} is ambiguous: spectral gap {gap:e} below {MIN_SPECTRAL_GAP:e}"
    )]
    RankAmbiguous { what: &'static str, gap: f64 },
    #[error("representation violates the relations by {0:e}")]
    RelationViolated(f64),
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
}

fn check_images(images: &[Quaternion]) -> Result<(), TangentError> {
    for (i, q) in images.iter().enumerate() {
        let norm = q.norm();
        if (norm - 1.0).abs() > 1e-9 {
            return Err(TangentError::NonUnitPoint { index: i + 1, norm });
        }
    }
    Ok(())
}

/// Matrices `M_i` with `ξ(word) = Σ M_i ξ(s_i)` for every cocycle `ξ`.
pub fn word_cocycle_coefficients(
    word: &Word,
    images: &[Quaternion],
) -> Result<Vec<Mat3>, TangentError> {
    check_images(images)?;
    let mut m = vec![Mat3::zeros(); images.len()];
    let mut prefix = Quaternion::ONE;
    for l in word.letters() {
        let g = *images
            .get(l.generator)
            .ok_or(TangentError::UnknownGenerator(
                l.generator + 1,
                images.len(),
            ))?;
        if l.inverse {
            // ξ(s⁻¹) = −Ad_{s⁻¹} ξ(s)
            prefix = prefix * g.inverse();
            m[l.generator] -= adjoint_unchecked(prefix);
        } else {
            m[l.generator] += adjoint_unchecked(prefix);
            prefix = prefix * g;
        }
    }
    Ok(m)
}

/// `B = Σ_{k<p} Ad^k_{ρ(s_a s_b)}`, so that `ξ((s_a s_b)^p) = B ξ(s_a s_b)` for `p > 0`.
pub fn b_operator(za: Quaternion, zb: Quaternion, p: u32) -> Mat3 {
    let ad = adjoint_unchecked(za * zb);
    let mut acc = Mat3::zeros();
    let mut power = Mat3::identity();
    for _ in 0..p {
        acc += power;
        power *= ad;
    }
    acc
}

fn guarded_rank(m: &DMatrix<f64>, what: &'static str) -> Result<RankInfo, TangentError> {
    let info = numeric_rank(m, RANK_THRESHOLD);
    if info.gap < MIN_SPECTRAL_GAP {
        return Err(TangentError::RankAmbiguous {
            what,
            gap: info.gap,
        });
    }
    Ok(info)
}

/// The linear system for cocycles at one representation.
#[derive(Debug, Clone, PartialEq)]
pub struct CocycleSystem {
    /// `3n` unknowns `ξ(s_1), …, ξ(s_n)`.
    pub unknowns: usize,
    /// Three rows per relator of the quotient presentation.
    pub constraint_matrix: DMatrix<f64>,
    pub z1_dim: usize,
    pub b1_dim: usize,
    pub h1_dim: usize,
    pub z1_rank: RankInfo,
    pub b1_rank: RankInfo,
}

impl CocycleSystem {
    pub fn new(k: &PretzelKnot, images: &[Quaternion]) -> Result<Self, TangentError> {
        check_images(images)?;
        let pres = emit_presentation(k, PresentationKind::QuotientGroup);
        if images.len() != pres.generators.len() {
            return Err(TangentError::UnknownGenerator(
                images.len().min(pres.generators.len()) + 1,
                images.len(),
            ));
        }
        let residual = pres.max_residual(images);
        if !(residual < RELATION_TOL) {
            return Err(TangentError::RelationViolated(residual));
        }
        let constraint_matrix = constraint_matrix(&pres.relators, images)?;
        let z1_rank = guarded_rank(&constraint_matrix, "cocycle constraint matrix")?;
        let b1_rank = guarded_rank(&coboundary_matrix(images), "coboundary map")?;
        let (z1_dim, b1_dim) = (z1_rank.nullity, b1_rank.rank);
        let h1_dim = z1_dim.checked_sub(b1_dim).ok_or_else(|| {
            TangentError::Inconsistency(format!(
                "cocycle space ({z1_dim}) smaller than coboundaries ({b1_dim})"
            ))
        })?;
        Ok(CocycleSystem {
            unknowns: 3 * images.len(),
            constraint_matrix,
            z1_dim,
            b1_dim,
            h1_dim,
            z1_rank,
            b1_rank,
        })
    }
}

/// Stacked `[M_1 | … | M_n]` blocks, one per relator.
pub fn constraint_matrix(
    relators: &[Word],
    images: &[Quaternion],
) -> Result<DMatrix<f64>, TangentError> {
    let n = images.len();
    let mut a = DMatrix::zeros(3 * relators.len(), 3 * n);
    for (r, word) in relators.iter().enumerate() {
        for (g, m) in word_cocycle_coefficients(word, images)?.iter().enumerate() {
            a.view_mut((3 * r, 3 * g), (3, 3)).copy_from(m);
        }
    }
    Ok(a)
}

fn coboundary_matrix(images: &[Quaternion]) -> DMatrix<f64> {
    let mut a = DMatrix::zeros(3 * images.len(), 3);
    for (i, &q) in images.iter().enumerate() {
        a.view_mut((3 * i, 0), (3, 3))
            .copy_from(&(Mat3::identity() - adjoint_unchecked(q)));
    }
    a
}

/// Rank of `ζ ↦ ((I − Ad_{ρ(s_i)}) ζ)_i`: 3 when irreducible, 2 when abelian
/// and non-central, 0 when central.
pub fn coboundary_rank(images: &[Quaternion]) -> Result<usize, TangentError> {
    check_images(images)?;
    Ok(guarded_rank(&coboundary_matrix(images), "coboundary map")?.rank)
}

pub fn cocycle_space_dim(class: &RepClass, k: &PretzelKnot) -> Result<usize, TangentError> {
    Ok(CocycleSystem::new(k, &class.images())?.z1_dim)
}

pub fn coboundary_space_dim(class: &RepClass) -> Result<usize, TangentError> {
    coboundary_rank(&class.images())
}

pub fn h1_dim(class: &RepClass, k: &PretzelKnot) -> Result<usize, TangentError> {
    Ok(CocycleSystem::new(k, &class.images())?.h1_dim)
}

/// One line of the tangent report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TangentRow {
    /// Position in abelian, binary dihedral, non-binary-dihedral order.
    pub class_id: usize,
    pub z1_dim: usize,
    pub b1_dim: usize,
    pub h1_dim: usize,
    /// Smallest singular value of the constraint matrix counted as nonzero.
    pub min_nonzero_singular: Option<f64>,
    pub spectral_gap: f64,
}

pub fn tangent_rows(report: &RepSpaceReport) -> Result<Vec<TangentRow>, TangentError> {
    report
        .all_classes()
        .enumerate()
        .map(|(class_id, c)| {
            let sys = CocycleSystem::new(&report.knot, &c.images())?;
            Ok(TangentRow {
                class_id,
                z1_dim: sys.z1_dim,
                b1_dim: sys.b1_dim,
                h1_dim: sys.h1_dim,
                min_nonzero_singular: sys.z1_rank.min_nonzero_singular,
                spectral_gap: sys.z1_rank.gap.min(sys.b1_rank.gap),
            })
        })
        .collect()
}
