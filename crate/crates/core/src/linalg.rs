//! Numeric rank with an explicit spectral-gap guard.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

/// Singular values at or below `rel_threshold · σ_max` count as zero.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RankInfo {
    pub rank: usize,
    pub nullity: usize,
    /// Smallest singular value counted as nonzero (`None` for rank 0).
    pub min_nonzero_singular: Option<f64>,
    /// Largest singular value counted as zero (`None` for full column rank).
    pub max_zero_singular: Option<f64>,
    /// How far the singular values nearest the cut sit from it, as the
    /// smaller of `min_nonzero / cut` and `cut / max_zero` (a missing side
    /// contributes ∞).
    pub gap: f64,
}

/// Rank and nullity (in columns) of `m`.
pub fn numeric_rank(m: &DMatrix<f64>, rel_threshold: f64) -> RankInfo {
    let cols = m.ncols();
    if m.nrows() == 0 || cols == 0 {
        return RankInfo {
            rank: 0,
            nullity: cols,
            min_nonzero_singular: None,
            max_zero_singular: None,
            gap: f64::INFINITY,
        };
    }
    let mut sv: Vec<f64> = m
        .clone()
        .svd(false, false)
        .singular_values
        .iter()
        .copied()
        .collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    // rows < cols: the missing singular values are exact zeros
    sv.resize(cols, 0.0);
    let smax = sv[0];
    let cut = rel_threshold * smax;
    let rank = if smax == 0.0 {
        0
    } else {
        sv.iter().filter(|&&s| s > cut).count()
    };
    let min_nonzero = (rank > 0).then(|| sv[rank - 1]);
    let max_zero = (rank < cols).then(|| sv[rank]);
    let above = min_nonzero.map_or(f64::INFINITY, |s| s / cut);
    let below = max_zero.map_or(f64::INFINITY, |s| cut / s);
    let gap = if smax == 0.0 {
        f64::INFINITY
    } else {
        above.min(below)
    };
    RankInfo {
        rank,
        nullity: cols - rank,
        min_nonzero_singular: min_nonzero,
        max_zero_singular: max_zero,
        gap,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_of_simple_matrices() {
        let m = DMatrix::from_row_slice(2, 3, &[1.0, 0.0, 0.0, 0.0, 2.0, 0.0]);
        let r = numeric_rank(&m, 1e-8);
        assert_eq!((r.rank, r.nullity), (2, 1));
        assert!(r.gap > 1e7);
        let z = DMatrix::<f64>::zeros(3, 3);
        assert_eq!(numeric_rank(&z, 1e-8).nullity, 3);
        let full = DMatrix::<f64>::identity(3, 3);
        let r = numeric_rank(&full, 1e-8);
        assert_eq!(r.rank, 3);
        assert!(r.gap > 1e7);
    }

    #[test]
    fn near_threshold_gives_small_gap() {
        let m = DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, 1e-7]);
        let r = numeric_rank(&m, 1e-8);
        assert_eq!(r.rank, 2);
        assert!((r.gap - 10.0).abs() < 1e-6);
        let m = DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, 5e-9]);
        let r = numeric_rank(&m, 1e-8);
        assert_eq!(r.rank, 1);
        assert!(r.gap < 1e3);
        let m = DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, 1e-14]);
        let r = numeric_rank(&m, 1e-8);
        assert_eq!(r.rank, 1);
        assert!(r.gap > 1e3);
    }
}
