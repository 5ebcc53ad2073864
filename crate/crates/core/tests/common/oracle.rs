//! Independent reference computations for the acceptance suite.
//!
//! Nothing here goes through the cocycle recursion or the library's
//! quaternion type: quaternions are plain `[w, x, y, z]` arrays and tangent
//! spaces come from finite differences of the relator map.

use knotrep_core::presentation::{emit_presentation, PresentationKind, Word};
use knotrep_core::{ImVector, PretzelKnot};
use nalgebra::DMatrix;

pub type Q = [f64; 4];

pub const FD_STEP: f64 = 1e-5;
pub const FD_RANK_THRESHOLD: f64 = 1e-4;

pub fn mul(a: Q, b: Q) -> Q {
    [
        a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
        a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
        a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1],
        a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0],
    ]
}

pub fn conj(a: Q) -> Q {
    [a[0], -a[1], -a[2], -a[3]]
}

pub fn exp(v: [f64; 3]) -> Q {
    let t = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    if t == 0.0 {
        return [1.0, 0.0, 0.0, 0.0];
    }
    let s = t.sin() / t;
    [t.cos(), v[0] * s, v[1] * s, v[2] * s]
}

pub fn eval(word: &Word, images: &[Q]) -> Q {
    word.letters().iter().fold([1.0, 0.0, 0.0, 0.0], |acc, l| {
        let g = images[l.generator];
        mul(acc, if l.inverse { conj(g) } else { g })
    })
}

fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn unit(a: [f64; 3]) -> [f64; 3] {
    let n = (a[0] * a[0] + a[1] * a[1] + a[2] * a[2]).sqrt();
    [a[0] / n, a[1] / n, a[2] / n]
}

/// Two unit vectors spanning the plane orthogonal to `z`.
fn orthogonal_pair(z: [f64; 3]) -> [[f64; 3]; 2] {
    let helper = if z[2].abs() < 0.8 {
        [0.0, 0.0, 1.0]
    } else {
        [1.0, 0.0, 0.0]
    };
    let e1 = unit(cross(z, helper));
    [e1, cross(z, e1)]
}

/// Dimension of the tangent space to the traceless representation variety
/// at `points`: nullity of the finite-difference Jacobian of every quotient
/// relator, in the directions `ρ(s_i) = exp(ξ_i)·z_i` with `ξ_i ⊥ z_i`.
pub fn fd_tangent_dimension(k: &PretzelKnot, points: &[ImVector]) -> usize {
    let relators = emit_presentation(k, PresentationKind::QuotientGroup).relators;
    let n = points.len();
    let z: Vec<[f64; 3]> = points.iter().map(|p| [p.x, p.y, p.z]).collect();
    let dirs: Vec<[[f64; 3]; 2]> = z.iter().map(|&v| orthogonal_pair(v)).collect();
    let images_at = |param: &[f64]| -> Vec<Q> {
        (0..n)
            .map(|i| {
                let xi: [f64; 3] = std::array::from_fn(|c| {
                    param[2 * i] * dirs[i][0][c] + param[2 * i + 1] * dirs[i][1][c]
                });
                mul(exp(xi), [0.0, z[i][0], z[i][1], z[i][2]])
            })
            .collect()
    };
    let relator_map = |param: &[f64]| -> Vec<f64> {
        let imgs = images_at(param);
        relators.iter().flat_map(|r| eval(r, &imgs)).collect()
    };
    let rows = 4 * relators.len();
    let mut jac = DMatrix::<f64>::zeros(rows, 2 * n);
    for col in 0..2 * n {
        let mut plus = vec![0.0; 2 * n];
        let mut minus = vec![0.0; 2 * n];
        plus[col] = FD_STEP;
        minus[col] = -FD_STEP;
        let (fp, fm) = (relator_map(&plus), relator_map(&minus));
        for row in 0..rows {
            jac[(row, col)] = (fp[row] - fm[row]) / (2.0 * FD_STEP);
        }
    }
    let rank = jac
        .singular_values()
        .iter()
        .filter(|&&s| s > FD_RANK_THRESHOLD)
        .count();
    2 * n - rank
}

/// `1 + 2·cos a·cos b·cos c − cos²a − cos²b − cos²c`.
pub fn gram(a: f64, b: f64, c: f64) -> f64 {
    let (x, y, z) = (a.cos(), b.cos(), c.cos());
    1.0 + 2.0 * x * y * z - x * x - y * y - z * z
}

/// Number of distinct (up to sign) irreducible binary dihedral classes of a
/// knot with determinant `det`.
pub fn klassen(det: i64) -> i64 {
    (det.abs() - 1) / 2
}

pub fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Rotation matrix of `v ↦ q v q̄`, computed by conjugating basis vectors.
pub fn rotation(q: Q) -> [[f64; 3]; 3] {
    let mut m = [[0.0; 3]; 3];
    for c in 0..3 {
        let mut e = [0.0; 4];
        e[c + 1] = 1.0;
        let r = mul(mul(q, e), conj(q));
        for row in 0..3 {
            m[row][c] = r[row + 1];
        }
    }
    m
}
