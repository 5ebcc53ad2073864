//! Triangles on the unit sphere with prescribed side lengths.
//!
//! Three unit vectors with pairwise angles `a, b, c` exist in ℝ³ iff the Gram
//! determinant `1 + 2cos a cos b cos c − cos²a − cos²b − cos²c` is
//! non-negative, and they lie on one great circle iff it vanishes. The
//! vanishing case is decided exactly on rational angles; only the sign of a
//! determinant that is known to be nonzero is read from floating point.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::angle::{fold_to_distance, RationalAngle};
use crate::quat::ImVector;

/// Lower bound on |gram_det| for non-degenerate rational triangles.
pub const GRAM_FLOOR: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum GeomError {
    #[error("side length {0}π is outside [0, π]")]
    OutOfRange(RationalAngle),
    #[error("no spherical triangle has these side lengths")]
    InfeasibleTriangle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Verdict {
    NonDegenerate,
    Degenerate,
    Infeasible,
}

impl Verdict {
    pub fn is_feasible(self) -> bool {
        self != Verdict::Infeasible
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Realizability {
    pub verdict: Verdict,
    pub gram_det: f64,
}

/// Which of the two mirror-image solutions to pick: the sign of the
/// i-component of the third vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Mirror {
    Positive,
    Negative,
}

impl Mirror {
    pub fn sign(self) -> f64 {
        match self {
            Mirror::Positive => 1.0,
            Mirror::Negative => -1.0,
        }
    }

    pub fn flip(self) -> Mirror {
        match self {
            Mirror::Positive => Mirror::Negative,
            Mirror::Negative => Mirror::Positive,
        }
    }
}

fn check_range(a: RationalAngle) -> Result<(), GeomError> {
    if a.coeff() > Ratio::from_integer(1) {
        Err(GeomError::OutOfRange(a))
    } else {
        Ok(())
    }
}

pub fn gram_determinant(a: RationalAngle, b: RationalAngle, c: RationalAngle) -> f64 {
    let (ca, cb, cc) = (a.radians().cos(), b.radians().cos(), c.radians().cos());
    1.0 + 2.0 * ca * cb * cc - ca * ca - cb * cb - cc * cc
}

/// Exact test for three points at pairwise distances `a, b, c` lying on a
/// single great circle: `c` equals the folded sum or difference of `a`, `b`.
pub fn is_degenerate(a: RationalAngle, b: RationalAngle, c: RationalAngle) -> bool {
    fold_to_distance(a.add_mod_2pi(b)) == c || fold_to_distance(a.sub_mod_2pi(b)) == c
}

pub fn triangle_realizability(
    a: RationalAngle,
    b: RationalAngle,
    c: RationalAngle,
) -> Result<Realizability, GeomError> {
    for x in [a, b, c] {
        check_range(x)?;
    }
    let gram_det = gram_determinant(a, b, c);
    let verdict = if is_degenerate(a, b, c) {
        Verdict::Degenerate
    } else {
        assert!(
            gram_det.abs() > GRAM_FLOOR,
            "Gram determinant {gram_det:e} of a non-degenerate rational triangle ({a}, {b}, {c}) is too small to sign"
        );
        if gram_det > 0.0 {
            Verdict::NonDegenerate
        } else {
            Verdict::Infeasible
        }
    };
    Ok(Realizability { verdict, gram_det })
}

/// The planar triangle inequality `|a23 − a31| ≤ a12 ≤ a23 + a31` on the
/// coefficients of π, without folding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlanarCheck {
    #[serde(with = "ratio_str")]
    pub lo: Ratio<i64>,
    #[serde(with = "ratio_str")]
    pub hi: Ratio<i64>,
    pub holds: bool,
}

pub fn planar_triangle_check(
    a12: RationalAngle,
    a23: RationalAngle,
    a31: RationalAngle,
) -> PlanarCheck {
    let (x, y, z) = (a12.coeff(), a23.coeff(), a31.coeff());
    let lo = if y >= z { y - z } else { z - y };
    let hi = y + z;
    PlanarCheck {
        lo,
        hi,
        holds: lo <= x && x <= hi,
    }
}

/// Vertices `z1 = j`, `z2 = j·e^{i·a12}`, and `z3` at distance `a31` from
/// `z1` and `a23` from `z2`, with i-component sign chosen by `mirror`.
///
/// Degenerate triangles are built exactly on the ⟨j,k⟩ great circle, so their
/// third vertex has i-component exactly zero for both mirror choices.
pub fn construct_triangle(
    a12: RationalAngle,
    a23: RationalAngle,
    a31: RationalAngle,
    mirror: Mirror,
) -> Result<[ImVector; 3], GeomError> {
    let r = triangle_realizability(a12, a23, a31)?;
    let z1 = ImVector::J;
    let z2 = ImVector::on_jk_circle(a12);
    match r.verdict {
        Verdict::Infeasible => Err(GeomError::InfeasibleTriangle),
        Verdict::Degenerate => {
            let theta3 =
                degenerate_third_angle(a12, a23, a31).ok_or(GeomError::InfeasibleTriangle)?;
            Ok([z1, z2, ImVector::on_jk_circle(theta3)])
        }
        Verdict::NonDegenerate => {
            let (c12, s12) = (a12.radians().cos(), a12.radians().sin());
            let y = a31.radians().cos();
            // ⟨z3, z2⟩ = y·c12 − z·s12 = cos a23
            let z = (y * c12 - a23.radians().cos()) / s12;
            let x2 = 1.0 - y * y - z * z;
            Ok([
                z1,
                z2,
                ImVector::new(mirror.sign() * x2.max(0.0).sqrt(), y, z),
            ])
        }
    }
}

/// For a degenerate triangle, the angle θ3 on the ⟨j,k⟩ circle with
/// `d(j, j e^{iθ3}) = a31` and `d(j e^{i a12}, j e^{iθ3}) = a23`.
/// Prefers the representative in `[0, π]` when both choices work.
pub fn degenerate_third_angle(
    a12: RationalAngle,
    a23: RationalAngle,
    a31: RationalAngle,
) -> Option<RationalAngle> {
    [a31, a31.neg_mod_2pi()]
        .into_iter()
        .find(|&t| fold_to_distance(t.sub_mod_2pi(a12)) == a23)
}

pub(crate) mod ratio_str {
    use num_rational::Ratio;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Ratio<i64>, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(r)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Ratio<i64>, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quat::sphere_distance;

    fn ang(n: i64, d: i64) -> RationalAngle {
        RationalAngle::new(n, d).unwrap()
    }

    fn r(n: i64, d: i64) -> Ratio<i64> {
        Ratio::new(n, d)
    }

    #[test]
    fn realizability_examples() {
        let v = |a, b, c| triangle_realizability(a, b, c).unwrap().verdict;
        assert_eq!(v(ang(1, 3), ang(1, 5), ang(3, 7)), Verdict::NonDegenerate);
        assert_eq!(v(ang(1, 3), ang(3, 5), ang(1, 7)), Verdict::Infeasible);
        for k in 0..=8 {
            let a = ang(k, 8);
            assert_eq!(v(a, a, RationalAngle::ZERO), Verdict::Degenerate);
        }
        let res = triangle_realizability(ang(2, 3), ang(4, 5), ang(6, 7)).unwrap();
        assert_eq!(res.verdict, Verdict::Infeasible);
        assert!((res.gram_det - (-1.445)).abs() < 1e-3, "{}", res.gram_det);
        assert_eq!(
            triangle_realizability(ang(3, 2), ang(1, 3), ang(1, 3)),
            Err(GeomError::OutOfRange(ang(3, 2)))
        );
    }

    #[test]
    fn planar_check_examples() {
        let c = planar_triangle_check(ang(1, 3), ang(1, 5), ang(3, 7));
        assert_eq!((c.lo, c.hi, c.holds), (r(8, 35), r(22, 35), true));
        let c = planar_triangle_check(ang(2, 3), ang(4, 5), ang(6, 7));
        assert_eq!((c.lo, c.hi, c.holds), (r(2, 35), r(58, 35), true));
        let c = planar_triangle_check(ang(1, 3), ang(1, 5), ang(1, 7));
        assert_eq!((c.lo, c.hi, c.holds), (r(2, 35), r(12, 35), true));
        // hi is not wrapped even when it reaches 2
        let c = planar_triangle_check(RationalAngle::PI, RationalAngle::PI, RationalAngle::PI);
        assert_eq!(c.hi, r(2, 1));
    }

    #[test]
    fn right_angled_octant() {
        let h = ang(1, 2);
        let [z1, z2, z3] = construct_triangle(h, h, h, Mirror::Positive).unwrap();
        assert!(z1.dist_inf(&ImVector::J) < 1e-15);
        assert!(z2.dist_inf(&ImVector::new(0.0, 0.0, -1.0)) < 1e-15);
        assert!(z3.dist_inf(&ImVector::new(1.0, 0.0, 0.0)) < 1e-15);
    }

    #[test]
    fn mirror_pair_for_table_row() {
        let (a, b, c) = (ang(1, 3), ang(1, 5), ang(3, 7));
        let p = construct_triangle(a, b, c, Mirror::Positive).unwrap();
        let n = construct_triangle(a, b, c, Mirror::Negative).unwrap();
        assert!(p[2].x > 1e-3);
        assert!(p[2].dist_inf(&n[2]) > 1e-3);
        assert!(p[2].mirror_i().dist_inf(&n[2]) < 1e-15);
        for z in [p, n] {
            assert!((sphere_distance(z[0], z[1]).unwrap() - a.radians()).abs() < 1e-10);
            assert!((sphere_distance(z[1], z[2]).unwrap() - b.radians()).abs() < 1e-10);
            assert!((sphere_distance(z[2], z[0]).unwrap() - c.radians()).abs() < 1e-10);
        }
    }

    #[test]
    fn degenerate_vertices_lie_on_the_jk_circle() {
        let cases = [
            (ang(1, 3), ang(1, 3), ang(2, 3)),
            (RationalAngle::ZERO, ang(2, 5), ang(2, 5)),
            (RationalAngle::PI, ang(1, 5), ang(4, 5)),
            (ang(2, 3), ang(2, 3), ang(2, 3)),
        ];
        for (a, b, c) in cases {
            assert_eq!(
                triangle_realizability(a, b, c).unwrap().verdict,
                Verdict::Degenerate
            );
            for m in [Mirror::Positive, Mirror::Negative] {
                let z = construct_triangle(a, b, c, m).unwrap();
                assert_eq!(z[2].x, 0.0);
                assert!((sphere_distance(z[1], z[2]).unwrap() - b.radians()).abs() < 1e-10);
                assert!((sphere_distance(z[2], z[0]).unwrap() - c.radians()).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn infeasible_construction_errors() {
        assert_eq!(
            construct_triangle(ang(1, 3), ang(3, 5), ang(1, 7), Mirror::Positive),
            Err(GeomError::InfeasibleTriangle)
        );
    }

    /// Independent oracle: solve for the third vertex from scratch and read
    /// feasibility off the discriminant of its i-component.
    fn discriminant_oracle(a: RationalAngle, b: RationalAngle, c: RationalAngle) -> Verdict {
        let (c12, s12) = (a.radians().cos(), a.radians().sin());
        let (cb, cc) = (b.radians().cos(), c.radians().cos());
        if s12.abs() < 1e-12 {
            // z2 = ±j: z3 exists iff its distances to j and z2 agree
            let other = if c12 > 0.0 { cc } else { -cc };
            return if (other - cb).abs() < 1e-9 {
                Verdict::Degenerate
            } else {
                Verdict::Infeasible
            };
        }
        let y = cc;
        let z = (y * c12 - cb) / s12;
        let disc = 1.0 - y * y - z * z;
        if disc.abs() < 1e-9 {
            Verdict::Degenerate
        } else if disc > 0.0 {
            Verdict::NonDegenerate
        } else {
            Verdict::Infeasible
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn side() -> impl Strategy<Value = RationalAngle> {
            (1i64..=13).prop_flat_map(|d| (0..=d).prop_map(move |k| ang(k, d)))
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(1000))]

            #[test]
            fn verdict_matches_discriminant_oracle(a in side(), b in side(), c in side()) {
                let got = triangle_realizability(a, b, c).unwrap().verdict;
                prop_assert_eq!(got, discriminant_oracle(a, b, c), "({}, {}, {})", a, b, c);
            }

            #[test]
            fn constructed_vertices_have_prescribed_distances(a in side(), b in side(), c in side()) {
                let v = triangle_realizability(a, b, c).unwrap().verdict;
                if !v.is_feasible() {
                    return Ok(());
                }
                for m in [Mirror::Positive, Mirror::Negative] {
                    let z = construct_triangle(a, b, c, m).unwrap();
                    prop_assert!((sphere_distance(z[0], z[1]).unwrap() - a.radians()).abs() < 1e-10);
                    prop_assert!((sphere_distance(z[1], z[2]).unwrap() - b.radians()).abs() < 1e-10);
                    prop_assert!((sphere_distance(z[2], z[0]).unwrap() - c.radians()).abs() < 1e-10);
                }
            }

            #[test]
            fn gram_sign_consistent(a in side(), b in side(), c in side()) {
                let r = triangle_realizability(a, b, c).unwrap();
                match r.verdict {
                    Verdict::Degenerate => prop_assert!(r.gram_det.abs() < 1e-12),
                    Verdict::NonDegenerate => prop_assert!(r.gram_det > GRAM_FLOOR),
                    Verdict::Infeasible => prop_assert!(r.gram_det < -GRAM_FLOOR),
                }
            }
        }
    }
}
