//! Unit quaternions, the Lie algebra su(2) ≅ Im ℍ ≅ ℝ³, and the adjoint
//! action.

use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::{Matrix3, Vector3};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::angle::RationalAngle;

/// Tolerance on |q| − 1 (or |v| − 1) for inputs that must be unit length.
pub const UNIT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum QuatError {
    #[error("axis is not a unit vector (norm {0})")]
    NonUnitAxis(f64),
    #[error("quaternion is not unit length (norm {0})")]
    NonUnitQuaternion(f64),
    #[error("input is not a unit vector (norm {0})")]
    NonUnitInput(f64),
}

pub type Mat3 = Matrix3<f64>;

/// `w + x·i + y·j + z·k`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Quaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

/// A purely imaginary quaternion `x·i + y·j + z·k`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ImVector {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Quaternion {
    pub const ONE: Quaternion = Quaternion {
        w: 1.0,
        x: 0.0,
        y: 0.0,
        z: 0.0,
    };
    pub const I: Quaternion = Quaternion {
        w: 0.0,
        x: 1.0,
        y: 0.0,
        z: 0.0,
    };
    pub const J: Quaternion = Quaternion {
        w: 0.0,
        x: 0.0,
        y: 1.0,
        z: 0.0,
    };
    pub const K: Quaternion = Quaternion {
        w: 0.0,
        x: 0.0,
        y: 0.0,
        z: 1.0,
    };

    pub const fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        Quaternion { w, x, y, z }
    }

    pub fn from_parts(w: f64, v: ImVector) -> Self {
        Quaternion {
            w,
            x: v.x,
            y: v.y,
            z: v.z,
        }
    }

    pub fn im(&self) -> ImVector {
        ImVector {
            x: self.x,
            y: self.y,
            z: self.z,
        }
    }

    pub fn conj(&self) -> Self {
        Quaternion {
            w: self.w,
            x: -self.x,
            y: -self.y,
            z: -self.z,
        }
    }

    pub fn norm(&self) -> f64 {
        (self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    pub fn inverse(&self) -> Self {
        let n2 = self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z;
        let c = self.conj();
        Quaternion {
            w: c.w / n2,
            x: c.x / n2,
            y: c.y / n2,
            z: c.z / n2,
        }
    }

    pub fn powi(&self, e: i64) -> Self {
        let base = if e < 0 { self.inverse() } else { *self };
        (0..e.unsigned_abs()).fold(Quaternion::ONE, |acc, _| acc * base)
    }

    /// Max-abs distance between coefficient vectors.
    pub fn dist_inf(&self, other: &Quaternion) -> f64 {
        (self.w - other.w)
            .abs()
            .max((self.x - other.x).abs())
            .max((self.y - other.y).abs())
            .max((self.z - other.z).abs())
    }

    pub fn to_array(&self) -> [f64; 4] {
        [self.w, self.x, self.y, self.z]
    }

    fn check_unit(&self) -> Result<(), QuatError> {
        let n = self.norm();
        if (n - 1.0).abs() > UNIT_TOL {
            Err(QuatError::NonUnitQuaternion(n))
        } else {
            Ok(())
        }
    }
}

/// Hamilton product.
pub fn qmul(a: Quaternion, b: Quaternion) -> Quaternion {
    Quaternion {
        w: a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
        x: a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
        y: a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
        z: a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w,
    }
}

impl Mul for Quaternion {
    type Output = Quaternion;
    fn mul(self, rhs: Quaternion) -> Quaternion {
        qmul(self, rhs)
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;
    fn neg(self) -> Quaternion {
        Quaternion {
            w: -self.w,
            x: -self.x,
            y: -self.y,
            z: -self.z,
        }
    }
}

impl ImVector {
    pub const I: ImVector = ImVector {
        x: 1.0,
        y: 0.0,
        z: 0.0,
    };
    pub const J: ImVector = ImVector {
        x: 0.0,
        y: 1.0,
        z: 0.0,
    };
    pub const K: ImVector = ImVector {
        x: 0.0,
        y: 0.0,
        z: 1.0,
    };

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        ImVector { x, y, z }
    }

    pub fn dot(&self, o: &ImVector) -> f64 {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    pub fn cross(&self, o: &ImVector) -> ImVector {
        ImVector {
            x: self.y * o.z - self.z * o.y,
            y: self.z * o.x - self.x * o.z,
            z: self.x * o.y - self.y * o.x,
        }
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn scale(&self, s: f64) -> ImVector {
        ImVector {
            x: self.x * s,
            y: self.y * s,
            z: self.z * s,
        }
    }

    pub fn normalized(&self) -> ImVector {
        self.scale(1.0 / self.norm())
    }

    pub fn as_quaternion(&self) -> Quaternion {
        Quaternion {
            w: 0.0,
            x: self.x,
            y: self.y,
            z: self.z,
        }
    }

    pub fn to_vector3(&self) -> Vector3<f64> {
        Vector3::new(self.x, self.y, self.z)
    }

    pub fn from_vector3(v: &Vector3<f64>) -> Self {
        ImVector {
            x: v[0],
            y: v[1],
            z: v[2],
        }
    }

    pub fn dist_inf(&self, o: &ImVector) -> f64 {
        (self.x - o.x)
            .abs()
            .max((self.y - o.y).abs())
            .max((self.z - o.z).abs())
    }

    /// Reflection across the ⟨j,k⟩-plane, `i ↦ −i`.
    pub fn mirror_i(&self) -> ImVector {
        ImVector {
            x: -self.x,
            y: self.y,
            z: self.z,
        }
    }

    /// `j·e^{iθ} = cos θ · j − sin θ · k`, the point at angle θ on the
    /// ⟨j,k⟩ great circle.
    pub fn on_jk_circle(theta: RationalAngle) -> ImVector {
        let t = theta.radians();
        ImVector {
            x: 0.0,
            y: t.cos(),
            z: -t.sin(),
        }
    }
}

impl Add for ImVector {
    type Output = ImVector;
    fn add(self, o: ImVector) -> ImVector {
        ImVector {
            x: self.x + o.x,
            y: self.y + o.y,
            z: self.z + o.z,
        }
    }
}

impl Sub for ImVector {
    type Output = ImVector;
    fn sub(self, o: ImVector) -> ImVector {
        ImVector {
            x: self.x - o.x,
            y: self.y - o.y,
            z: self.z - o.z,
        }
    }
}

impl Neg for ImVector {
    type Output = ImVector;
    fn neg(self) -> ImVector {
        ImVector {
            x: -self.x,
            y: -self.y,
            z: -self.z,
        }
    }
}

/// `e^{axis·angle} = cos(angle) + axis·sin(angle)`.
pub fn exp_im(axis: ImVector, angle: RationalAngle) -> Result<Quaternion, QuatError> {
    let n = axis.norm();
    if (n - 1.0).abs() > UNIT_TOL {
        return Err(QuatError::NonUnitAxis(n));
    }
    let t = angle.radians();
    Ok(Quaternion::from_parts(t.cos(), axis.scale(t.sin())))
}

/// Exponential of an arbitrary element of su(2).
pub fn exp_vec(v: ImVector) -> Quaternion {
    let t = v.norm();
    if t == 0.0 {
        return Quaternion::ONE;
    }
    Quaternion::from_parts(t.cos(), v.scale(t.sin() / t))
}

/// The rotation `v ↦ Im(q v q⁻¹)` as a 3×3 matrix in the basis i, j, k.
pub fn adjoint_matrix(q: Quaternion) -> Result<Mat3, QuatError> {
    q.check_unit()?;
    Ok(adjoint_unchecked(q))
}

pub(crate) fn adjoint_unchecked(q: Quaternion) -> Mat3 {
    let Quaternion { w, x, y, z } = q;
    Matrix3::new(
        w * w + x * x - y * y - z * z,
        2.0 * (x * y - w * z),
        2.0 * (x * z + w * y),
        2.0 * (x * y + w * z),
        w * w - x * x + y * y - z * z,
        2.0 * (y * z - w * x),
        2.0 * (x * z - w * y),
        2.0 * (y * z + w * x),
        w * w - x * x - y * y + z * z,
    )
}

/// Great-circle distance `arccos⟨u, v⟩` between unit vectors.
pub fn sphere_distance(u: ImVector, v: ImVector) -> Result<f64, QuatError> {
    for w in [u, v] {
        let n = w.norm();
        if (n - 1.0).abs() > 1e-9 {
            return Err(QuatError::NonUnitInput(n));
        }
    }
    // atan2 keeps full precision near 0 and π where arccos does not
    Ok(u.cross(&v).norm().atan2(u.dot(&v)))
}
