//! SU(2) representation spaces of pretzel knots.
//!
//! The crate enumerates traceless SU(2) representations of the groups of
//! pretzel knots and links `P(p_1, …, p_n)` up to conjugacy, builds explicit
//! quaternion representatives, computes their Zariski tangent spaces, and
//! evaluates the classical invariants that predict their counts.

pub mod angle;
pub mod knot;
pub mod linalg;
pub mod presentation;
pub mod quat;
pub mod rep;
pub mod sphere;
pub mod table;
pub mod tangent;

pub use angle::{CentralCase, RationalAngle};
pub use knot::PretzelKnot;
pub use quat::{ImVector, Quaternion};
pub use rep::{enumerate_all, RepClass, RepSpaceReport};
