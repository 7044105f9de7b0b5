//! Exact and hybrid geometry of the convex hull of two circles in 3-space.

pub mod binary_form;
pub mod classify;
pub mod dual;
pub mod edge;
pub mod geom3;
pub mod hull;
pub mod linalg;
pub mod poly;
pub mod sampling;
pub mod scalar;

pub use geom3::{Circle, Line, ParametrizedConic, Plane, Point3, Vec3};
pub use scalar::{Rational, Scalar};
