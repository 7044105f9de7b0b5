//! The convex hull `K` of two circles: supporting planes, membership,
//! stationary bisecants, line sections of the edge surface and boundary meshes.

mod bisecant;
mod membership;
mod mesh;
mod section;
mod support;

use serde::Serialize;
use thiserror::Error;

use crate::geom3::{Circle, Vec3};
use crate::scalar::Scalar;

pub use bisecant::{is_boundary_bisecant, stationary_bisecants_through, BisecantFan, FanVariant};
pub use membership::{membership, signed_distance, Membership, Verdict, DEFAULT_MEMBERSHIP_TOL};
pub use mesh::{boundary_mesh, PatchTag, RuledMesh};
pub(crate) use mesh::MeshBuilder;
pub(crate) use membership::signed_distance_discs;
pub use section::{line_section_count, LineSection, SectionPoint};
pub use support::{support, SupportFace, SupportResult};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HullError {
    #[error("direction vector is zero")]
    ZeroDirection,
    #[error("the tangent lines at the two points do not meet (residual {0:e})")]
    NotOnEdgeCurve(f64),
    #[error("the eliminant vanishes identically for this line")]
    DegenerateLine,
    #[error("the circles lie in one plane")]
    CoplanarCircles,
    #[error("mesh resolution must be at least 16")]
    ResolutionTooSmall,
}

/// Float view of a circle together with the in-plane frame used by its
/// parametrization. Exact circles keep their exact frame, so angles agree
/// with the parameters of the exact edge form.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Disc {
    pub center: Vec3<f64>,
    pub radius: f64,
    pub normal: Vec3<f64>,
    pub u: Vec3<f64>,
    pub v: Vec3<f64>,
}

impl Disc {
    pub fn of<S: Scalar>(c: &Circle<S>) -> Disc {
        let (u, v) = c.frame();
        Disc {
            center: c.center.to_f64(),
            radius: c.radius.to_f64(),
            normal: c.normal.to_f64(),
            u: u.to_f64(),
            v: v.to_f64(),
        }
    }

    pub fn point(&self, theta: f64) -> Vec3<f64> {
        let (s, c) = theta.sin_cos();
        &(&self.center + &self.u.scale(&(self.radius * c))) + &self.v.scale(&(self.radius * s))
    }

    /// Unit tangent at angle `theta`, in the direction of increasing angle.
    pub fn tangent(&self, theta: f64) -> Vec3<f64> {
        let (s, c) = theta.sin_cos();
        &self.v.scale(&c) - &self.u.scale(&s)
    }

    /// Angle in `[0, 2 pi)` of the projection of `x` onto the plane.
    pub fn angle_of(&self, x: &Vec3<f64>) -> f64 {
        let d = x - &self.center;
        d.dot(&self.v).atan2(d.dot(&self.u)).rem_euclid(std::f64::consts::TAU)
    }

    /// Component of `w` parallel to the plane.
    pub fn in_plane(&self, w: &Vec3<f64>) -> Vec3<f64> {
        w - &self.normal.scale(&w.dot(&self.normal))
    }

    /// `max { w . x : x in disc }`
    pub fn support(&self, w: &Vec3<f64>) -> f64 {
        w.dot(&self.center) + self.radius * self.in_plane(w).norm()
    }

    /// Signed distance of `x` from the plane of the circle.
    pub fn height(&self, x: &Vec3<f64>) -> f64 {
        self.normal.dot(&(x - &self.center))
    }

    pub fn scale(&self) -> f64 {
        1.0 + self.center.norm() + self.radius
    }
}
