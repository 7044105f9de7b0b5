use serde::{Deserialize, Serialize};

use super::EdgeError;
use crate::geom3::{Circle, Vec3};

/// Which two of the four points share a tangent intersection.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Pairing {
    /// `{0,1}` and `{2,3}`
    P01,
    /// `{0,2}` and `{1,3}`
    P02,
    /// `{0,3}` and `{1,2}`
    P03,
}

impl Pairing {
    fn pairs(self) -> [(usize, usize); 2] {
        match self {
            Pairing::P01 => [(0, 1), (2, 3)],
            Pairing::P02 => [(0, 2), (1, 3)],
            Pairing::P03 => [(0, 3), (1, 2)],
        }
    }
}

/// Meeting point of the tangents to `c` at angles `a` and `b`.
fn tangent_meet(c: &Circle<f64>, a: f64, b: f64) -> Result<Vec3<f64>, EdgeError> {
    let h = (b - a) / 2.0;
    if h.cos().abs() < 1e-9 {
        return Err(EdgeError::DegenerateConfiguration("tangent lines are parallel".into()));
    }
    let m = (a + b) / 2.0;
    let (u, v) = c.frame();
    let d = c.radius / h.cos();
    Ok(&(&c.center + &u.scale(&(d * m.cos()))) + &v.scale(&(d * m.sin())))
}

/// A circle whose edge curve with `c1` is branched over the four points of
/// `c1` at angles `params`. The tangents at each pair given by `pairing` meet
/// in `p` and `q`; the result has diameter `pq` and lies in the plane through
/// `pq` obtained by turning the plane of `c1` by `plane_pick` radians.
pub fn circle_with_branch_points(
    c1: &Circle<f64>,
    params: [f64; 4],
    pairing: Pairing,
    plane_pick: f64,
) -> Result<Circle<f64>, EdgeError> {
    for i in 0..4 {
        for j in 0..i {
            let d = (params[i] - params[j]).rem_euclid(std::f64::consts::TAU);
            if d < 1e-9 || d > std::f64::consts::TAU - 1e-9 {
                return Err(EdgeError::DegenerateConfiguration("branch points must be distinct".into()));
            }
        }
    }
    if plane_pick.sin().abs() < 1e-9 {
        return Err(EdgeError::DegenerateConfiguration("plane_pick keeps the circle in the plane of c1".into()));
    }
    let [(a, b), (c, d)] = pairing.pairs();
    let p = tangent_meet(c1, params[a], params[b])?;
    let q = tangent_meet(c1, params[c], params[d])?;
    let pq = &q - &p;
    let len = pq.norm();
    if len < 1e-9 {
        return Err(EdgeError::DegenerateConfiguration("tangent intersections coincide".into()));
    }
    let dir = pq.scale(&(1.0 / len));
    let n1 = &c1.normal;
    let n2 = &n1.scale(&plane_pick.cos()) + &dir.cross(n1).scale(&plane_pick.sin());
    let center = (&p + &q).scale(&0.5);
    Circle::new(center, len / 2.0, n2).map_err(|e| EdgeError::DegenerateConfiguration(e.to_string()))
}
