//! The dual convex body of the hull, in the affine chart of planes
//! `{x : w . (x - o) + 1 = 0}` around an interior point `o`.

use std::f64::consts::{PI, TAU};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::edge::{edge_form, Bideg22Form};
use crate::geom3::{angle_to_param, circle_parametrization, Circle, Vec3};
use crate::hull::{signed_distance_discs, Disc, MeshBuilder, PatchTag, RuledMesh};
use crate::scalar::Scalar;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DualError {
    #[error("the origin is not an interior point of the hull (signed distance {0:e})")]
    OriginNotInterior(f64),
    #[error("the point is not on the boundary of the dual body (residual {0:e})")]
    NotOnBoundary(f64),
    #[error("the circles lie in one plane")]
    CoplanarCircles,
    #[error("mesh resolution must be at least 16")]
    ResolutionTooSmall,
}

/// `Q(w) = (w . (c - o) + 1)^2 - r^2 |w - (w . n) n|^2`, stored as
/// `w^T A w + 2 b . w + 1`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DualCone<S> {
    pub quadratic: [[S; 3]; 3],
    pub linear: [S; 3],
    pub constant: S,
    pub origin: Vec3<S>,
    pub is_cylinder: bool,
    offset: Vec3<S>,
    normal: Vec3<S>,
}

impl<S: Scalar> DualCone<S> {
    pub fn eval(&self, w: &Vec3<S>) -> S {
        let w = w.to_array();
        let mut acc = self.constant.clone();
        for i in 0..3 {
            acc = acc + S::from_i64(2) * self.linear[i].clone() * w[i].clone();
            for j in 0..3 {
                acc = acc + self.quadratic[i][j].clone() * w[i].clone() * w[j].clone();
            }
        }
        acc
    }

    /// The point dual to the plane of the circle; `None` for a cylinder.
    pub fn vertex(&self) -> Option<Vec3<S>> {
        if self.is_cylinder {
            return None;
        }
        let nd = self.normal.dot(&self.offset);
        Some(self.normal.scale(&(-S::one() / nd)))
    }
}

pub fn dual_cone<S: Scalar>(c: &Circle<S>, o: &Vec3<S>) -> DualCone<S> {
    let d = &c.center - o;
    let n = &c.normal;
    let r2 = c.radius.clone() * c.radius.clone();
    let (da, na) = (d.to_array(), n.to_array());
    let quadratic = std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let id = if i == j { S::one() } else { S::zero() };
            da[i].clone() * da[j].clone() - r2.clone() * (id - na[i].clone() * na[j].clone())
        })
    });
    let is_cylinder = n.dot(&d).is_negligible();
    DualCone { quadratic, linear: da, constant: S::one(), origin: o.clone(), is_cylinder, offset: d, normal: n.clone() }
}

/// Points of the dual body that lie on the boundary, by the active constraints.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum DualBoundaryClass {
    /// The plane touches only the first circle, at `contact`.
    OnFirst { contact: Vec3<f64> },
    OnSecond { contact: Vec3<f64> },
    /// The plane supports the hull along the segment `p q`.
    OnBoth { p: Vec3<f64>, q: Vec3<f64>, edge_residual: f64 },
    /// The plane of a disc.
    Vertex { circle: usize },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DualBody {
    pub cones: [DualCone<f64>; 2],
    pub origin: Vec3<f64>,
    /// Radius of the largest ball around `origin` inside the hull.
    pub inscribed_radius: f64,
    /// Every member has norm below `rho`.
    pub rho: f64,
    discs: [Disc; 2],
    edge: Bideg22Form<f64>,
}

impl DualBody {
    /// `w . (c_i - o) + 1 - r_i |proj_i w|`, one per circle.
    pub fn residuals(&self, w: &Vec3<f64>) -> [f64; 2] {
        std::array::from_fn(|i| {
            let d = &self.discs[i];
            w.dot(&(&d.center - &self.origin)) + 1.0 - d.radius * d.in_plane(w).norm()
        })
    }

    pub fn contains(&self, w: &Vec3<f64>, tol: f64) -> bool {
        self.residuals(w).iter().all(|&g| g >= -tol)
    }

    /// Support value of the hull translated by `-origin` in direction `-w`;
    /// membership is equivalent to this being at most 1.
    pub fn polar_value(&self, w: &Vec3<f64>) -> f64 {
        let m = -w;
        self.discs.iter().map(|d| d.support(&m)).fold(f64::NEG_INFINITY, f64::max) + w.dot(&self.origin)
    }

    pub fn discs(&self) -> &[Disc; 2] {
        &self.discs
    }

    /// Distance along the ray through `dir` from 0 to the boundary, and the
    /// index of the circle whose constraint stops it first.
    pub fn ray_to_boundary(&self, dir: &Vec3<f64>) -> (f64, usize) {
        let k: [f64; 2] = std::array::from_fn(|i| {
            let d = &self.discs[i];
            d.radius * d.in_plane(dir).norm() - dir.dot(&(&d.center - &self.origin))
        });
        let t = |i: usize| if k[i] > 0.0 { 1.0 / k[i] } else { f64::INFINITY };
        if t(0) <= t(1) {
            (t(0), 0)
        } else {
            (t(1), 1)
        }
    }

    /// Whether the vertex of the first (`i = 0`) or second cone lies on the
    /// boundary of the body.
    pub fn vertex_on_boundary(&self, i: usize, tol: f64) -> bool {
        match self.cones[i].vertex() {
            Some(v) => self.residuals(&v)[1 - i] >= -tol,
            None => false,
        }
    }

    fn contact(&self, i: usize, w: &Vec3<f64>) -> Vec3<f64> {
        let d = &self.discs[i];
        let p = d.in_plane(w);
        let len = p.norm();
        if len == 0.0 {
            return d.center.clone();
        }
        &d.center - &p.scale(&(d.radius / len))
    }
}

/// Radius of the largest ball centered at `o` inside the hull.
fn inscribed(d1: &Disc, d2: &Disc, o: &Vec3<f64>) -> f64 {
    -signed_distance_discs(d1, d2, o).0
}

pub fn dual_body<S: Scalar>(c1: &Circle<S>, c2: &Circle<S>, o: &Vec3<f64>) -> Result<DualBody, DualError> {
    let (d1, d2) = (Disc::of(c1), Disc::of(c2));
    let r_in = inscribed(&d1, &d2, o);
    if r_in <= 1e-7 * (d1.scale() + d2.scale()) {
        return Err(DualError::OriginNotInterior(-r_in));
    }
    let edge = edge_form(&circle_parametrization(c1), &circle_parametrization(c2))
        .map_err(|_| DualError::CoplanarCircles)?
        .to_f64();
    let edge = edge.scale(&(1.0 / edge.max_abs().max(1e-300)));
    let (f1, f2) = (c1.to_f64(), c2.to_f64());
    Ok(DualBody {
        cones: [dual_cone(&f1, o), dual_cone(&f2, o)],
        origin: o.clone(),
        inscribed_radius: r_in,
        rho: 1.0 / (r_in * (1.0 - 1e-6)),
        discs: [d1, d2],
        edge,
    })
}

/// The midpoint of the centers when it is interior, otherwise the center
/// of a largest inscribed ball.
pub fn default_origin<S: Scalar>(c1: &Circle<S>, c2: &Circle<S>) -> Result<Vec3<f64>, DualError> {
    let (d1, d2) = (Disc::of(c1), Disc::of(c2));
    let scale = d1.scale() + d2.scale();
    let mid = (&d1.center + &d2.center).scale(&0.5);
    if inscribed(&d1, &d2, &mid) > 1e-7 * scale {
        return Ok(mid);
    }
    // Compass search for the deepest point.
    let mut best = mid;
    let mut val = inscribed(&d1, &d2, &best);
    let mut step = 0.25 * (d1.radius + d2.radius);
    while step > 1e-6 * scale {
        let mut moved = false;
        for k in 0..3 {
            for s in [1.0, -1.0] {
                let cand = &best + &Vec3::<f64>::basis(k).scale(&(s * step));
                let v = inscribed(&d1, &d2, &cand);
                if v > val {
                    (best, val, moved) = (cand, v, true);
                }
            }
        }
        if !moved {
            step *= 0.5;
        }
    }
    if val <= 1e-7 * scale {
        return Err(DualError::OriginNotInterior(-val));
    }
    Ok(best)
}

/// Which constraints are active at the boundary point `w`.
pub fn dual_boundary_classify(db: &DualBody, w: &Vec3<f64>) -> Result<DualBoundaryClass, DualError> {
    let g = db.residuals(w);
    let tol = 1e-9 * (1.0 + w.norm());
    let low = g[0].min(g[1]);
    if low.abs() > tol {
        return Err(DualError::NotOnBoundary(low));
    }
    let active = [g[0] <= tol, g[1] <= tol];
    for i in 0..2 {
        if active[i] && db.discs[i].in_plane(w).norm() <= tol {
            return Ok(DualBoundaryClass::Vertex { circle: i + 1 });
        }
    }
    match active {
        [true, true] => {
            let (p, q) = (db.contact(0, w), db.contact(1, w));
            let (s, t) = angle_to_param(db.discs[0].angle_of(&p));
            let (u, v) = angle_to_param(db.discs[1].angle_of(&q));
            let edge_residual = db.edge.eval_f64(s, t, u, v);
            Ok(DualBoundaryClass::OnBoth { p, q, edge_residual })
        }
        [true, false] => Ok(DualBoundaryClass::OnFirst { contact: db.contact(0, w) }),
        _ => Ok(DualBoundaryClass::OnSecond { contact: db.contact(1, w) }),
    }
}

/// Triangulated boundary of the dual body, from `n` longitudes and `n / 2`
/// latitudes of directions scaled onto the boundary.
pub fn dual_mesh(db: &DualBody, n: usize) -> Result<RuledMesh, DualError> {
    if n < 16 {
        return Err(DualError::ResolutionTooSmall);
    }
    let rings = n / 2;
    let direction = |i: usize, j: usize| {
        let phi = PI * i as f64 / rings as f64;
        let theta = TAU * j as f64 / n as f64;
        Vec3::new(phi.sin() * theta.cos(), phi.sin() * theta.sin(), phi.cos())
    };
    // Row 0 and row `rings` are the poles.
    let points: Vec<Vec<(Vec3<f64>, usize)>> = (0..=rings)
        .into_par_iter()
        .map(|i| {
            let count = if i == 0 || i == rings { 1 } else { n };
            (0..count)
                .map(|j| {
                    let d = direction(i, j);
                    let (t, which) = db.ray_to_boundary(&d);
                    (d.scale(&t), which)
                })
                .collect()
        })
        .collect();
    let mut b = MeshBuilder::new(1e-12 * db.rho);
    let ids: Vec<Vec<usize>> = points.iter().map(|row| row.iter().map(|(p, _)| b.vertex(p)).collect()).collect();
    let inside = Vec3::zero();
    let tag = |cells: &[(usize, usize)]| {
        let first = points[cells[0].0][cells[0].1].1;
        if cells.iter().all(|&(i, j)| points[i][j].1 == first) {
            PatchTag::DualCone { circle: first + 1 }
        } else {
            PatchTag::DualSeam
        }
    };
    for i in 0..rings {
        for j in 0..n {
            let j2 = (j + 1) % n;
            let at = |r: usize, k: usize| if r == 0 || r == rings { 0 } else { k };
            let (a, bb) = ((i, at(i, j)), (i, at(i, j2)));
            let (c, d) = ((i + 1, at(i + 1, j)), (i + 1, at(i + 1, j2)));
            let id = |(r, k): (usize, usize)| ids[r][k];
            b.triangle(id(a), id(c), id(d), &inside, tag(&[a, c, d]));
            b.triangle(id(a), id(d), id(bb), &inside, tag(&[a, d, bb]));
        }
    }
    Ok(b.finish())
}
