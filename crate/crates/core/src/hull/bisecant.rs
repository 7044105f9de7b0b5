use serde::Serialize;

use super::{Disc, HullError};
use crate::geom3::{angle_to_param, param_to_angle, Circle, Vec3};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum FanVariant {
    TwoReal([Vec3<f64>; 2]),
    OneReal(Vec3<f64>),
    NoneReal,
    /// The tangent at `p` lies in the other plane; every line in that plane
    /// through `p` is a degenerate stationary bisecant.
    Pencil,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BisecantFan {
    /// `(s, t)` on the first circle.
    pub source: (f64, f64),
    pub point: Vec3<f64>,
    /// `T_p C1` meets the plane of the second circle here; `None` if the
    /// tangent is parallel to (or lies in) that plane.
    pub meet: Option<Vec3<f64>>,
    pub variant: FanVariant,
    /// Parameters `(u, v)` of the tangency points on the second circle.
    pub partner_params: Vec<(f64, f64)>,
}

impl BisecantFan {
    pub fn partners(&self) -> Vec<Vec3<f64>> {
        match &self.variant {
            FanVariant::TwoReal(q) => q.to_vec(),
            FanVariant::OneReal(q) => vec![q.clone()],
            _ => Vec::new(),
        }
    }
}

/// Stationary bisecants through the point of `c1` with parameter `(s:t)`:
/// the lines to the tangency points of the tangents to `c2` from `T_p C1 n P2`.
pub fn stationary_bisecants_through<S: Scalar>(c1: &Circle<S>, c2: &Circle<S>, param: (f64, f64)) -> BisecantFan {
    fan(&Disc::of(c1), &Disc::of(c2), param)
}

pub(crate) fn fan(d1: &Disc, d2: &Disc, param: (f64, f64)) -> BisecantFan {
    let theta = param_to_angle(param.0, param.1);
    let p = d1.point(theta);
    let d = d1.tangent(theta);
    let scale = d1.scale() + d2.scale();
    let eps = 1e-12 * scale;
    let dn = d.dot(&d2.normal);
    let hp = d2.height(&p);
    let with = |meet, variant: FanVariant| {
        let partner_params = match &variant {
            FanVariant::TwoReal(q) => q.iter().map(|x| angle_to_param(d2.angle_of(x))).collect(),
            FanVariant::OneReal(q) => vec![angle_to_param(d2.angle_of(q))],
            _ => Vec::new(),
        };
        BisecantFan { source: param, point: p.clone(), meet, variant, partner_params }
    };
    if dn.abs() <= 1e-13 {
        if hp.abs() <= eps {
            return with(None, FanVariant::Pencil);
        }
        // The tangent meets P2 at infinity: tangents of C2 parallel to it.
        let side = d2.normal.cross(&d).normalized();
        let r = d2.radius;
        let q = [&d2.center + &side.scale(&r), &d2.center - &side.scale(&r)];
        return with(None, FanVariant::TwoReal(q));
    }
    let meet = &p - &d.scale(&(hp / dn));
    let e = d2.in_plane(&(&meet - &d2.center));
    let rho = e.norm();
    let r = d2.radius;
    let power = rho * rho - r * r;
    if power.abs() <= 1e-12 * scale * scale {
        let q = if rho > 0.0 { &d2.center + &e.scale(&(r / rho)) } else { meet.clone() };
        return with(Some(meet), FanVariant::OneReal(q));
    }
    if power < 0.0 {
        return with(Some(meet), FanVariant::NoneReal);
    }
    let eh = e.scale(&(1.0 / rho));
    let foot = &d2.center + &eh.scale(&(r * r / rho));
    let off = d2.normal.cross(&eh).scale(&(r * (1.0 - r * r / (rho * rho)).sqrt()));
    with(Some(meet), FanVariant::TwoReal([&foot + &off, &foot - &off]))
}

/// Residual of the coplanarity of `T_p C1`, `T_q C2` and `q - p`.
pub(crate) fn edge_residual(d1: &Disc, d2: &Disc, p: &Vec3<f64>, q: &Vec3<f64>) -> f64 {
    let t1 = d1.tangent(d1.angle_of(p));
    let t2 = d2.tangent(d2.angle_of(q));
    let pq = q - p;
    let len = pq.norm();
    if len <= 1e-12 * (d1.scale() + d2.scale()) {
        return 0.0;
    }
    t1.cross(&t2).dot(&pq) / len
}

/// `true` iff the plane through `pq` containing both tangent lines supports
/// the hull, i.e. `pq` lies in the boundary of `K`.
pub fn is_boundary_bisecant<S: Scalar>(
    c1: &Circle<S>,
    c2: &Circle<S>,
    pq: (&Vec3<f64>, &Vec3<f64>),
) -> Result<bool, HullError> {
    boundary_test(&Disc::of(c1), &Disc::of(c2), pq.0, pq.1)
}

pub(crate) fn boundary_test(d1: &Disc, d2: &Disc, p: &Vec3<f64>, q: &Vec3<f64>) -> Result<bool, HullError> {
    let res = edge_residual(d1, d2, p, q);
    if res.abs() > 1e-9 {
        return Err(HullError::NotOnEdgeCurve(res));
    }
    Ok(halfspace_test(d1, d2, p, q, 1e-9))
}

/// Whether a plane through `pq` containing both tangents supports the hull,
/// with relative tolerance `rel`.
pub(crate) fn halfspace_test(d1: &Disc, d2: &Disc, p: &Vec3<f64>, q: &Vec3<f64>, rel: f64) -> bool {
    let scale = d1.scale() + d2.scale();
    let tol = rel * scale;
    let t1 = d1.tangent(d1.angle_of(p));
    let t2 = d2.tangent(d2.angle_of(q));
    let pq = q - p;
    let supports = |n: &Vec3<f64>| {
        let n = n.normalized();
        let h = d1.support(&n).max(d2.support(&n));
        let m = n.scale(&-1.0);
        let hm = d1.support(&m).max(d2.support(&m));
        h <= n.dot(p) + tol || hm <= m.dot(p) + tol
    };
    let small = 1e-9 * pq.norm().max(1.0);
    let candidates = if pq.norm() <= 1e-12 * scale {
        vec![t1.cross(&t2)]
    } else {
        vec![t1.cross(&pq), t2.cross(&pq)]
    };
    if let Some(n) = candidates.iter().find(|n| n.norm() > small) {
        return supports(n);
    }
    // Both tangents run along pq: try every plane of the pencil through it.
    let axis = if pq.norm() > 1e-12 * scale { pq.normalized() } else { t1.clone() };
    let helper = if axis.x.abs() < 0.6 { Vec3::new(1.0, 0.0, 0.0) } else { Vec3::new(0.0, 1.0, 0.0) };
    let a = axis.cross(&helper).normalized();
    let b = axis.cross(&a);
    let steps = 3600;
    (0..steps).any(|k| {
        let ang = std::f64::consts::PI * k as f64 / steps as f64;
        supports(&(&a.scale(&ang.cos()) + &b.scale(&ang.sin())))
    })
}
