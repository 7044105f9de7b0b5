use serde::Serialize;

use super::{Disc, HullError};
use crate::geom3::{Circle, Vec3};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SupportFace {
    ExposedPoint,
    Bisecant,
    /// The plane contains the disc of circle `circle` (1 or 2).
    TwoFace { circle: usize },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SupportResult {
    pub value: f64,
    /// Circles (1 and/or 2) on which the maximum is attained.
    pub attained_by: Vec<usize>,
    /// Maximisers on the circles; for a 2-face the disc center stands in.
    pub argmax: Vec<Vec3<f64>>,
    pub face: SupportFace,
}

/// Support function `max { w . x : x in K }` and the face it exposes.
pub fn support<S: Scalar>(c1: &Circle<S>, c2: &Circle<S>, w: &Vec3<f64>) -> Result<SupportResult, HullError> {
    support_discs(&Disc::of(c1), &Disc::of(c2), w)
}

pub(crate) fn support_discs(d1: &Disc, d2: &Disc, w: &Vec3<f64>) -> Result<SupportResult, HullError> {
    let wn = w.norm();
    if !(wn > 0.0) || !wn.is_finite() {
        return Err(HullError::ZeroDirection);
    }
    let h = [d1.support(w), d2.support(w)];
    let value = h[0].max(h[1]);
    let tie = 1e-12 * value.abs().max(1.0) * (d1.scale() + d2.scale());
    let mut attained_by = Vec::new();
    let mut argmax = Vec::new();
    let mut face = None;
    for (i, d) in [d1, d2].into_iter().enumerate() {
        if value - h[i] > tie {
            continue;
        }
        attained_by.push(i + 1);
        let p = d.in_plane(w);
        let pn = p.norm();
        if pn <= 1e-12 * wn {
            face.get_or_insert(SupportFace::TwoFace { circle: i + 1 });
            argmax.push(d.center.clone());
        } else {
            argmax.push(&d.center + &p.scale(&(d.radius / pn)));
        }
    }
    let face = face.unwrap_or(if argmax.len() == 2 && argmax[0].dist(&argmax[1]) > 1e-12 {
        SupportFace::Bisecant
    } else {
        SupportFace::ExposedPoint
    });
    Ok(SupportResult { value, attained_by, argmax, face })
}
