use std::f64::consts::{PI, TAU};

use serde::Serialize;

use super::order::{exact_pair, line_data, OrderTag, OrderType};
use super::ClassifyError;
use crate::geom3::{Circle, Vec3};
use crate::hull::Disc;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ExtremeSet {
    FullCircle,
    OneArc,
    TwoArcs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum FaceShape {
    Disc,
    /// Convex hull of the disc and the point where the other circle touches its plane.
    DiscAndPoint,
}

/// One row of the face lattice table, in relabelled circles.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct LatticeRow {
    pub class: usize,
    pub zero_faces: [ExtremeSet; 2],
    pub one_faces: &'static str,
    /// Bisecant edges through a generic exposed point.
    pub edges_per_point: [usize; 2],
    pub two_faces: [Option<FaceShape>; 2],
    pub nonexposed_points: usize,
    pub nonexposed_bisecants: usize,
    pub isolated_bisecant: bool,
}

const fn row(
    class: usize,
    zero_faces: [ExtremeSet; 2],
    one_faces: &'static str,
    edges_per_point: [usize; 2],
    two_faces: [Option<FaceShape>; 2],
    nonexposed: (usize, usize),
    isolated_bisecant: bool,
) -> LatticeRow {
    LatticeRow {
        class,
        zero_faces,
        one_faces,
        edges_per_point,
        two_faces,
        nonexposed_points: nonexposed.0,
        nonexposed_bisecants: nonexposed.1,
        isolated_bisecant,
    }
}

use ExtremeSet::{FullCircle as Full, OneArc as Part, TwoArcs};
use FaceShape::{Disc as D, DiscAndPoint as DP};

const EMPTY: LatticeRow = row(1, [Full, Full], "one family parameterized by C1", [1, 1], [Some(D), Some(D)], (0, 0), false);
const ONE_ONE: LatticeRow = row(2, [Full, Part], "one family parameterized by C1", [1, 2], [Some(D), None], (2, 0), false);
const ONE_TWO_TWO_ONE: LatticeRow =
    row(3, [Full, TwoArcs], "two families parameterized by C1", [2, 2], [None, None], (4, 0), false);
const LINKED: LatticeRow = row(
    4,
    [Part, Part],
    "one family parameterized by a 2-fold branched cover of an arc",
    [2, 2],
    [None, None],
    (4, 0),
    false,
);
const ONE_TWO_S: LatticeRow =
    row(5, [Full, Part], "two families parameterized by C1 minus C2", [2, 2], [None, None], (2, 0), false);
const S_S: LatticeRow = row(
    6,
    [Full, Full],
    "four families, two parameterized by each arc of C1 minus C2",
    [2, 2],
    [None, None],
    (0, 0),
    false,
);
const ONE_S: LatticeRow =
    row(7, [Full, Part], "one family parameterized by C1 minus C2", [1, 2], [Some(D), None], (2, 0), false);
const ONE_ONE_TWO: LatticeRow =
    row(8, [Part, Part], "one family parameterized by the arc of C1", [1, 2], [Some(DP), None], (4, 2), false);
const ONE: LatticeRow =
    row(9, [Full, Part], "one family parameterized by the arc on C2", [1, 1], [Some(D), Some(DP)], (2, 2), false);
const ONE_TWO: LatticeRow = row(
    10,
    [Part, Part],
    "one family parameterized by either arc, plus an isolated bisecant",
    [1, 1],
    [Some(DP), Some(DP)],
    (4, 2),
    true,
);
const S: LatticeRow = row(
    11,
    [Full, Full],
    "one family parameterized by either circle except the common point",
    [1, 1],
    [Some(D), Some(D)],
    (0, 0),
    false,
);

/// The combinatorial face lattice of the hull for an order type.
pub fn lattice_row(tag: OrderTag) -> LatticeRow {
    match tag {
        OrderTag::Empty | OrderTag::TwoC => EMPTY,
        OrderTag::OneOne | OrderTag::OneTwoOne => ONE_ONE,
        OrderTag::OneTwoTwoOne => ONE_TWO_TWO_ONE,
        OrderTag::OneOneTwoTwo | OrderTag::OneTwoOneTwo | OrderTag::OneSTwo => LINKED,
        OrderTag::OneTwoS => ONE_TWO_S,
        OrderTag::SS => S_S,
        OrderTag::OneS => ONE_S,
        OrderTag::OneOneTwo => ONE_ONE_TWO,
        OrderTag::One => ONE,
        OrderTag::OneTwo => ONE_TWO,
        OrderTag::S => S,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum TwoFace {
    Disc { circle: usize },
    DiscAndPoint { circle: usize, point: Vec3<f64> },
}

/// Arc of a circle from `start` counterclockwise (in the circle's frame) to `end`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Arc {
    pub circle: usize,
    pub start: f64,
    pub end: f64,
    pub start_point: Vec3<f64>,
    pub end_point: Vec3<f64>,
}

impl Arc {
    pub fn length(&self) -> f64 {
        (self.end - self.start).rem_euclid(TAU)
    }

    pub fn contains(&self, angle: f64) -> bool {
        (angle - self.start).rem_euclid(TAU) <= self.length()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum ExtremePoints {
    Full { circle: usize },
    Arcs(Vec<Arc>),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum Nonexposed {
    Point { circle: usize, point: Vec3<f64> },
    Bisecant(Vec3<f64>, Vec3<f64>),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FaceLatticeDescriptor {
    pub combinatorial_class: usize,
    pub tag: OrderTag,
    pub row: LatticeRow,
    /// Circle indices below refer to the input order.
    pub two_faces: Vec<TwoFace>,
    pub one_face_families: &'static str,
    pub zero_faces: [ExtremePoints; 2],
    pub nonexposed: Vec<Nonexposed>,
    /// Exposed bisecant edge whose endpoints are not exposed.
    pub isolated_bisecant: Option<(Vec3<f64>, Vec3<f64>)>,
}

/// Angular intervals `(center, half_width)` on `d` hidden by the points `xs` of its plane.
fn shadows(d: &Disc, xs: &[Vec3<f64>], tol: f64) -> Vec<(f64, f64)> {
    xs.iter()
        .filter_map(|x| {
            let dist = x.dist(&d.center);
            (dist > d.radius * (1.0 + tol)).then(|| (d.angle_of(x), (d.radius / dist).acos()))
        })
        .filter(|(_, h)| *h > 0.0)
        .collect()
}

/// Complement of a union of open arcs.
fn complement(d: &Disc, circle: usize, sh: &[(f64, f64)]) -> ExtremePoints {
    if sh.is_empty() {
        return ExtremePoints::Full { circle };
    }
    // Merge as intervals on the line starting at the beginning of the first shadow.
    let mut iv: Vec<(f64, f64)> = sh.iter().map(|&(c, h)| ((c - h).rem_euclid(TAU), 2.0 * h)).collect();
    iv.sort_by(|a, b| a.0.total_cmp(&b.0));
    let origin = iv[0].0;
    let mut merged: Vec<(f64, f64)> = Vec::new();
    for (s, len) in iv {
        let a = (s - origin).rem_euclid(TAU);
        let b = a + len;
        match merged.last_mut() {
            Some(last) if a <= last.1 => last.1 = last.1.max(b),
            _ => merged.push((a, b)),
        }
    }
    if merged.last().map_or(false, |l| l.1 >= TAU) {
        let wrap = merged.last().unwrap().1 - TAU;
        merged[0].0 = 0.0;
        if wrap > merged[0].1 {
            merged[0].1 = wrap;
        }
        let last = merged.pop().unwrap();
        if merged.is_empty() {
            merged.push(last);
        }
    }
    let mut arcs = Vec::new();
    for k in 0..merged.len() {
        let end_of_shadow = merged[k].1;
        let next = if k + 1 < merged.len() { merged[k + 1].0 } else { merged[0].0 + TAU };
        if next - end_of_shadow <= 1e-12 {
            continue;
        }
        let start = (origin + end_of_shadow).rem_euclid(TAU);
        let end = (origin + next).rem_euclid(TAU);
        arcs.push(Arc { circle, start, end, start_point: d.point(start), end_point: d.point(end) });
    }
    ExtremePoints::Arcs(arcs)
}

/// Real points of the circle `d` on the plane of `other`.
fn on_plane(d: &Disc, other: &Disc, tol: f64) -> Vec<Vec3<f64>> {
    // height(theta) = h0 + A cos theta + B sin theta
    let h0 = other.height(&d.center);
    let a = d.radius * d.u.dot(&other.normal);
    let b = d.radius * d.v.dot(&other.normal);
    let amp = a.hypot(b);
    if amp <= tol {
        return Vec::new();
    }
    let phase = b.atan2(a);
    let ratio = -h0 / amp;
    if ratio.abs() > 1.0 + tol {
        return Vec::new();
    }
    let delta = ratio.clamp(-1.0, 1.0).acos();
    if delta <= tol.sqrt() * 1e-3 || (PI - delta) <= tol.sqrt() * 1e-3 || (ratio.abs() - 1.0).abs() <= tol {
        return vec![d.point(phase + delta)];
    }
    vec![d.point(phase + delta), d.point(phase - delta)]
}

/// Face lattice of the hull: the static row for the order type together
/// with its realization on the given circles.
pub fn face_lattice<S: Scalar>(ot: &OrderType, c1: &Circle<S>, c2: &Circle<S>) -> Result<FaceLatticeDescriptor, ClassifyError> {
    let (e1, e2) = exact_pair(c1, c2)?;
    if line_data(&e1, &e2).is_err() {
        return Err(ClassifyError::CoplanarCircles);
    }
    let row = lattice_row(ot.tag);
    let discs = [Disc::of(c1), Disc::of(c2)];
    let tol = 1e-9;
    let scale = discs[0].scale() + discs[1].scale();
    let crossing = [on_plane(&discs[0], &discs[1], tol), on_plane(&discs[1], &discs[0], tol)];

    let mut two_faces = Vec::new();
    let mut nonexposed = Vec::new();
    let mut isolated = None;
    let mut zero_faces = Vec::new();
    for i in 0..2 {
        let (d, other) = (&discs[i], &discs[1 - i]);
        let sh = shadows(d, &crossing[1 - i], tol);
        let ext = complement(d, i + 1, &sh);
        if let ExtremePoints::Arcs(arcs) = &ext {
            for a in arcs {
                nonexposed.push(Nonexposed::Point { circle: i + 1, point: a.start_point.clone() });
                nonexposed.push(Nonexposed::Point { circle: i + 1, point: a.end_point.clone() });
            }
        }
        zero_faces.push(ext);
        // A section is a face when the other circle stays on one side.
        if crossing[1 - i].len() == 2 {
            continue;
        }
        let outside: Vec<&Vec3<f64>> =
            crossing[1 - i].iter().filter(|x| x.dist(&d.center) > d.radius * (1.0 + tol)).collect();
        match outside.first() {
            None => two_faces.push(TwoFace::Disc { circle: i + 1 }),
            Some(&t) => {
                two_faces.push(TwoFace::DiscAndPoint { circle: i + 1, point: t.clone() });
                let dist = t.dist(&d.center);
                let half = (d.radius / dist).acos();
                let dir = d.angle_of(t);
                for a in [dir - half, dir + half] {
                    let foot = d.point(a);
                    let along_line = other.height(&foot).abs() <= 1e-9 * scale;
                    if along_line {
                        isolated = Some((foot, t.clone()));
                    } else {
                        nonexposed.push(Nonexposed::Bisecant(foot, t.clone()));
                    }
                }
            }
        }
    }
    let zero_faces: [ExtremePoints; 2] = [zero_faces[0].clone(), zero_faces[1].clone()];
    Ok(FaceLatticeDescriptor {
        combinatorial_class: row.class,
        tag: ot.tag,
        row,
        two_faces,
        one_face_families: row.one_faces,
        zero_faces,
        nonexposed,
        isolated_bisecant: isolated,
    })
}
