use std::cmp::Ordering;
use std::fmt;

use num_traits::{Signed, Zero};
use serde::Serialize;

use super::ClassifyError;
use crate::geom3::{circle_line_roots, plane_intersection, Circle, Geom3Error, Line, RootClassification, RootKind};
use crate::poly::Poly;
use crate::scalar::{Rational, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum OrderTag {
    Empty,
    TwoC,
    One,
    OneOne,
    OneTwo,
    S,
    OneOneTwo,
    OneTwoOne,
    OneS,
    OneOneTwoTwo,
    OneTwoOneTwo,
    OneTwoTwoOne,
    OneTwoS,
    OneSTwo,
    SS,
}

impl OrderTag {
    pub const ALL: [OrderTag; 15] = [
        OrderTag::Empty,
        OrderTag::TwoC,
        OrderTag::One,
        OrderTag::OneOne,
        OrderTag::OneTwo,
        OrderTag::S,
        OrderTag::OneOneTwo,
        OrderTag::OneTwoOne,
        OrderTag::OneS,
        OrderTag::OneOneTwoTwo,
        OrderTag::OneTwoOneTwo,
        OrderTag::OneTwoTwoOne,
        OrderTag::OneTwoS,
        OrderTag::OneSTwo,
        OrderTag::SS,
    ];

    pub fn label(self) -> &'static str {
        match self {
            OrderTag::Empty => "∅",
            OrderTag::TwoC => "(2c)",
            OrderTag::One => "(1)",
            OrderTag::OneOne => "(1,1)",
            OrderTag::OneTwo => "(1,2)",
            OrderTag::S => "(S)",
            OrderTag::OneOneTwo => "(1,1,2)",
            OrderTag::OneTwoOne => "(1,2,1)",
            OrderTag::OneS => "(1,S)",
            OrderTag::OneOneTwoTwo => "(1,1,2,2)",
            OrderTag::OneTwoOneTwo => "(1,2,1,2)",
            OrderTag::OneTwoTwoOne => "(1,2,2,1)",
            OrderTag::OneTwoS => "(1,2,S)",
            OrderTag::OneSTwo => "(1,S,2)",
            OrderTag::SS => "(S,S)",
        }
    }

    pub fn from_label(s: &str) -> Option<OrderTag> {
        let s = s.trim();
        let s = if s == "()" || s.eq_ignore_ascii_case("empty") { "∅" } else { s };
        OrderTag::ALL.into_iter().find(|t| t.label() == s || t.label().replace(',', ", ") == s)
    }

    /// `[m1, m2]` read off the labels: each `S` counts for both circles.
    pub fn intersection_type(self) -> IntersectionType {
        let label = self.label();
        if matches!(self, OrderTag::Empty | OrderTag::TwoC) {
            return IntersectionType { m1: 0, m2: 0 };
        }
        let items: Vec<&str> = label.trim_matches(|c| c == '(' || c == ')').split(',').collect();
        let count = |x: &str| items.iter().filter(|i| **i == x).count();
        IntersectionType { m1: count("1") + count("S"), m2: count("2") + count("S") }
    }
}

impl fmt::Display for OrderTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Real point counts `[m1, m2]` of each circle on the other plane, `m1 >= m2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct IntersectionType {
    pub m1: usize,
    pub m2: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PointLabel {
    One,
    Two,
    Shared,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LinePoint {
    pub label: PointLabel,
    /// Parameter along `line`.
    pub position: f64,
    pub exact: Option<Rational>,
    /// 2 where the circle is tangent to the line.
    pub multiplicity: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OrderType {
    pub tag: OrderTag,
    /// Labels refer to the relabelled circles: `One` is the input's second
    /// circle when `swapped`.
    pub points: Vec<LinePoint>,
    pub swapped: bool,
    /// `l`, absent for parallel planes.
    pub line: Option<Line<f64>>,
}

pub(crate) struct LineData {
    pub line: Line<Rational>,
    pub q: [Poly<Rational>; 2],
    pub kinds: [RootKind; 2],
    pub roots: [RootClassification<Rational>; 2],
}

/// `None` for parallel planes.
pub(crate) fn line_data(c1: &Circle<Rational>, c2: &Circle<Rational>) -> Result<Option<LineData>, ClassifyError> {
    let line = match plane_intersection(&c1.plane(), &c2.plane()) {
        Ok(l) => l,
        Err(Geom3Error::IdenticalPlanes) => return Err(ClassifyError::CoplanarCircles),
        Err(e) => return Err(ClassifyError::Geometry(e)),
    };
    if line.at_infinity {
        return Ok(None);
    }
    let r1 = circle_line_roots(c1, &line).map_err(ClassifyError::Geometry)?;
    let r2 = circle_line_roots(c2, &line).map_err(ClassifyError::Geometry)?;
    let q = [Poly::new(r1.quadratic.to_vec()), Poly::new(r2.quadratic.to_vec())];
    Ok(Some(LineData { line, q, kinds: [r1.kind, r2.kind], roots: [r1, r2] }))
}

fn real_count(k: RootKind) -> usize {
    match k {
        RootKind::TwoReal => 2,
        RootKind::Tangent => 1,
        _ => 0,
    }
}

pub(crate) fn exact_pair<S: Scalar>(c1: &Circle<S>, c2: &Circle<S>) -> Result<(Circle<Rational>, Circle<Rational>), ClassifyError> {
    Ok((c1.exact().map_err(ClassifyError::Geometry)?, c2.exact().map_err(ClassifyError::Geometry)?))
}

pub fn intersection_type<S: Scalar>(c1: &Circle<S>, c2: &Circle<S>) -> Result<IntersectionType, ClassifyError> {
    let (e1, e2) = exact_pair(c1, c2)?;
    let Some(d) = line_data(&e1, &e2)? else { return Ok(IntersectionType { m1: 0, m2: 0 }) };
    let (a, b) = (real_count(d.kinds[0]), real_count(d.kinds[1]));
    Ok(IntersectionType { m1: a.max(b), m2: a.min(b) })
}

/// Value of `q` at the root(s) of `r` through the symmetric functions of
/// those roots: `(q(y1) + q(y2), q(y1) q(y2))`.
fn sum_product_at_roots(q: &Poly<Rational>, r: &Poly<Rational>) -> (Rational, Rational) {
    let (c, b, a) = (q.coeff(0), q.coeff(1), q.coeff(2));
    let e1 = -r.coeff(1) / r.coeff(2);
    let e2 = r.coeff(0) / r.coeff(2);
    let two = Rational::from_integer(2.into());
    let p2 = &e1 * &e1 - &two * &e2;
    let sum = &a * &p2 + &b * &e1 + &two * &c;
    let prod = &a * &a * &e2 * &e2 + &a * &b * &e1 * &e2 + &a * &c * &p2 + &b * &b * &e2 + &b * &c * &e1 + &c * &c;
    (sum, prod)
}

fn proportional(p: &Poly<Rational>, q: &Poly<Rational>) -> bool {
    (0..3).all(|i| (0..3).all(|j| p.coeff(i) * q.coeff(j) == p.coeff(j) * q.coeff(i)))
}

fn double_root(q: &Poly<Rational>) -> Rational {
    -q.coeff(1) / (Rational::from_integer(2.into()) * q.coeff(2))
}

/// Order of the real points of the two circles along `l = P1 n P2`,
/// with shared points decided exactly.
pub fn order_type<S: Scalar>(c1: &Circle<S>, c2: &Circle<S>) -> Result<OrderType, ClassifyError> {
    let (e1, e2) = exact_pair(c1, c2)?;
    let Some(d) = line_data(&e1, &e2)? else {
        return Ok(OrderType { tag: OrderTag::TwoC, points: Vec::new(), swapped: false, line: None });
    };
    let m = [real_count(d.kinds[0]), real_count(d.kinds[1])];
    let mut swapped = m[1] > m[0];
    let (i1, i2) = if swapped { (1, 0) } else { (0, 1) };
    let (q1, q2) = (&d.q[i1], &d.q[i2]);
    let tag = match (m[i1], m[i2]) {
        (0, 0) => {
            if proportional(q1, q2) {
                OrderTag::TwoC
            } else {
                OrderTag::Empty
            }
        }
        (1, 0) => OrderTag::One,
        (2, 0) => OrderTag::OneOne,
        (1, 1) => {
            if double_root(q1) == double_root(q2) {
                OrderTag::S
            } else {
                OrderTag::OneTwo
            }
        }
        (2, 1) => match q1.eval(&double_root(q2)).cmp(&Rational::zero()) {
            Ordering::Greater => OrderTag::OneOneTwo,
            Ordering::Equal => OrderTag::OneS,
            Ordering::Less => OrderTag::OneTwoOne,
        },
        _ => {
            let g = q1.gcd(q2);
            match g.degree().unwrap_or(0) {
                2 => OrderTag::SS,
                1 => {
                    let s = -g.coeff(0) / g.coeff(1);
                    let x1 = -q1.coeff(1) / q1.coeff(2) - &s;
                    let x2 = -q2.coeff(1) / q2.coeff(2) - &s;
                    if (&x1 - &s).signum() != (&x2 - &s).signum() {
                        OrderTag::OneSTwo
                    } else {
                        if (&x2 - &s).abs() > (&x1 - &s).abs() {
                            swapped = !swapped;
                        }
                        OrderTag::OneTwoS
                    }
                }
                _ => {
                    let (sum, prod) = sum_product_at_roots(q1, q2);
                    if prod < Rational::zero() {
                        OrderTag::OneTwoOneTwo
                    } else if sum < Rational::zero() {
                        OrderTag::OneTwoTwoOne
                    } else if sum_product_at_roots(q2, q1).0 < Rational::zero() {
                        swapped = !swapped;
                        OrderTag::OneTwoTwoOne
                    } else {
                        OrderTag::OneOneTwoTwo
                    }
                }
            }
        }
    };
    let points = line_points(&d, swapped);
    Ok(OrderType { tag, points, swapped, line: Some(d.line.to_f64()) })
}

fn line_points(d: &LineData, swapped: bool) -> Vec<LinePoint> {
    let common = d.q[0].gcd(&d.q[1]).degree().unwrap_or(0) > 0;
    let labels = if swapped { [PointLabel::Two, PointLabel::One] } else { [PointLabel::One, PointLabel::Two] };
    let mut pts: Vec<LinePoint> = Vec::new();
    for (k, r) in d.roots.iter().enumerate() {
        let mult = if r.kind == RootKind::Tangent { 2 } else { 1 };
        let mut vals: Vec<(f64, Option<Rational>)> = match &r.exact_roots {
            Some(ex) => ex.iter().map(|q| (q.to_f64(), Some(q.clone()))).collect(),
            None => r.roots.iter().map(|&x| (x, None)).collect(),
        };
        if mult == 2 {
            vals.truncate(1);
        }
        for (position, exact) in vals {
            let shared = pts.iter_mut().find(|p| match (&p.exact, &exact) {
                (Some(a), Some(b)) => a == b,
                _ => common && (p.position - position).abs() <= 1e-9 * (1.0 + position.abs()),
            });
            match shared {
                Some(p) => p.label = PointLabel::Shared,
                None => pts.push(LinePoint { label: labels[k], position, exact, multiplicity: mult }),
            }
        }
    }
    pts.sort_by(|a, b| a.position.total_cmp(&b.position));
    pts
}
