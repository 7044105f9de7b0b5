//! Points, planes, lines and circles in 3-space, with circle parametrizations
//! by binary quadratic forms.

use std::ops::{Add, Mul, Neg, Sub};

use num_traits::One;
use serde::Serialize;
use thiserror::Error;

use crate::linalg;
use crate::scalar::{rational_sqrt, snap_within, Rational, Scalar, FLOAT_TOLERANCE};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Geom3Error {
    #[error("circle radius must be positive")]
    NonPositiveRadius,
    #[error("normal vector is zero")]
    ZeroNormal,
    #[error("exact mode needs a rational unit normal; |n|^2 = {0} is not a rational square")]
    IrrationalNormal(String),
    #[error("parameter (0:0) does not name a point")]
    ZeroParameter,
    #[error("planes are identical")]
    IdenticalPlanes,
    #[error("line does not lie in the plane of the circle")]
    LineNotInPlane,
    #[error("the four forms do not span the binary quadratics")]
    DegenerateConic,
    #[error("line direction is zero")]
    ZeroDirection,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Vec3<S> {
    pub x: S,
    pub y: S,
    pub z: S,
}

pub type Point3<S> = Vec3<S>;

impl<S: Scalar> Vec3<S> {
    pub fn new(x: S, y: S, z: S) -> Self {
        Vec3 { x, y, z }
    }

    pub fn zero() -> Self {
        Vec3::new(S::zero(), S::zero(), S::zero())
    }

    /// Standard basis vector `e_i`.
    pub fn basis(i: usize) -> Self {
        let mut c = [S::zero(), S::zero(), S::zero()];
        c[i] = S::one();
        Vec3::from_array(c)
    }

    pub fn from_array([x, y, z]: [S; 3]) -> Self {
        Vec3 { x, y, z }
    }

    pub fn to_array(&self) -> [S; 3] {
        [self.x.clone(), self.y.clone(), self.z.clone()]
    }

    pub fn get(&self, i: usize) -> &S {
        match i {
            0 => &self.x,
            1 => &self.y,
            2 => &self.z,
            _ => panic!("Vec3 index {i} out of range"),
        }
    }

    pub fn dot(&self, o: &Self) -> S {
        self.x.clone() * o.x.clone() + self.y.clone() * o.y.clone() + self.z.clone() * o.z.clone()
    }

    pub fn cross(&self, o: &Self) -> Self {
        Vec3::new(
            self.y.clone() * o.z.clone() - self.z.clone() * o.y.clone(),
            self.z.clone() * o.x.clone() - self.x.clone() * o.z.clone(),
            self.x.clone() * o.y.clone() - self.y.clone() * o.x.clone(),
        )
    }

    pub fn norm2(&self) -> S {
        self.dot(self)
    }

    pub fn scale(&self, k: &S) -> Self {
        Vec3::new(self.x.clone() * k.clone(), self.y.clone() * k.clone(), self.z.clone() * k.clone())
    }

    pub fn is_negligible(&self) -> bool {
        if S::EXACT {
            self.x.is_zero() && self.y.is_zero() && self.z.is_zero()
        } else {
            self.norm2().to_f64().sqrt() <= FLOAT_TOLERANCE
        }
    }

    pub fn to_f64(&self) -> Vec3<f64> {
        Vec3::new(self.x.to_f64(), self.y.to_f64(), self.z.to_f64())
    }

    pub fn to_rational(&self) -> Vec3<Rational> {
        Vec3::new(self.x.to_rational(), self.y.to_rational(), self.z.to_rational())
    }

    pub fn from_rational(v: &Vec3<Rational>) -> Self {
        Vec3::new(S::from_rational(&v.x), S::from_rational(&v.y), S::from_rational(&v.z))
    }
}

impl Vec3<f64> {
    pub fn norm(&self) -> f64 {
        self.norm2().sqrt()
    }

    pub fn normalized(&self) -> Vec3<f64> {
        let n = self.norm();
        Vec3::new(self.x / n, self.y / n, self.z / n)
    }

    pub fn dist(&self, o: &Self) -> f64 {
        (self - o).norm()
    }
}

impl<S: Scalar> Add for &Vec3<S> {
    type Output = Vec3<S>;
    fn add(self, o: &Vec3<S>) -> Vec3<S> {
        Vec3::new(self.x.clone() + o.x.clone(), self.y.clone() + o.y.clone(), self.z.clone() + o.z.clone())
    }
}

impl<S: Scalar> Sub for &Vec3<S> {
    type Output = Vec3<S>;
    fn sub(self, o: &Vec3<S>) -> Vec3<S> {
        Vec3::new(self.x.clone() - o.x.clone(), self.y.clone() - o.y.clone(), self.z.clone() - o.z.clone())
    }
}

impl<S: Scalar> Neg for &Vec3<S> {
    type Output = Vec3<S>;
    fn neg(self) -> Vec3<S> {
        Vec3::new(-self.x.clone(), -self.y.clone(), -self.z.clone())
    }
}

impl<S: Scalar> Mul<&S> for &Vec3<S> {
    type Output = Vec3<S>;
    fn mul(self, k: &S) -> Vec3<S> {
        self.scale(k)
    }
}

/// The plane `normal . x = offset`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Plane<S> {
    pub normal: Vec3<S>,
    pub offset: S,
}

impl<S: Scalar> Plane<S> {
    pub fn new(normal: Vec3<S>, offset: S) -> Result<Self, Geom3Error> {
        if normal.is_negligible() {
            return Err(Geom3Error::ZeroNormal);
        }
        Ok(Plane { normal, offset })
    }

    pub fn through(point: &Point3<S>, normal: Vec3<S>) -> Result<Self, Geom3Error> {
        let offset = normal.dot(point);
        Plane::new(normal, offset)
    }

    /// `normal . x - offset`; zero on the plane.
    pub fn eval(&self, x: &Point3<S>) -> S {
        self.normal.dot(x) - self.offset.clone()
    }

    pub fn contains(&self, x: &Point3<S>) -> bool {
        self.eval(x).is_negligible()
    }

    pub fn to_f64(&self) -> Plane<f64> {
        Plane { normal: self.normal.to_f64(), offset: self.offset.to_f64() }
    }
}

/// A line `base + tau * direction`. For a line at infinity `base` is unused
/// (zero) and `direction` is the common normal of the parallel planes whose
/// points at infinity it collects.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Line<S> {
    pub base: Point3<S>,
    pub direction: Vec3<S>,
    pub at_infinity: bool,
}

impl<S: Scalar> Line<S> {
    pub fn new(base: Point3<S>, direction: Vec3<S>) -> Result<Self, Geom3Error> {
        if direction.is_negligible() {
            return Err(Geom3Error::ZeroDirection);
        }
        Ok(Line { base, direction, at_infinity: false })
    }

    pub fn through(p: &Point3<S>, q: &Point3<S>) -> Result<Self, Geom3Error> {
        Line::new(p.clone(), q - p)
    }

    pub fn at(&self, tau: &S) -> Point3<S> {
        &self.base + &self.direction.scale(tau)
    }

    pub fn to_f64(&self) -> Line<f64> {
        Line {
            base: self.base.to_f64(),
            direction: self.direction.to_f64(),
            at_infinity: self.at_infinity,
        }
    }
}

/// Circle with unit normal.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Circle<S> {
    pub center: Point3<S>,
    pub radius: S,
    pub normal: Vec3<S>,
}

impl<S: Scalar> Circle<S> {
    /// Normalises `normal`; in exact mode `|normal|^2` must be a rational square.
    pub fn new(center: Point3<S>, radius: S, normal: Vec3<S>) -> Result<Self, Geom3Error> {
        if radius <= S::zero() || radius.is_negligible() {
            return Err(Geom3Error::NonPositiveRadius);
        }
        if normal.is_negligible() {
            return Err(Geom3Error::ZeroNormal);
        }
        let n2 = normal.norm2();
        let len = n2.sqrt_checked().ok_or_else(|| Geom3Error::IrrationalNormal(format!("{n2:?}")))?;
        let normal = normal.scale(&(S::one() / len));
        Ok(Circle { center, radius, normal })
    }

    pub fn plane(&self) -> Plane<S> {
        Plane { normal: self.normal.clone(), offset: self.normal.dot(&self.center) }
    }

    pub fn to_f64(&self) -> Circle<f64> {
        Circle {
            center: self.center.to_f64(),
            radius: self.radius.to_f64(),
            normal: self.normal.to_f64(),
        }
    }

    /// Orthonormal in-plane frame `(u, v)` with `u x v = normal`.
    ///
    /// `u` is the Gram-Schmidt completion against the first standard basis
    /// vector not parallel to the normal. When that vector has irrational
    /// length in exact mode, the frame is the image of `(e1, e2)` under the
    /// reflection taking `e3` to the normal (with `v` negated).
    pub fn frame(&self) -> (Vec3<S>, Vec3<S>) {
        let n = &self.normal;
        let e = (0..3)
            .map(Vec3::<S>::basis)
            .find(|e| !n.cross(e).is_negligible())
            .expect("a unit vector is parallel to at most one axis");
        let w = &e - &n.scale(&e.dot(n));
        let w2 = w.norm2();
        if let Some(len) = if S::EXACT { rational_sqrt(&w2.to_rational()).map(|q| S::from_rational(&q)) } else { w2.sqrt_checked() } {
            let u = w.scale(&(S::one() / len));
            let v = n.cross(&u);
            return (u, v);
        }
        let e3 = Vec3::<S>::basis(2);
        let h = n - &e3;
        let h2 = h.norm2();
        let two = S::from_i64(2);
        let reflect = |x: &Vec3<S>| -> Vec3<S> { x - &h.scale(&(two.clone() * h.dot(x) / h2.clone())) };
        let u = reflect(&Vec3::basis(0));
        let v = -&reflect(&Vec3::basis(1));
        (u, v)
    }

    /// Exact copy; float data is snapped to nearby rationals first.
    pub fn exact(&self) -> Result<Circle<Rational>, Geom3Error> {
        if S::EXACT {
            return Ok(Circle {
                center: self.center.to_rational(),
                radius: self.radius.to_rational(),
                normal: self.normal.to_rational(),
            });
        }
        self.to_f64().to_exact(FLOAT_TOLERANCE)
    }

    /// Point at angle `theta` measured from `u` towards `v`.
    pub fn point_at_angle(&self, theta: f64) -> Vec3<f64> {
        let (u, v) = self.frame();
        let c = self.center.to_f64();
        let r = self.radius.to_f64();
        let (u, v) = (u.to_f64(), v.to_f64());
        &(&c + &u.scale(&(r * theta.cos()))) + &v.scale(&(r * theta.sin()))
    }
}

impl Circle<f64> {
    /// Nearby circle with rational data. Coordinates are snapped to the
    /// simplest rationals within `tol`; the normal is kept an exact unit
    /// vector by snapping its stereographic coordinates.
    pub fn to_exact(&self, tol: f64) -> Result<Circle<Rational>, Geom3Error> {
        let center = Vec3::new(
            snap_within(self.center.x, tol),
            snap_within(self.center.y, tol),
            snap_within(self.center.z, tol),
        );
        let radius = snap_within(self.radius, tol);
        let n = self.normal.normalized();
        let direct = Vec3::new(snap_within(n.x, tol), snap_within(n.y, tol), snap_within(n.z, tol));
        if rational_sqrt(&direct.norm2()).is_some() {
            return Circle::new(center, radius, direct);
        }
        // Stereographic projection from the pole opposite the dominant sign of z.
        let flip = n.z < 0.0;
        let nz = if flip { -n.z } else { n.z };
        let a = snap_within(n.x / (1.0 + nz), tol * 0.25);
        let b = snap_within(n.y / (1.0 + nz), tol * 0.25);
        let two = Rational::from_integer(2.into());
        let d = Rational::one() + &a * &a + &b * &b;
        let mut z = (Rational::one() - &a * &a - &b * &b) / &d;
        if flip {
            z = -z;
        }
        let normal = Vec3::new(&two * &a / &d, &two * &b / &d, z);
        Circle::new(center, radius, normal)
    }
}

/// Four binary quadratic forms; `forms[k] = [a, b, c]` is `a s^2 + b s t + c t^2`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ParametrizedConic<S> {
    pub forms: [[S; 3]; 4],
}

impl<S: Scalar> ParametrizedConic<S> {
    pub fn new(forms: [[S; 3]; 4]) -> Result<Self, Geom3Error> {
        let pc = ParametrizedConic { forms };
        let m: Vec<Vec<Rational>> = pc
            .forms
            .iter()
            .map(|f| f.iter().map(Scalar::to_rational).collect())
            .collect();
        if linalg::rank(&m) != 3 {
            return Err(Geom3Error::DegenerateConic);
        }
        Ok(pc)
    }

    pub fn from_i64(forms: [[i64; 3]; 4]) -> Result<Self, Geom3Error> {
        ParametrizedConic::new(forms.map(|f| f.map(S::from_i64)))
    }

    /// Homogeneous point `[X0 : X1 : X2 : X3]`.
    pub fn eval(&self, s: &S, t: &S) -> [S; 4] {
        let (ss, st, tt) = (s.clone() * s.clone(), s.clone() * t.clone(), t.clone() * t.clone());
        self.forms.clone().map(|[a, b, c]| a * ss.clone() + b * st.clone() + c * tt.clone())
    }

    pub fn d_s(&self, s: &S, t: &S) -> [S; 4] {
        let two = S::from_i64(2);
        self.forms
            .clone()
            .map(|[a, b, _]| two.clone() * a * s.clone() + b * t.clone())
    }

    pub fn d_t(&self, s: &S, t: &S) -> [S; 4] {
        let two = S::from_i64(2);
        self.forms
            .clone()
            .map(|[_, b, c]| b * s.clone() + two.clone() * c * t.clone())
    }

    pub fn affine_point(&self, s: &S, t: &S) -> Option<Point3<S>> {
        homogeneous_to_affine(&self.eval(s, t))
    }

    /// Coefficients `l` with `sum l_k f_k = 0`: the plane
    /// `l0 + l1 x + l2 y + l3 z = 0` of the conic.
    pub fn plane_relation(&self) -> [Rational; 4] {
        let cols: Vec<Vec<Rational>> = (0..3)
            .map(|j| self.forms.iter().map(|f| f[j].to_rational()).collect())
            .collect();
        let ns = linalg::nullspace(&cols, 4);
        let v = ns.into_iter().next().expect("rank 3 conic has a one-dimensional relation");
        [v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone()]
    }

    pub fn to_f64(&self) -> ParametrizedConic<f64> {
        ParametrizedConic { forms: self.forms.clone().map(|f| f.map(|c| c.to_f64())) }
    }

    pub fn to_rational(&self) -> ParametrizedConic<Rational> {
        ParametrizedConic { forms: self.forms.clone().map(|f| f.map(|c| c.to_rational())) }
    }
}

pub fn homogeneous_to_affine<S: Scalar>(p: &[S; 4]) -> Option<Point3<S>> {
    if p[0].is_negligible() {
        return None;
    }
    let w = p[0].clone();
    Some(Vec3::new(p[1].clone() / w.clone(), p[2].clone() / w.clone(), p[3].clone() / w))
}

/// `[s^2 + t^2, center (s^2 + t^2) + r ((s^2 - t^2) u + 2 s t v)]` with the
/// frame of [`Circle::frame`].
pub fn circle_parametrization<S: Scalar>(c: &Circle<S>) -> ParametrizedConic<S> {
    let (u, v) = c.frame();
    circle_parametrization_with_frame(c, &u, &v)
}

pub fn circle_parametrization_with_frame<S: Scalar>(
    c: &Circle<S>,
    u: &Vec3<S>,
    v: &Vec3<S>,
) -> ParametrizedConic<S> {
    let r = &c.radius;
    let two = S::from_i64(2);
    let coord = |k: usize| {
        let ck = c.center.get(k).clone();
        let ru = r.clone() * u.get(k).clone();
        [ck.clone() + ru.clone(), two.clone() * r.clone() * v.get(k).clone(), ck - ru]
    };
    ParametrizedConic { forms: [[S::one(), S::zero(), S::one()], coord(0), coord(1), coord(2)] }
}

/// Parameter `(s, t) = (cos(theta/2), sin(theta/2))` of the point at angle `theta`.
pub fn angle_to_param(theta: f64) -> (f64, f64) {
    ((theta / 2.0).cos(), (theta / 2.0).sin())
}

/// Inverse of [`angle_to_param`], in `[0, 2 pi)`.
pub fn param_to_angle(s: f64, t: f64) -> f64 {
    let a = (2.0 * s * t).atan2(s * s - t * t);
    if a < 0.0 {
        a + std::f64::consts::TAU
    } else {
        a
    }
}

/// Tangent line spanned by `d/ds f` and `d/dt f` at `(s:t)`.
pub fn tangent_line<S: Scalar>(pc: &ParametrizedConic<S>, s: &S, t: &S) -> Result<Line<S>, Geom3Error> {
    if s.is_zero() && t.is_zero() {
        return Err(Geom3Error::ZeroParameter);
    }
    let p = pc.d_s(s, t);
    let q = pc.d_t(s, t);
    line_through_homogeneous(&p, &q)
}

/// The line spanned by two homogeneous points.
pub fn line_through_homogeneous<S: Scalar>(p: &[S; 4], q: &[S; 4]) -> Result<Line<S>, Geom3Error> {
    let pa = Vec3::new(p[1].clone(), p[2].clone(), p[3].clone());
    let qa = Vec3::new(q[1].clone(), q[2].clone(), q[3].clone());
    if p[0].is_negligible() && q[0].is_negligible() {
        let n = pa.cross(&qa);
        if n.is_negligible() {
            return Err(Geom3Error::ZeroDirection);
        }
        return Ok(Line { base: Vec3::zero(), direction: n, at_infinity: true });
    }
    let dir = &pa.scale(&q[0]) - &qa.scale(&p[0]);
    let base = if p[0].abs() >= q[0].abs() {
        pa.scale(&(S::one() / p[0].clone()))
    } else {
        qa.scale(&(S::one() / q[0].clone()))
    };
    Line::new(base, dir)
}

/// `l = p1 n p2`; parallel distinct planes give the line at infinity.
pub fn plane_intersection<S: Scalar>(p1: &Plane<S>, p2: &Plane<S>) -> Result<Line<S>, Geom3Error> {
    let (n1, n2) = (&p1.normal, &p2.normal);
    let d = n1.cross(n2);
    if d.is_negligible() {
        // n1 = k n2; identical iff offsets scale the same way.
        let k = n1.dot(n2) / n2.norm2();
        if (p1.offset.clone() - k * p2.offset.clone()).is_negligible() {
            return Err(Geom3Error::IdenticalPlanes);
        }
        return Ok(Line { base: Vec3::zero(), direction: n1.clone(), at_infinity: true });
    }
    let n11 = n1.norm2();
    let n22 = n2.norm2();
    let n12 = n1.dot(n2);
    let d2 = d.norm2();
    let a = (p1.offset.clone() * n22 - p2.offset.clone() * n12.clone()) / d2.clone();
    let b = (p2.offset.clone() * n11 - p1.offset.clone() * n12) / d2;
    let base = &n1.scale(&a) + &n2.scale(&b);
    Line::new(base, d)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum RootKind {
    TwoReal,
    Tangent,
    ComplexPair,
    /// The line at infinity of the circle's plane meets it in the two circular points.
    CircularPoints,
}

/// `q(tau) = |base + tau d - center|^2 - r^2 = a tau^2 + b tau + c` and its roots.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RootClassification<S> {
    /// `[c, b, a]`, ascending powers of `tau`.
    pub quadratic: [S; 3],
    /// `b^2 - 4 a c`
    pub discriminant: S,
    pub kind: RootKind,
    /// Real roots in the line parameter, ascending, repeated by multiplicity.
    pub roots: Vec<f64>,
    /// Present when the roots are rational.
    pub exact_roots: Option<Vec<Rational>>,
    pub multiplicity: Vec<usize>,
}

pub fn circle_line_roots<S: Scalar>(c: &Circle<S>, l: &Line<S>) -> Result<RootClassification<S>, Geom3Error> {
    let plane = c.plane();
    if l.at_infinity {
        if !c.normal.cross(&l.direction).is_negligible() {
            return Err(Geom3Error::LineNotInPlane);
        }
        return Ok(RootClassification {
            quadratic: [S::zero(), S::zero(), S::zero()],
            discriminant: S::zero(),
            kind: RootKind::CircularPoints,
            roots: Vec::new(),
            exact_roots: None,
            multiplicity: vec![1, 1],
        });
    }
    let dn = c.normal.dot(&l.direction);
    if !dn.is_negligible() || !plane.eval(&l.base).is_negligible() {
        return Err(Geom3Error::LineNotInPlane);
    }
    let bc = &l.base - &c.center;
    let a = l.direction.norm2();
    let b = S::from_i64(2) * l.direction.dot(&bc);
    let cc = bc.norm2() - c.radius.clone() * c.radius.clone();
    let disc = b.clone() * b.clone() - S::from_i64(4) * a.clone() * cc.clone();
    let two_a = S::from_i64(2) * a.clone();
    let (kind, roots, exact_roots, multiplicity) = if disc.is_negligible() {
        let r = -b.clone() / two_a;
        let ex = S::EXACT.then(|| vec![r.to_rational(), r.to_rational()]);
        (RootKind::Tangent, vec![r.to_f64(), r.to_f64()], ex, vec![2])
    } else if disc < S::zero() {
        (RootKind::ComplexPair, Vec::new(), None, vec![1, 1])
    } else {
        let ex = if S::EXACT {
            rational_sqrt(&disc.to_rational()).map(|sq| {
                let (bq, aq) = (b.to_rational(), two_a.to_rational());
                let mut v = vec![(-&bq - &sq) / &aq, (-&bq + &sq) / &aq];
                v.sort();
                v
            })
        } else {
            None
        };
        let roots = match &ex {
            Some(v) => v.iter().map(Scalar::to_f64).collect(),
            None => {
                let z = crate::poly::quadratic_roots(cc.to_f64(), b.to_f64(), a.to_f64());
                let mut v = vec![z[0].re, z[1].re];
                v.sort_by(f64::total_cmp);
                v
            }
        };
        (RootKind::TwoReal, roots, ex, vec![1, 1])
    };
    Ok(RootClassification { quadratic: [cc, b, a], discriminant: disc, kind, roots, exact_roots, multiplicity })
}
