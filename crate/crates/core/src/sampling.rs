//! Random rational circle pairs for fuzzing, including configurations where
//! the circles meet or touch the other plane.

use rand::Rng;

use crate::geom3::{Circle, Plane, Vec3};
use crate::scalar::{rint, Rational};

fn small_fraction<R: Rng>(rng: &mut R, max: i64, den: i64) -> Rational {
    Rational::new(rng.gen_range(-max..=max).into(), rng.gen_range(1..=den).into())
}

/// `(1 - a^2) x + 2 a y` over `1 + a^2`: a rational rotation of `x` towards `y`.
fn rotate(x: &Vec3<Rational>, y: &Vec3<Rational>, a: &Rational) -> Vec3<Rational> {
    let d = rint(1) + a * a;
    &x.scale(&((rint(1) - a * a) / &d)) + &y.scale(&(rint(2) * a / &d))
}

/// Rational unit vector from a rational point of the sphere.
pub fn random_unit<R: Rng>(rng: &mut R) -> Vec3<Rational> {
    loop {
        let a = small_fraction(rng, 12, 6);
        let b = small_fraction(rng, 12, 6);
        let d = rint(1) + &a * &a + &b * &b;
        let v = Vec3::new(rint(2) * &a / &d, rint(2) * &b / &d, (rint(1) - &a * &a - &b * &b) / &d);
        let v = if rng.gen_bool(0.5) { v } else { -&v };
        if v.to_array().iter().all(|x| x.numer().bits() < 40) {
            return v;
        }
    }
}

fn quarter<R: Rng>(rng: &mut R, range: i64) -> Rational {
    Rational::new(rng.gen_range(-range * 4..=range * 4).into(), 4.into())
}

fn radius<R: Rng>(rng: &mut R) -> Rational {
    Rational::new(rng.gen_range(1..=12).into(), 4.into())
}

pub fn random_circle<R: Rng>(rng: &mut R) -> Circle<Rational> {
    let c = Vec3::new(quarter(rng, 3), quarter(rng, 3), quarter(rng, 3));
    Circle::new(c, radius(rng), random_unit(rng)).expect("unit normal and positive radius")
}

/// Rational point and unit tangent of `c` at a rational parameter.
fn point_and_tangent<R: Rng>(rng: &mut R, c: &Circle<Rational>) -> (Vec3<Rational>, Vec3<Rational>) {
    let (u, v) = c.frame();
    let a = small_fraction(rng, 6, 4);
    let radial = rotate(&u, &v, &a);
    let p = &c.center + &radial.scale(&c.radius);
    (p, c.normal.cross(&radial))
}

/// Circle through `p` with tangent `d` there, in a random plane containing
/// that tangent line.
fn circle_tangent_to<R: Rng>(rng: &mut R, p: &Vec3<Rational>, d: &Vec3<Rational>, n: &Vec3<Rational>) -> Circle<Rational> {
    let side = d.cross(n);
    let n2 = rotate(n, &side, &small_fraction(rng, 6, 4));
    let e = d.cross(&n2);
    let r = radius(rng);
    let e = if rng.gen_bool(0.5) { e } else { -&e };
    Circle::new(p + &e.scale(&r), r, n2).expect("unit normal and positive radius")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairKind {
    Generic,
    /// The circles share a point.
    SharedPoint,
    /// The second circle touches the first plane.
    TouchingPlane,
    /// The circles are tangent at a common point.
    Tangent,
}

pub fn random_pair_of_kind<R: Rng>(rng: &mut R, kind: PairKind) -> (Circle<Rational>, Circle<Rational>) {
    loop {
        let c1 = random_circle(rng);
        let c2 = match kind {
            PairKind::Generic => random_circle(rng),
            PairKind::SharedPoint => {
                let (p, _) = point_and_tangent(rng, &c1);
                let n = random_unit(rng);
                let t = Circle::new(p.clone(), rint(1), n.clone()).expect("unit normal").frame().0;
                circle_tangent_to(rng, &p, &t, &n.cross(&t))
            }
            PairKind::TouchingPlane => {
                let (u, v) = c1.frame();
                let p = &(&c1.center + &u.scale(&quarter(rng, 3))) + &v.scale(&quarter(rng, 3));
                let d = rotate(&u, &v, &small_fraction(rng, 6, 4));
                circle_tangent_to(rng, &p, &d, &c1.normal)
            }
            PairKind::Tangent => {
                let (p, d) = point_and_tangent(rng, &c1);
                circle_tangent_to(rng, &p, &d, &c1.normal)
            }
        };
        if distinct_planes(&c1.plane(), &c2.plane()) {
            return (c1, c2);
        }
    }
}

fn distinct_planes(a: &Plane<Rational>, b: &Plane<Rational>) -> bool {
    let neg = Plane { normal: -&b.normal, offset: -b.offset.clone() };
    *a != *b && *a != neg
}

/// Mix of generic and special pairs: one in four of each kind.
pub fn random_pair<R: Rng>(rng: &mut R) -> (Circle<Rational>, Circle<Rational>) {
    let kind = match rng.gen_range(0..4) {
        0 => PairKind::Generic,
        1 => PairKind::SharedPoint,
        2 => PairKind::TouchingPlane,
        _ => PairKind::Tangent,
    };
    random_pair_of_kind(rng, kind)
}
