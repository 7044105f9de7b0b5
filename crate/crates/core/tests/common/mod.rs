#![allow(dead_code)]

use bicircle::scalar::{parse_rational, rint};
use bicircle::{Circle, ParametrizedConic, Rational, Vec3};
use rand::Rng;
use serde_json::Value;

pub fn q(text: &str) -> Rational {
    parse_rational(text).unwrap_or_else(|| panic!("bad rational {text}"))
}

pub fn qv(x: &str, y: &str, z: &str) -> Vec3<Rational> {
    Vec3::new(q(x), q(y), q(z))
}

pub fn circle(center: [&str; 3], radius: &str, normal: [&str; 3]) -> Circle<Rational> {
    Circle::new(qv(center[0], center[1], center[2]), q(radius), qv(normal[0], normal[1], normal[2])).unwrap()
}

/// Unit circle at the origin in the xy-plane and the unit circle at (3,0,0) in the xz-plane.
pub fn unlinked() -> (Circle<Rational>, Circle<Rational>) {
    (circle(["0", "0", "0"], "1", ["0", "0", "1"]), circle(["3", "0", "0"], "1", ["0", "1", "0"]))
}

/// The explicit quadruples for the unlinked pair.
pub fn unlinked_conics() -> (ParametrizedConic<Rational>, ParametrizedConic<Rational>) {
    let pc1 = ParametrizedConic::from_i64([[1, 0, 1], [1, 0, -1], [0, 2, 0], [0, 0, 0]]).unwrap();
    let pc2 = ParametrizedConic::from_i64([[1, 0, 1], [2, 0, 4], [0, 0, 0], [0, 2, 0]]).unwrap();
    (pc1, pc2)
}

pub fn oloid() -> (Circle<Rational>, Circle<Rational>) {
    (circle(["0", "0", "0"], "1", ["0", "0", "1"]), circle(["1", "0", "0"], "1", ["0", "1", "0"]))
}

/// Unit circles tangent at (1,0,0): planes z=0 and x=1.
pub fn mutually_tangent() -> (Circle<Rational>, Circle<Rational>) {
    (circle(["0", "0", "0"], "1", ["0", "0", "1"]), circle(["1", "0", "1"], "1", ["1", "0", "0"]))
}

/// Circles on the unit sphere cut by z = 4/5 and x = 4/5.
pub fn sphere_2c() -> (Circle<Rational>, Circle<Rational>) {
    (circle(["0", "0", "4/5"], "3/5", ["0", "0", "1"]), circle(["4/5", "0", "0"], "3/5", ["1", "0", "0"]))
}

pub struct OrderFixture {
    pub tag: String,
    pub c1: Circle<Rational>,
    pub c2: Circle<Rational>,
    pub q1: [Rational; 3],
    pub q2: [Rational; 3],
    pub roots1: Vec<Rational>,
    pub roots2: Vec<Rational>,
    pub intersection_type: [usize; 2],
    pub face_class: usize,
}

fn circle_of(v: &Value) -> Circle<Rational> {
    let s = |x: &Value| x.as_str().unwrap().to_string();
    let arr = |x: &Value| -> [String; 3] { std::array::from_fn(|i| s(&x[i])) };
    let c = arr(&v["center"]);
    let n = arr(&v["normal"]);
    circle([&c[0], &c[1], &c[2]], &s(&v["radius"]), [&n[0], &n[1], &n[2]])
}

fn rationals(v: &Value) -> Vec<Rational> {
    v.as_array().unwrap().iter().map(|x| q(x.as_str().unwrap())).collect()
}

pub fn order_fixtures() -> Vec<OrderFixture> {
    let text = include_str!("../fixtures/order_types.json");
    let doc: Value = serde_json::from_str(text).unwrap();
    doc["fixtures"]
        .as_array()
        .unwrap()
        .iter()
        .map(|f| {
            let q1 = rationals(&f["q1"]);
            let q2 = rationals(&f["q2"]);
            OrderFixture {
                tag: f["tag"].as_str().unwrap().to_string(),
                c1: circle_of(&f["c1"]),
                c2: circle_of(&f["c2"]),
                q1: [q1[0].clone(), q1[1].clone(), q1[2].clone()],
                q2: [q2[0].clone(), q2[1].clone(), q2[2].clone()],
                roots1: rationals(&f["roots1"]),
                roots2: rationals(&f["roots2"]),
                intersection_type: [
                    f["intersection_type"][0].as_u64().unwrap() as usize,
                    f["intersection_type"][1].as_u64().unwrap() as usize,
                ],
                face_class: f["face_class"].as_u64().unwrap() as usize,
            }
        })
        .collect()
}

pub fn fixture(tag: &str) -> (Circle<Rational>, Circle<Rational>) {
    let f = order_fixtures().into_iter().find(|f| f.tag == tag).unwrap_or_else(|| panic!("no fixture {tag}"));
    (f.c1, f.c2)
}

/// Random rational unit vector from a rational point on the sphere.
pub fn random_unit<R: Rng>(rng: &mut R) -> Vec3<Rational> {
    loop {
        let a = Rational::new(rng.gen_range(-12..=12).into(), rng.gen_range(1..=6).into());
        let b = Rational::new(rng.gen_range(-12..=12).into(), rng.gen_range(1..=6).into());
        let d = rint(1) + &a * &a + &b * &b;
        let two = rint(2);
        let v = Vec3::new(&two * &a / &d, &two * &b / &d, (rint(1) - &a * &a - &b * &b) / &d);
        let sign = if rng.gen_bool(0.5) { rint(1) } else { rint(-1) };
        let v = v.scale(&sign);
        if v.to_array().iter().all(|x| x.numer().bits() < 40) {
            return v;
        }
    }
}

pub fn random_small<R: Rng>(rng: &mut R, range: i64) -> Rational {
    Rational::new(rng.gen_range(-range * 4..=range * 4).into(), 4.into())
}

/// A random rational circle with modest coefficients.
pub fn random_circle<R: Rng>(rng: &mut R) -> Circle<Rational> {
    let c = Vec3::new(random_small(rng, 3), random_small(rng, 3), random_small(rng, 3));
    let r = Rational::new(rng.gen_range(1..=12).into(), 4.into());
    Circle::new(c, r, random_unit(rng)).unwrap()
}

/// Random pair in distinct planes.
pub fn random_pair<R: Rng>(rng: &mut R) -> (Circle<Rational>, Circle<Rational>) {
    loop {
        let c1 = random_circle(rng);
        let c2 = random_circle(rng);
        if c1.plane() != c2.plane() && c1.plane() != negated(&c2.plane()) {
            return (c1, c2);
        }
    }
}

fn negated(p: &bicircle::Plane<Rational>) -> bicircle::Plane<Rational> {
    bicircle::Plane { normal: -&p.normal, offset: -p.offset.clone() }
}
