use serde::Serialize;

use super::Disc;
use crate::geom3::{Circle, Vec3};
use crate::scalar::Scalar;

pub const DEFAULT_MEMBERSHIP_TOL: f64 = 1e-7;

const SEEDS: usize = 320;
const STARTS: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Inside,
    Boundary,
    Outside,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Membership {
    pub verdict: Verdict,
    /// Distance to `K` when outside, minus the distance to the boundary when inside.
    pub signed_distance: f64,
    /// Unit normal of the nearest supporting plane. For outside points
    /// `support(direction) < direction . x` certifies the verdict.
    pub direction: Vec3<f64>,
    pub support_value: f64,
}

fn fibonacci_sphere(n: usize) -> Vec<Vec3<f64>> {
    let golden = std::f64::consts::PI * (3.0 - 5f64.sqrt());
    (0..n)
        .map(|k| {
            let z = 1.0 - 2.0 * (k as f64 + 0.5) / n as f64;
            let r = (1.0 - z * z).sqrt();
            let a = golden * k as f64;
            Vec3::new(r * a.cos(), r * a.sin(), z)
        })
        .collect()
}

fn orthonormal_pair(w: &Vec3<f64>) -> (Vec3<f64>, Vec3<f64>) {
    let e = if w.x.abs() < 0.6 { Vec3::new(1.0, 0.0, 0.0) } else { Vec3::new(0.0, 1.0, 0.0) };
    let a = w.cross(&e).normalized();
    let b = w.cross(&a);
    (a, b)
}

/// Downhill simplex in the tangent plane at `w0`, maximising `f` on the sphere.
fn nelder_mead(f: &dyn Fn(&Vec3<f64>) -> f64, w0: &Vec3<f64>, step: f64) -> (Vec3<f64>, f64) {
    let (e1, e2) = orthonormal_pair(w0);
    let lift = |a: f64, b: f64| (&(w0 + &e1.scale(&a)) + &e2.scale(&b)).normalized();
    let g = |p: [f64; 2]| -f(&lift(p[0], p[1]));
    let mut simplex = [[0.0, 0.0], [step, 0.0], [0.0, step]];
    let mut vals = simplex.map(g);
    for _ in 0..600 {
        let mut idx = [0usize, 1, 2];
        idx.sort_by(|&i, &j| vals[i].total_cmp(&vals[j]));
        simplex = idx.map(|i| simplex[i]);
        vals = idx.map(|i| vals[i]);
        let diam = (0..3)
            .flat_map(|i| (0..i).map(move |j| (i, j)))
            .map(|(i, j)| (simplex[i][0] - simplex[j][0]).hypot(simplex[i][1] - simplex[j][1]))
            .fold(0.0, f64::max);
        if diam < 1e-13 {
            break;
        }
        let c = [(simplex[0][0] + simplex[1][0]) / 2.0, (simplex[0][1] + simplex[1][1]) / 2.0];
        let at = |k: f64| [c[0] + k * (simplex[2][0] - c[0]), c[1] + k * (simplex[2][1] - c[1])];
        let r = at(-1.0);
        let fr = g(r);
        if fr < vals[0] {
            let e = at(-2.0);
            let fe = g(e);
            if fe < fr {
                simplex[2] = e;
                vals[2] = fe;
            } else {
                simplex[2] = r;
                vals[2] = fr;
            }
        } else if fr < vals[1] {
            simplex[2] = r;
            vals[2] = fr;
        } else {
            let k = if fr < vals[2] { -0.5 } else { 0.5 };
            let ct = at(k);
            let fc = g(ct);
            if fc < vals[2].min(fr) {
                simplex[2] = ct;
                vals[2] = fc;
            } else {
                for i in 1..3 {
                    simplex[i] = [
                        simplex[0][0] + 0.5 * (simplex[i][0] - simplex[0][0]),
                        simplex[0][1] + 0.5 * (simplex[i][1] - simplex[0][1]),
                    ];
                    vals[i] = g(simplex[i]);
                }
            }
        }
    }
    let best = (0..3).min_by(|&i, &j| vals[i].total_cmp(&vals[j])).unwrap();
    (lift(simplex[best][0], simplex[best][1]), -vals[best])
}

/// `max over unit w of (w . x - h_K(w))`: the signed distance of `x` to the
/// boundary of `K`, with its maximising direction.
pub(crate) fn signed_distance_discs(d1: &Disc, d2: &Disc, x: &Vec3<f64>) -> (f64, Vec3<f64>) {
    let f = |w: &Vec3<f64>| w.dot(x) - d1.support(w).max(d2.support(w));
    let mut seeds: Vec<(f64, Vec3<f64>)> = fibonacci_sphere(SEEDS).into_iter().map(|w| (f(&w), w)).collect();
    // Normals of the two planes are the likeliest maximisers near 2-faces.
    for n in [&d1.normal, &d2.normal] {
        for w in [n.clone(), -n] {
            seeds.push((f(&w), w));
        }
    }
    seeds.sort_by(|a, b| b.0.total_cmp(&a.0));
    let mut best = seeds[0].clone();
    for (_, w) in seeds.iter().take(STARTS) {
        let (mut w, mut val) = nelder_mead(&f, w, 0.08);
        for step in [1e-3, 1e-5] {
            let (w2, v2) = nelder_mead(&f, &w, step);
            if v2 >= val {
                w = w2;
                val = v2;
            }
        }
        if val > best.0 {
            best = (val, w);
        }
    }
    (best.0, best.1)
}

pub fn signed_distance<S: Scalar>(c1: &Circle<S>, c2: &Circle<S>, x: &Vec3<f64>) -> f64 {
    signed_distance_discs(&Disc::of(c1), &Disc::of(c2), x).0
}

pub(crate) fn membership_discs(d1: &Disc, d2: &Disc, x: &Vec3<f64>, tol: f64) -> Membership {
    let (sd, w) = signed_distance_discs(d1, d2, x);
    let verdict = if sd > tol {
        Verdict::Outside
    } else if sd < -tol {
        Verdict::Inside
    } else {
        Verdict::Boundary
    };
    let support_value = d1.support(&w).max(d2.support(&w));
    Membership { verdict, signed_distance: sd, direction: w, support_value }
}

/// Decide `x in K` with a boundary band of width `tol`.
pub fn membership<S: Scalar>(c1: &Circle<S>, c2: &Circle<S>, x: &Vec3<f64>, tol: f64) -> Membership {
    membership_discs(&Disc::of(c1), &Disc::of(c2), x, tol)
}
