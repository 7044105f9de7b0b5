use std::f64::consts::PI;

use rayon::prelude::*;
use serde::Serialize;

use super::form::{discriminants, projective_angle, Bideg22Form};
use crate::scalar::Scalar;

pub const DEFAULT_GRID: usize = 4096;
const REFINE: usize = 8;

/// Real roots of the binary quadratic `A u^2 + B u v + C v^2`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum FiberRoots {
    /// The quadratic vanishes identically.
    Full,
    None,
    Double((f64, f64)),
    Two((f64, f64), (f64, f64)),
}

impl FiberRoots {
    pub fn points(&self) -> Vec<(f64, f64)> {
        match *self {
            FiberRoots::Full | FiberRoots::None => Vec::new(),
            FiberRoots::Double(a) => vec![a],
            FiberRoots::Two(a, b) => vec![a, b],
        }
    }
}

/// Eigen-decomposition of `[[A, B/2], [B/2, C]]`: `(l1, e1, l2, e2)`, `l1 <= l2`.
fn sym2_eigen([a, b, c]: [f64; 3]) -> (f64, (f64, f64), f64, (f64, f64)) {
    let h = b / 2.0;
    let m = (a + c) / 2.0;
    let r = (((a - c) / 2.0).powi(2) + h * h).sqrt();
    let alpha = 0.5 * (2.0 * h).atan2(a - c);
    let e2 = (alpha.cos(), alpha.sin());
    let e1 = (-alpha.sin(), alpha.cos());
    (m - r, e1, m + r, e2)
}

/// Real roots of a binary quadratic; `scale` sets the zero threshold and
/// `force_double` treats the quadratic as having a repeated root.
pub fn fiber_roots(q: [f64; 3], scale: f64, force_double: bool) -> FiberRoots {
    let size = q.iter().fold(0.0f64, |m, c| m.max(c.abs()));
    if size <= 1e-12 * scale {
        return FiberRoots::Full;
    }
    let (l1, e1, l2, e2) = sym2_eigen(q);
    let near_zero = if l1.abs() <= l2.abs() { e1 } else { e2 };
    if force_double {
        return FiberRoots::Double(near_zero);
    }
    if l1 < 0.0 && l2 > 0.0 {
        let beta = (-l1 / l2).sqrt().atan();
        let (cb, sb) = (beta.cos(), beta.sin());
        let r1 = (cb * e1.0 + sb * e2.0, cb * e1.1 + sb * e2.1);
        let r2 = (cb * e1.0 - sb * e2.0, cb * e1.1 - sb * e2.1);
        return FiberRoots::Two(r1, r2);
    }
    if l1.abs().min(l2.abs()) <= 1e-12 * size {
        return FiberRoots::Double(near_zero);
    }
    FiberRoots::None
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ComponentChain {
    /// `(phi, psi)` samples, projective angles of `(s:t)` and `(u:v)` in `[0, pi)`.
    pub samples: Vec<(f64, f64)>,
    /// True when the component contains a whole fiber `{p} x P1`.
    pub contains_fiber: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RealComponents {
    pub count: usize,
    pub components: Vec<ComponentChain>,
}

struct Column {
    phi: f64,
    roots: FiberRoots,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra] = rb;
        }
    }
}

fn circ_dist(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(PI);
    d.min(PI - d)
}

/// Connected components of the real points of `f = 0` in RP1 x RP1, by
/// tracing the fibers over `grid` columns plus the real branch points.
pub fn real_components<S: Scalar>(f: &Bideg22Form<S>, grid: usize) -> RealComponents {
    let grid = grid.max(16);
    let ff = f.to_f64();
    let scale = ff.max_abs();
    let (dst, _) = discriminants(&f.to_rational());
    let specials: Vec<f64> = if dst.quartic.is_zero() {
        Vec::new()
    } else {
        dst.real_params().into_iter().map(projective_angle).collect()
    };
    let h = PI / grid as f64;
    let mut angles: Vec<(f64, bool)> = (0..grid).map(|k| (k as f64 * h, false)).collect();
    for &phi in &specials {
        let k = (phi / h).floor();
        for j in 1..=REFINE {
            let a = (k + j as f64 / (REFINE + 1) as f64) * h;
            angles.push((a.rem_euclid(PI), false));
        }
        angles.push((phi, true));
    }
    angles.sort_by(|a, b| a.0.total_cmp(&b.0));
    // Drop ordinary columns that coincide with a special one.
    let mut merged: Vec<(f64, bool)> = Vec::with_capacity(angles.len());
    for (a, sp) in angles {
        if let Some(last) = merged.last_mut() {
            if (a - last.0).abs() < 1e-12 {
                last.1 |= sp;
                continue;
            }
        }
        merged.push((a, sp));
    }
    let columns: Vec<Column> = merged
        .par_iter()
        .map(|&(phi, special)| {
            let q = ff.fiber_over_st(phi.cos(), phi.sin());
            Column { phi, roots: fiber_roots(q, scale, special) }
        })
        .collect();

    // Node layout: one node per root, one node per full fiber.
    let mut node_of: Vec<Vec<usize>> = Vec::with_capacity(columns.len());
    let mut node_data: Vec<(f64, Option<f64>)> = Vec::new();
    for c in &columns {
        let ids = match c.roots {
            FiberRoots::Full => {
                node_data.push((c.phi, None));
                vec![node_data.len() - 1]
            }
            _ => c
                .roots
                .points()
                .into_iter()
                .map(|p| {
                    node_data.push((c.phi, Some(projective_angle(p))));
                    node_data.len() - 1
                })
                .collect(),
        };
        node_of.push(ids);
    }
    let mut uf = UnionFind((0..node_data.len()).collect());
    let n = columns.len();
    for i in 0..n {
        let j = (i + 1) % n;
        let (a, b) = (&node_of[i], &node_of[j]);
        match (a.len(), b.len()) {
            (0, 2) => uf.union(b[0], b[1]),
            (2, 0) => uf.union(a[0], a[1]),
            (2, 2) => {
                let psi = |id: usize| node_data[id].1.unwrap_or(0.0);
                let straight = circ_dist(psi(a[0]), psi(b[0])) + circ_dist(psi(a[1]), psi(b[1]));
                let crossed = circ_dist(psi(a[0]), psi(b[1])) + circ_dist(psi(a[1]), psi(b[0]));
                if straight <= crossed {
                    uf.union(a[0], b[0]);
                    uf.union(a[1], b[1]);
                } else {
                    uf.union(a[0], b[1]);
                    uf.union(a[1], b[0]);
                }
            }
            _ => {
                for &x in a {
                    for &y in b {
                        uf.union(x, y);
                    }
                }
            }
        }
    }
    let mut roots: Vec<usize> = Vec::new();
    let mut chains: Vec<ComponentChain> = Vec::new();
    for id in 0..node_data.len() {
        let r = uf.find(id);
        let k = match roots.iter().position(|&x| x == r) {
            Some(k) => k,
            None => {
                roots.push(r);
                chains.push(ComponentChain { samples: Vec::new(), contains_fiber: false });
                roots.len() - 1
            }
        };
        match node_data[id].1 {
            Some(psi) => chains[k].samples.push((node_data[id].0, psi)),
            None => chains[k].contains_fiber = true,
        }
    }
    for c in &mut chains {
        let stride = (c.samples.len() / 256).max(1);
        c.samples = c.samples.iter().step_by(stride).copied().collect();
    }
    RealComponents { count: chains.len(), components: chains }
}
