use std::collections::HashMap;
use std::f64::consts::TAU;

use rayon::prelude::*;
use serde::Serialize;

use super::bisecant::halfspace_test;
use super::{Disc, HullError};
use crate::edge::{discriminants, edge_form, fiber_roots, projective_angle, Bideg22Form, FiberRoots};
use crate::geom3::{angle_to_param, circle_parametrization, param_to_angle, Circle, Vec3};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum PatchTag {
    PlanarFace { circle: usize },
    RuledStrip,
    /// Part of the dual body cut out by the dual cone of one circle.
    DualCone { circle: usize },
    /// Triangles of the dual mesh straddling the seam where both cones are active.
    DualSeam,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct RuledMesh {
    pub vertices: Vec<Vec3<f64>>,
    pub triangles: Vec<[usize; 3]>,
    pub tags: Vec<PatchTag>,
}

impl RuledMesh {
    pub fn area(&self) -> f64 {
        self.triangles.iter().map(|t| self.triangle_area(t)).sum()
    }

    fn triangle_area(&self, [a, b, c]: &[usize; 3]) -> f64 {
        let (a, b, c) = (&self.vertices[*a], &self.vertices[*b], &self.vertices[*c]);
        (b - a).cross(&(c - a)).norm() / 2.0
    }

    /// Undirected edges with the number of incident triangles.
    pub fn edge_counts(&self) -> HashMap<(usize, usize), usize> {
        let mut m = HashMap::new();
        for t in &self.triangles {
            for k in 0..3 {
                let (a, b) = (t[k], t[(k + 1) % 3]);
                *m.entry((a.min(b), a.max(b))).or_insert(0) += 1;
            }
        }
        m
    }

    pub fn boundary_edge_count(&self) -> usize {
        self.edge_counts().values().filter(|&&c| c == 1).count()
    }

    /// `V - E + F` over the vertices referenced by triangles.
    pub fn euler_characteristic(&self) -> i64 {
        let mut used = vec![false; self.vertices.len()];
        for t in &self.triangles {
            for &i in t {
                used[i] = true;
            }
        }
        let v = used.iter().filter(|&&u| u).count() as i64;
        v - self.edge_counts().len() as i64 + self.triangles.len() as i64
    }

    pub fn tag_census(&self) -> HashMap<PatchTag, usize> {
        let mut m = HashMap::new();
        for t in &self.tags {
            *m.entry(*t).or_insert(0) += 1;
        }
        m
    }
}

/// Merges vertices closer than `tol`.
pub(crate) struct MeshBuilder {
    mesh: RuledMesh,
    cells: HashMap<(u8, i64, i64, i64), Vec<usize>>,
    tol: f64,
}

impl MeshBuilder {
    pub(crate) fn new(tol: f64) -> Self {
        MeshBuilder { mesh: RuledMesh::default(), cells: HashMap::new(), tol }
    }

    fn cell(&self, x: &Vec3<f64>) -> (i64, i64, i64) {
        let f = |v: f64| (v / self.tol).floor() as i64;
        (f(x.x), f(x.y), f(x.z))
    }

    pub(crate) fn vertex(&mut self, x: &Vec3<f64>) -> usize {
        self.vertex_in(0, x)
    }

    /// Like `vertex`, merging only with vertices of the same `class`.
    pub(crate) fn vertex_in(&mut self, class: u8, x: &Vec3<f64>) -> usize {
        let (i, j, k) = self.cell(x);
        for di in -1..=1 {
            for dj in -1..=1 {
                for dk in -1..=1 {
                    if let Some(list) = self.cells.get(&(class, i + di, j + dj, k + dk)) {
                        if let Some(&idx) = list.iter().find(|&&idx| self.mesh.vertices[idx].dist(x) <= self.tol) {
                            return idx;
                        }
                    }
                }
            }
        }
        let idx = self.mesh.vertices.len();
        self.mesh.vertices.push(x.clone());
        self.cells.entry((class, i, j, k)).or_default().push(idx);
        idx
    }

    /// Adds a triangle facing away from `inside`; drops degenerate ones.
    pub(crate) fn triangle(&mut self, a: usize, b: usize, c: usize, inside: &Vec3<f64>, tag: PatchTag) {
        if a == b || b == c || a == c {
            return;
        }
        let v = &self.mesh.vertices;
        let n = (&v[b] - &v[a]).cross(&(&v[c] - &v[a]));
        if n.norm() <= 1e-14 {
            return;
        }
        let centroid = (&(&v[a] + &v[b]) + &v[c]).scale(&(1.0 / 3.0));
        let tri = if n.dot(&(&centroid - inside)) >= 0.0 { [a, b, c] } else { [a, c, b] };
        self.mesh.triangles.push(tri);
        self.mesh.tags.push(tag);
    }

    /// The mesh with unreferenced vertices removed.
    pub(crate) fn finish(self) -> RuledMesh {
        let mut mesh = self.mesh;
        let mut remap = vec![usize::MAX; mesh.vertices.len()];
        let mut vertices = Vec::new();
        for t in mesh.triangles.iter_mut() {
            for i in t.iter_mut() {
                if remap[*i] == usize::MAX {
                    remap[*i] = vertices.len();
                    vertices.push(mesh.vertices[*i].clone());
                }
                *i = remap[*i];
            }
        }
        mesh.vertices = vertices;
        mesh
    }
}

struct Sample {
    theta: f64,
    p: Vec3<f64>,
    /// Boundary partners on either side of the ray from `p` to an interior
    /// point, seen along the tangent at `p`.
    slots: [Option<Vec3<f64>>; 2],
    /// Every point of the second circle pairs with `p`.
    pencil: bool,
}

fn sample(d1: &Disc, d2: &Disc, e: &Bideg22Form<f64>, inside: &Vec3<f64>, theta: f64, critical: bool) -> Sample {
    let p = d1.point(theta);
    let (s, t) = angle_to_param(theta);
    let scale = e.max_abs().max(1e-300);
    let roots = fiber_roots(e.fiber_over_st(s, t), scale, critical);
    let pencil = matches!(roots, FiberRoots::Full);
    let mut slots: [Option<Vec3<f64>>; 2] = [None, None];
    let axis = d1.tangent(theta).cross(&(inside - &p));
    let band = 1e-9 * (d1.scale() + d2.scale()) * axis.norm();
    let partners: Vec<Vec3<f64>> = roots
        .points()
        .into_iter()
        .map(|(u, v)| d2.point(param_to_angle(u, v)))
        .filter(|q| halfspace_test(d1, d2, &p, q, 1e-7))
        .collect();
    let close = 1e-12 * (d1.scale() + d2.scale());
    // A partner on the first circle spans a chord of the first disc.
    let loose = 1e-10 * (d1.scale() + d2.scale());
    let partners: Vec<Vec3<f64>> = partners
        .into_iter()
        .filter(|q| !(d1.height(q).abs() <= loose && ((q - &d1.center).norm() - d1.radius).abs() <= loose && q.dist(&p) > loose))
        .collect();
    let shared = d2.height(&p).abs() <= close && ((&p - &d2.center).norm() - d2.radius).abs() <= close;
    if shared && partners.iter().all(|q| q.dist(&p) > band) {
        // A point of both circles: a ruling of length zero.
        return Sample { theta, p: p.clone(), slots: [Some(p.clone()), Some(p)], pencil: false };
    }
    if critical && partners.len() == 1 {
        return Sample { theta, p, slots: [Some(partners[0].clone()), Some(partners[0].clone())], pencil: false };
    }
    for q in partners {
        let side = axis.dot(&(&q - &p));
        if side >= -band {
            slots[0].get_or_insert(q.clone());
        }
        if side <= band {
            slots[1].get_or_insert(q);
        }
    }
    Sample { theta, p, slots, pencil }
}

struct Sampler<'a> {
    d1: &'a Disc,
    d2: &'a Disc,
    e: &'a Bideg22Form<f64>,
    inside: &'a Vec3<f64>,
    /// Largest accepted step of a partner between neighbouring samples.
    target: f64,
}

impl Sampler<'_> {
    fn at(&self, theta: f64, critical: bool) -> Sample {
        sample(self.d1, self.d2, self.e, self.inside, theta, critical)
    }

    fn too_far(&self, a: &Sample, b: &Sample) -> bool {
        (0..2).any(|k| matches!((&a.slots[k], &b.slots[k]), (Some(x), Some(y)) if x.dist(y) > self.target))
    }

    /// Samples strictly between `a` and `b`, bisecting while a partner jumps.
    fn refine(&self, a: &Sample, b: &Sample, depth: u32, out: &mut Vec<Sample>) {
        let end = if b.theta <= a.theta { b.theta + TAU } else { b.theta };
        if depth == 0 || end - a.theta < 1e-13 || !self.too_far(a, b) {
            return;
        }
        let mid = self.at(0.5 * (a.theta + end), false);
        self.refine(a, &mid, depth - 1, out);
        let mid_copy = Sample { theta: mid.theta, p: mid.p.clone(), slots: mid.slots.clone(), pencil: mid.pencil };
        out.push(mid);
        self.refine(&mid_copy, b, depth - 1, out);
    }
}

/// Point where the other circle touches the plane of `d`, when it lies on
/// one side of that plane. `Some(None)`: one-sided without contact.
fn one_sided(d: &Disc, other: &Disc, tol: f64) -> Option<Option<Vec3<f64>>> {
    let lateral = other.in_plane(&d.normal);
    let spread = other.radius * lateral.norm();
    let h = d.height(&other.center);
    let (lo, hi) = (h - spread, h + spread);
    if lo < -tol && hi > tol {
        return None;
    }
    if lo.abs() > tol && hi.abs() > tol {
        return Some(None);
    }
    let dir = if lateral.norm() > 0.0 { lateral.normalized() } else { lateral };
    let sign = if lo.abs() <= tol { -1.0 } else { 1.0 };
    Some(Some(&other.center + &dir.scale(&(sign * other.radius))))
}

/// Triangulated boundary of the hull: fans over the planar 2-faces and quad
/// strips along the boundary family of stationary bisecants, sampled at `n`
/// angles on the first circle plus the branch angles.
pub fn boundary_mesh<S: Scalar>(c1: &Circle<S>, c2: &Circle<S>, n: usize) -> Result<RuledMesh, HullError> {
    if n < 16 {
        return Err(HullError::ResolutionTooSmall);
    }
    let e = edge_form(&circle_parametrization(c1), &circle_parametrization(c2)).map_err(|_| HullError::CoplanarCircles)?;
    let ef = e.to_f64();
    let (d1, d2) = (Disc::of(c1), Disc::of(c2));
    let mut angles: Vec<(f64, bool)> = (0..n).map(|k| (TAU * k as f64 / n as f64, false)).collect();
    for st in discriminants(&e).0.real_params() {
        angles.push((2.0 * projective_angle(st), true));
    }
    angles.sort_by(|a, b| a.0.total_cmp(&b.0));
    angles.dedup_by(|b, a| {
        let close = (b.0 - a.0).abs() < 1e-12;
        if close {
            a.1 |= b.1;
        }
        close
    });
    let inside = (&d1.center + &d2.center).scale(&0.5);
    let sampler = Sampler { d1: &d1, d2: &d2, e: &ef, inside: &inside, target: TAU * d2.radius / n as f64 };
    let base: Vec<Sample> = angles.par_iter().map(|&(th, crit)| sampler.at(th, crit)).collect();
    let samples: Vec<Sample> = (0..base.len())
        .into_par_iter()
        .map(|k| {
            let (a, b) = (&base[k], &base[(k + 1) % base.len()]);
            let mut out = vec![Sample { theta: a.theta, p: a.p.clone(), slots: a.slots.clone(), pencil: a.pencil }];
            sampler.refine(a, b, 40, &mut out);
            out
        })
        .flatten()
        .collect();

    let scale = d1.scale() + d2.scale();
    let mut b = MeshBuilder::new(1e-7 * scale);
    // Near a shared point the circles are closer than the merge tolerance, so
    // vertices only merge with vertices of the same circle.
    let on = |d: &Disc, x: &Vec3<f64>| {
        d.height(x).abs() <= 1e-12 * scale && (d.in_plane(&(x - &d.center)).norm() - d.radius).abs() <= 1e-12 * scale
    };
    let class = |native: u8, x: &Vec3<f64>| if on(&d1, x) && on(&d2, x) { 3 } else { native };
    let mut on_circle: [Vec<usize>; 2] = [Vec::new(), Vec::new()];
    let ids: Vec<(usize, [Option<usize>; 2])> = samples
        .iter()
        .map(|s| {
            if s.slots.iter().all(Option::is_none) {
                if s.pencil {
                    // Apex of a cone over the second circle.
                    let ip = b.vertex_in(class(1, &s.p), &s.p);
                    on_circle[0].push(ip);
                    return (ip, [None, None]);
                }
                return (usize::MAX, [None, None]);
            }
            let ip = b.vertex_in(class(1, &s.p), &s.p);
            on_circle[0].push(ip);
            let q = s.slots.clone().map(|q| {
                q.map(|q| {
                    let iq = if q == s.p { ip } else { b.vertex_in(class(2, &q), &q) };
                    on_circle[1].push(iq);
                    iq
                })
            });
            (ip, q)
        })
        .collect();
    let max_chord = 0.5 * d2.radius;
    let flat = 1e-12 * scale;
    let m = samples.len();
    // Quads `(p0, p1, q1, q0)` and whether to cut along `p1 q0`.
    let mut quads: Vec<([usize; 4], bool)> = Vec::new();
    for k in 0..m {
        let k2 = (k + 1) % m;
        for slot in 0..2 {
            let (q0, q1) = match (&samples[k].slots[slot], &samples[k2].slots[slot]) {
                (Some(q0), Some(q1)) => (q0, q1),
                (Some(q), None) if samples[k2].pencil => {
                    if d1.height(q).abs() > flat && d2.height(&samples[k].p).abs() > flat {
                        b.triangle(ids[k].0, ids[k2].0, ids[k].1[slot].unwrap(), &inside, PatchTag::RuledStrip);
                    }
                    continue;
                }
                (None, Some(q)) if samples[k].pencil => {
                    if d1.height(q).abs() > flat && d2.height(&samples[k2].p).abs() > flat {
                        b.triangle(ids[k].0, ids[k2].0, ids[k2].1[slot].unwrap(), &inside, PatchTag::RuledStrip);
                    }
                    continue;
                }
                _ => continue,
            };
            if q0.dist(q1) > max_chord {
                continue;
            }
            let (p0, p1) = (ids[k].0, ids[k2].0);
            let (i0, i1) = (ids[k].1[slot].unwrap(), ids[k2].1[slot].unwrap());
            // A fan from the contact point inside a planar face.
            if i0 == i1 && d1.height(q0).abs() <= flat && d1.height(q1).abs() <= flat {
                continue;
            }
            // Both sheets ending at one point: cut along the other diagonal.
            let quad = ([p0, p1, i1, i0], ids[k2].1[0] == ids[k2].1[1]);
            // Sheets pinched together repeat the same quad.
            if !quads.contains(&quad) {
                quads.push(quad);
            }
        }
    }
    // The sheets meet the second circle at different points; each edge along
    // it picks up the vertices of the other sheet lying between its ends.
    let mut rim: Vec<(f64, usize)> = quads.iter().flat_map(|(q, _)| [q[2], q[3]]).map(|v| (d2.angle_of(&b.mesh.vertices[v]), v)).collect();
    rim.sort_by(|x, y| x.0.total_cmp(&y.0));
    rim.dedup_by_key(|x| x.1);
    let angle: HashMap<usize, f64> = rim.iter().map(|&(a, v)| (v, a)).collect();
    let between = |from: usize, to: usize| -> Vec<usize> {
        let (a0, a1) = (angle[&from], angle[&to]);
        let fwd = (a1 - a0).rem_euclid(TAU);
        let (lo, hi, rev) = if fwd <= TAU / 2.0 { (a0, a1, false) } else { (a1, a0, true) };
        let start = rim.partition_point(|x| x.0 <= lo);
        let mut inner: Vec<usize> = Vec::new();
        for k in 0..rim.len() {
            let (a, v) = rim[(start + k) % rim.len()];
            let off = (a - lo).rem_euclid(TAU);
            if off >= (hi - lo).rem_euclid(TAU) {
                break;
            }
            if v != from && v != to && off > 0.0 {
                inner.push(v);
            }
        }
        if rev {
            inner.reverse();
        }
        inner
    };
    let fan = |b: &mut MeshBuilder, apex: usize, from: usize, to: usize| {
        let mut chain = vec![from];
        chain.extend(between(from, to));
        chain.push(to);
        for w in chain.windows(2) {
            b.triangle(apex, w[0], w[1], &inside, PatchTag::RuledStrip);
        }
    };
    for ([p0, p1, i1, i0], flip) in quads {
        if flip {
            b.triangle(p0, p1, i0, &inside, PatchTag::RuledStrip);
            fan(&mut b, p1, i0, i1);
        } else {
            b.triangle(p0, p1, i1, &inside, PatchTag::RuledStrip);
            fan(&mut b, p0, i0, i1);
        }
    }

    let tol = 1e-9 * scale;
    for (i, (d, other)) in [(&d1, &d2), (&d2, &d1)].into_iter().enumerate() {
        let Some(touch) = one_sided(d, other, tol) else { continue };
        let mut ring: Vec<usize> = on_circle[i].clone();
        ring.sort_unstable();
        ring.dedup();
        let mut ring: Vec<(f64, usize)> = ring.into_iter().map(|v| (d.angle_of(&b.mesh.vertices[v]), v)).collect();
        if let Some(t) = touch {
            let dist = d.in_plane(&(&t - &d.center)).norm();
            if dist > d.radius + tol {
                let dir = d.angle_of(&t);
                let half = (d.radius / dist).acos();
                ring.retain(|(a, _)| {
                    let off = (a - dir + TAU / 2.0).rem_euclid(TAU) - TAU / 2.0;
                    off.abs() >= half - 1e-7
                });
                let it = b.vertex_in(class(2 - i as u8, &t), &t);
                ring.push((dir, it));
            }
        }
        if ring.len() < 3 {
            continue;
        }
        ring.sort_by(|x, y| x.0.total_cmp(&y.0));
        let ic = b.vertex_in(4, &d.center);
        let tag = PatchTag::PlanarFace { circle: i + 1 };
        for k in 0..ring.len() {
            let (v0, v1) = (ring[k].1, ring[(k + 1) % ring.len()].1);
            b.triangle(ic, v0, v1, &inside, tag);
        }
    }
    Ok(b.finish())
}
