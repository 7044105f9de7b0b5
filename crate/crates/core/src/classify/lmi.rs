use nalgebra::{Matrix4, SymmetricEigen};
use rayon::prelude::*;
use serde::Serialize;

use super::lattice::lattice_row;
use super::order::{order_type, OrderTag};
use super::pencil::quadric_pencil;
use super::ClassifyError;
use crate::geom3::{Circle, Vec3};
use crate::hull::{signed_distance, Disc};
use crate::linalg::det4;
use crate::poly::Poly;
use crate::scalar::{rint, Rational, Scalar};

/// Symmetric pencil `A0 + x A1 + y A2 + z A3`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LmiBlock {
    pub matrices: [Vec<Vec<f64>>; 4],
}

impl LmiBlock {
    fn from_affine(entries: &[Vec<[f64; 4]>]) -> LmiBlock {
        LmiBlock {
            matrices: std::array::from_fn(|k| entries.iter().map(|row| row.iter().map(|e| e[k]).collect()).collect()),
        }
    }

    pub fn size(&self) -> usize {
        self.matrices[0].len()
    }

    pub fn eval(&self, x: &Vec3<f64>) -> Vec<Vec<f64>> {
        let n = self.size();
        let c = [1.0, x.x, x.y, x.z];
        (0..n).map(|i| (0..n).map(|j| (0..4).map(|k| c[k] * self.matrices[k][i][j]).sum()).collect()).collect()
    }

    pub fn min_eigenvalue(&self, x: &Vec3<f64>) -> f64 {
        let m = self.eval(x);
        match m.len() {
            1 => m[0][0],
            2 => {
                let (a, b, c) = (m[0][0], m[0][1], m[1][1]);
                (a + c) / 2.0 - ((a - c) / 2.0).hypot(b)
            }
            _ => {
                let n = m.len();
                let dm = nalgebra::DMatrix::from_fn(n, n, |i, j| m[i][j]);
                dm.symmetric_eigenvalues().min()
            }
        }
    }

    pub fn det(&self, x: &Vec3<f64>) -> f64 {
        let m = self.eval(x);
        match m.len() {
            1 => m[0][0],
            2 => m[0][0] * m[1][1] - m[0][1] * m[1][0],
            n => nalgebra::DMatrix::from_fn(n, n, |i, j| m[i][j]).determinant(),
        }
    }
}

/// Block diagonal linear matrix inequality. The first block is the 2x2 cone
/// block; the rest are 1x1.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LmiRepresentation {
    pub blocks: Vec<LmiBlock>,
}

impl LmiRepresentation {
    pub fn min_eigenvalue(&self, x: &Vec3<f64>) -> f64 {
        self.blocks.iter().map(|b| b.min_eigenvalue(x)).fold(f64::INFINITY, f64::min)
    }

    pub fn contains(&self, x: &Vec3<f64>, tol: f64) -> bool {
        self.min_eigenvalue(x) >= -tol
    }

    pub fn cone_blocks(&self) -> impl Iterator<Item = &LmiBlock> {
        self.blocks.iter().filter(|b| b.size() == 2)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectrahedronResult {
    pub tag: OrderTag,
    pub is_spectrahedron: bool,
    pub lmi: Option<LmiRepresentation>,
    /// Obstruction when the hull is not a spectrahedron.
    pub reason: Option<String>,
}

pub fn is_spectrahedral_tag(tag: OrderTag) -> bool {
    matches!(tag, OrderTag::SS | OrderTag::TwoC | OrderTag::S)
}

/// Samples on both circles used to pick cones and slabs.
fn circle_samples(d1: &Disc, d2: &Disc, n: usize) -> Vec<Vec3<f64>> {
    [d1, d2]
        .iter()
        .flat_map(|d| (0..n).map(move |k| d.point(std::f64::consts::TAU * (k as f64 + 0.1) / n as f64)))
        .collect()
}

/// `det(qb + t qa)` as a polynomial in `t`, by interpolation at `t = 0..4`.
fn pencil_determinant(qa: &[[Rational; 4]; 4], qb: &[[Rational; 4]; 4]) -> Poly<Rational> {
    let nodes: Vec<Rational> = (0..5).map(rint).collect();
    let mut acc = Poly::zero();
    for (i, ti) in nodes.iter().enumerate() {
        let m: [[Rational; 4]; 4] = std::array::from_fn(|a| std::array::from_fn(|b| &qb[a][b] + ti * &qa[a][b]));
        let yi = det4(&m);
        let mut basis = Poly::constant(yi);
        for (j, tj) in nodes.iter().enumerate() {
            if i != j {
                let lin = Poly::new(vec![-tj.clone(), rint(1)]);
                basis = &basis * &lin.scale(&(rint(1) / (ti - tj)));
            }
        }
        acc = &acc + &basis;
    }
    acc
}

/// Cone blocks from a rank-3 pencil member: both nappes of
/// `u^2 + v^2 - w^2 <= 0`.
fn cone_candidates(m: Matrix4<f64>) -> Vec<LmiBlock> {
    let eig = SymmetricEigen::new(m);
    let top = eig.eigenvalues.amax();
    if top <= 0.0 {
        return Vec::new();
    }
    let mut idx: Vec<usize> = (0..4).filter(|&i| eig.eigenvalues[i].abs() > 1e-9 * top).collect();
    if idx.len() != 3 {
        return Vec::new();
    }
    let pos = idx.iter().filter(|&&i| eig.eigenvalues[i] > 0.0).count();
    let sign = match pos {
        2 => 1.0,
        1 => -1.0,
        _ => return Vec::new(),
    };
    // Two eigenvalues with the sign `sign` first, the odd one last.
    idx.sort_by_key(|&i| eig.eigenvalues[i] * sign < 0.0);
    let form = |i: usize| -> [f64; 4] {
        let s = (eig.eigenvalues[i] * sign).abs().sqrt();
        let e = eig.eigenvectors.column(i);
        [s * e[0], s * e[1], s * e[2], s * e[3]]
    };
    let (u, v, w) = (form(idx[0]), form(idx[1]), form(idx[2]));
    [1.0, -1.0]
        .into_iter()
        .map(|nappe| {
            let w: [f64; 4] = w.map(|c| nappe * c);
            let plus: [f64; 4] = std::array::from_fn(|k| w[k] + u[k]);
            let minus: [f64; 4] = std::array::from_fn(|k| w[k] - u[k]);
            LmiBlock::from_affine(&[vec![plus, v], vec![v, minus]])
        })
        .collect()
}

fn slab_candidates(d1: &Disc, d2: &Disc) -> Vec<LmiBlock> {
    [d1, d2]
        .iter()
        .flat_map(|d| {
            let n = &d.normal;
            let off = n.dot(&d.center);
            [1.0, -1.0].map(|s| LmiBlock::from_affine(&[vec![[-s * off, s * n.x, s * n.y, s * n.z]]]))
        })
        .collect()
}

fn grid(d1: &Disc, d2: &Disc, n: usize) -> Vec<Vec3<f64>> {
    let mut lo = [f64::INFINITY; 3];
    let mut hi = [f64::NEG_INFINITY; 3];
    for d in [d1, d2] {
        for k in 0..3 {
            let e = Vec3::<f64>::basis(k);
            let ext = d.radius * d.in_plane(&e).norm();
            lo[k] = lo[k].min(d.center.get(k) - ext);
            hi[k] = hi[k].max(d.center.get(k) + ext);
        }
    }
    let at = |k: usize, i: usize| lo[k] + (hi[k] - lo[k]) * i as f64 / (n - 1) as f64;
    (0..n)
        .flat_map(|i| (0..n).flat_map(move |j| (0..n).map(move |k| Vec3::new(at(0, i), at(1, j), at(2, k)))))
        .collect()
}

/// Fraction of grid points outside the boundary band where the LMI and the
/// hull agree, and the number of points compared.
pub fn lmi_agreement<S: Scalar>(c1: &Circle<S>, c2: &Circle<S>, lmi: &LmiRepresentation, n: usize, band: f64) -> (f64, usize) {
    let (d1, d2) = (Disc::of(c1), Disc::of(c2));
    let pts = grid(&d1, &d2, n);
    let verdicts: Vec<Option<bool>> = pts
        .par_iter()
        .map(|x| {
            let sd = signed_distance(c1, c2, x);
            (sd.abs() >= band).then(|| (sd < 0.0) == lmi.contains(x, 0.0))
        })
        .collect();
    let compared = verdicts.iter().flatten().count();
    let agree = verdicts.iter().flatten().filter(|&&b| b).count();
    (if compared == 0 { 1.0 } else { agree as f64 / compared as f64 }, compared)
}

/// Decides whether the hull is a spectrahedron and, if so, builds a
/// representation from a singular quadric of the pencil through the circles.
pub fn spectrahedron<S: Scalar>(c1: &Circle<S>, c2: &Circle<S>) -> Result<SpectrahedronResult, ClassifyError> {
    let ot = order_type(c1, c2)?;
    if !is_spectrahedral_tag(ot.tag) {
        let row = lattice_row(ot.tag);
        let reason = if row.nonexposed_points + row.nonexposed_bisecants > 0 {
            "nonexposed face"
        } else {
            "not basic semialgebraic: stationary bisecants pass through the interior"
        };
        return Ok(SpectrahedronResult { tag: ot.tag, is_spectrahedron: false, lmi: None, reason: Some(reason.into()) });
    }
    let pencil = quadric_pencil(c1, c2)?
        .ok_or_else(|| ClassifyError::NoSuitableRealCone("the circles lie on no pencil of quadrics".into()))?;
    let (d1, d2) = (Disc::of(c1), Disc::of(c2));
    let scale = d1.scale() + d2.scale();
    let samples = circle_samples(&d1, &d2, 64);
    let tol = 1e-9 * scale;
    let feasible = |b: &LmiBlock| samples.iter().all(|x| b.min_eigenvalue(x) >= -tol);

    let p = pencil_determinant(&pencil.qa, &pencil.qb);
    let to_f64 = |q: &[[Rational; 4]; 4]| Matrix4::from_fn(|i, j| q[i][j].to_f64());
    let (qa, qb) = (to_f64(&pencil.qa), to_f64(&pencil.qb));
    let mut blocks = Vec::new();
    if !p.is_zero() {
        for root in p.real_roots() {
            let m = match &root.exact {
                Some(t) => to_f64(&pencil.member(t)),
                None => qb + qa * root.value,
            };
            let norm = m.amax().max(1e-300);
            blocks.extend(cone_candidates(m / norm).into_iter().filter(|b| feasible(b)));
        }
    }
    if blocks.is_empty() {
        return Err(ClassifyError::NoSuitableRealCone("no rank-3 member has a nappe containing both circles".into()));
    }
    blocks.extend(slab_candidates(&d1, &d2).into_iter().filter(|b| feasible(b)));
    let lmi = LmiRepresentation { blocks };
    let (agreement, _) = lmi_agreement(c1, c2, &lmi, 9, 1e-6 * scale);
    if agreement < 1.0 {
        return Err(ClassifyError::NoSuitableRealCone(format!("representation agrees with the hull on {:.2}% of a test grid", 100.0 * agreement)));
    }
    Ok(SpectrahedronResult { tag: ot.tag, is_spectrahedron: true, lmi: Some(lmi), reason: None })
}
