use serde::Serialize;

use super::order::exact_pair;
use super::ClassifyError;
use crate::geom3::{circle_parametrization, Circle, ParametrizedConic};
use crate::linalg::{nullspace, rank};
use crate::scalar::{rat, rint, Rational, Scalar};

/// Two quadrics on projective 3-space, `[X0 : X1 : X2 : X3]` with `X0` the
/// weight, spanning all quadrics through both circles. `qa` is the plane pair.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QuadricPencil {
    pub qa: [[Rational; 4]; 4],
    pub qb: [[Rational; 4]; 4],
}

impl QuadricPencil {
    /// `qb + t qa`.
    pub fn member(&self, t: &Rational) -> [[Rational; 4]; 4] {
        std::array::from_fn(|i| std::array::from_fn(|j| &self.qb[i][j] + t * &self.qa[i][j]))
    }
}

pub fn quadric_value(q: &[[Rational; 4]; 4], x: &[Rational; 4]) -> Rational {
    let mut acc = rint(0);
    for i in 0..4 {
        for j in 0..4 {
            acc += &q[i][j] * &x[i] * &x[j];
        }
    }
    acc
}

const PARAMS: [(i64, i64); 5] = [(1, 0), (0, 1), (1, 1), (1, -1), (1, 2)];

fn monomials() -> Vec<(usize, usize)> {
    (0..4).flat_map(|a| (a..4).map(move |b| (a, b))).collect()
}

fn to_matrix(v: &[Rational]) -> [[Rational; 4]; 4] {
    let mut q: [[Rational; 4]; 4] = std::array::from_fn(|_| std::array::from_fn(|_| rint(0)));
    for (k, (a, b)) in monomials().into_iter().enumerate() {
        if a == b {
            q[a][a] = v[k].clone();
        } else {
            q[a][b] = &v[k] * rat(1, 2);
            q[b][a] = q[a][b].clone();
        }
    }
    q
}

fn to_vector(q: &[[Rational; 4]; 4]) -> Vec<Rational> {
    monomials().into_iter().map(|(a, b)| if a == b { q[a][a].clone() } else { &q[a][b] * rint(2) }).collect()
}

/// Basis of the quadrics through both circles, as coefficient vectors of
/// `X_a X_b`, `a <= b`.
pub fn quadric_through<S: Scalar>(c1: &Circle<S>, c2: &Circle<S>) -> Result<Vec<[[Rational; 4]; 4]>, ClassifyError> {
    let (e1, e2) = exact_pair(c1, c2)?;
    let rows = conditions(&circle_parametrization(&e1)).into_iter().chain(conditions(&circle_parametrization(&e2)));
    let rows: Vec<Vec<Rational>> = rows.collect();
    Ok(nullspace(&rows, 10).iter().map(|v| to_matrix(v)).collect())
}

fn conditions(pc: &ParametrizedConic<Rational>) -> Vec<Vec<Rational>> {
    PARAMS
        .iter()
        .map(|&(s, t)| {
            let x = pc.eval(&rint(s), &rint(t));
            monomials().into_iter().map(|(a, b)| &x[a] * &x[b]).collect()
        })
        .collect()
}

/// The pencil of quadrics through both circles, or `None` when the only
/// such quadric is the pair of planes.
pub fn quadric_pencil<S: Scalar>(c1: &Circle<S>, c2: &Circle<S>) -> Result<Option<QuadricPencil>, ClassifyError> {
    let (e1, e2) = exact_pair(c1, c2)?;
    if e1.plane().normal.cross(&e2.plane().normal).norm2() == rint(0) && e1.plane().offset == e2.plane().offset {
        return Err(ClassifyError::CoplanarCircles);
    }
    let basis = quadric_through(&e1, &e2)?;
    if basis.len() < 2 {
        return Ok(None);
    }
    let l1 = circle_parametrization(&e1).plane_relation();
    let l2 = circle_parametrization(&e2).plane_relation();
    let qa: [[Rational; 4]; 4] =
        std::array::from_fn(|i| std::array::from_fn(|j| (&l1[i] * &l2[j] + &l1[j] * &l2[i]) * rat(1, 2)));
    let va = to_vector(&qa);
    let pivot = va.iter().position(|c| *c != rint(0)).expect("plane pair is nonzero");
    let qb = basis
        .iter()
        .map(|q| {
            let v = to_vector(q);
            let k = &v[pivot] / &va[pivot];
            v.iter().zip(&va).map(|(x, y)| x - &k * y).collect::<Vec<_>>()
        })
        .find(|v| rank(&[v.clone(), va.clone()]) == 2)
        .expect("a two-dimensional space contains a vector independent of the plane pair");
    Ok(Some(QuadricPencil { qa, qb: to_matrix(&qb) }))
}
