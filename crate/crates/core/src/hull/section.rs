use num_traits::{One, Zero};
use serde::Serialize;

use super::HullError;
use crate::binary_form::BinaryForm;
use crate::edge::{edge_form, fiber_roots, split_fibers, Bideg22Form};
use crate::geom3::{circle_parametrization, Circle, Line, ParametrizedConic, Vec3};
use crate::linalg;
use crate::scalar::{Rational, Scalar};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SectionPoint {
    pub st: (f64, f64),
    pub uv: (f64, f64),
    pub multiplicity: usize,
    /// Where the stationary bisecant meets the line.
    pub point: Vec3<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LineSection {
    /// Degree of the eliminant: intersections with the edge surface counted
    /// with multiplicity.
    pub total_with_multiplicity: usize,
    /// Real intersections counted with multiplicity.
    pub real_count: usize,
    pub real_points: Vec<SectionPoint>,
    /// Eliminant in `(s, t)`, coefficients of `s^(d-k) t^k`.
    pub eliminant: BinaryForm<Rational>,
    /// Degrees `(deg g, deg h)` of the fiber factors removed from the edge form.
    pub fiber_degrees: (usize, usize),
}

/// `K[a][b] = det[e_a; e_b; P; Q]` for the homogeneous points spanning the line.
fn plucker(p: &[Rational; 4], q: &[Rational; 4]) -> [[Rational; 4]; 4] {
    std::array::from_fn(|a| {
        std::array::from_fn(|b| {
            if a == b {
                return Rational::zero();
            }
            let row = |k: usize| -> Vec<Rational> {
                (0..4).map(|i| if i == k { Rational::one() } else { Rational::zero() }).collect()
            };
            linalg::det(&[row(a), row(b), p.to_vec(), q.to_vec()])
        })
    })
}

/// The incidence form `M(s,t,u,v) = det[f1(s,t); f2(u,v); P; Q]`.
pub(crate) fn incidence_form(
    pc1: &ParametrizedConic<Rational>,
    pc2: &ParametrizedConic<Rational>,
    p: &[Rational; 4],
    q: &[Rational; 4],
) -> Bideg22Form<Rational> {
    let k = plucker(p, q);
    let coeff = std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let mut acc = Rational::zero();
            for a in 0..4 {
                for b in 0..4 {
                    if !k[a][b].is_zero() {
                        acc += &pc1.forms[a][i] * &pc2.forms[b][j] * &k[a][b];
                    }
                }
            }
            acc
        })
    });
    Bideg22Form::new(coeff)
}

/// Column `j` of a coefficient grid as a form in `(s, t)`.
fn column(grid: &[Vec<Rational>], j: usize) -> BinaryForm<Rational> {
    BinaryForm::new(grid.iter().map(|row| row[j].clone()).collect())
}

fn grid_of(f: &Bideg22Form<Rational>) -> Vec<Vec<Rational>> {
    f.coeff.iter().map(|r| r.to_vec()).collect()
}

/// Resultant in `(u, v)` of the residual edge form and `M`.
fn eliminate(res: &[Vec<Rational>], m: &[Vec<Rational>]) -> BinaryForm<Rational> {
    let db = res[0].len() - 1;
    let (a2, b2, c2) = (column(m, 0), column(m, 1), column(m, 2));
    match db {
        2 => {
            let (a1, b1, c1) = (column(res, 0), column(res, 1), column(res, 2));
            let x = &(&a1 * &c2) - &(&a2 * &c1);
            let y = &(&a1 * &b2) - &(&a2 * &b1);
            let z = &(&b1 * &c2) - &(&b2 * &c1);
            &(&x * &x) - &(&y * &z)
        }
        1 => {
            let (alpha, beta) = (column(res, 0), column(res, 1));
            let ab = &alpha * &beta;
            &(&(&a2 * &(&beta * &beta)) - &(&b2 * &ab)) + &(&c2 * &(&alpha * &alpha))
        }
        _ => {
            let g = column(res, 0);
            &g * &g
        }
    }
}

fn eval_column_form(grid: &[Vec<Rational>], s: f64, t: f64) -> Vec<f64> {
    let da = grid.len() - 1;
    (0..grid[0].len())
        .map(|j| {
            (0..=da)
                .map(|i| grid[i][j].to_f64() * s.powi((da - i) as i32) * t.powi(i as i32))
                .sum()
        })
        .collect()
}

fn closest_on_line(base: &Vec3<f64>, dir: &Vec3<f64>, a: &Vec3<f64>, b: &Vec3<f64>) -> Vec3<f64> {
    let e = b - a;
    let w0 = base - a;
    let (dd, de, ee) = (dir.dot(dir), dir.dot(&e), e.dot(&e));
    let (dw, ew) = (dir.dot(&w0), e.dot(&w0));
    let den = dd * ee - de * de;
    let tau = if den.abs() <= 1e-15 * dd * ee.max(1e-300) { -dw / dd } else { (de * ew - ee * dw) / den };
    base + &dir.scale(&tau)
}

/// Intersections of a line with the edge surface, counted by eliminating
/// `(u, v)` between the edge form and the incidence form of the line.
pub fn line_section_count<S: Scalar>(c1: &Circle<S>, c2: &Circle<S>, line: &Line<S>) -> Result<LineSection, HullError> {
    let pc1 = circle_parametrization(c1).to_rational();
    let pc2 = circle_parametrization(c2).to_rational();
    let e = edge_form(&pc1, &pc2).map_err(|_| HullError::CoplanarCircles)?;
    let base = line.base.to_rational();
    let dir = line.direction.to_rational();
    let p = if line.at_infinity {
        [Rational::zero(), base.x.clone(), base.y.clone(), base.z.clone()]
    } else {
        [Rational::one(), base.x.clone(), base.y.clone(), base.z.clone()]
    };
    let q = [Rational::zero(), dir.x.clone(), dir.y.clone(), dir.z.clone()];
    let m = incidence_form(&pc1, &pc2, &p, &q);
    if m.is_zero() {
        return Err(HullError::DegenerateLine);
    }
    let (g, h, res) = split_fibers(&e).ok_or(HullError::CoplanarCircles)?;
    let mgrid = grid_of(&m);
    let elim = eliminate(&res, &mgrid);
    if elim.is_zero() {
        return Err(HullError::DegenerateLine);
    }
    let total = elim.degree();
    let mf = m.to_f64();
    let mut roots: Vec<((f64, f64), usize)> = Vec::new();
    let inf = elim.infinity_multiplicity();
    if inf > 0 {
        roots.push(((0.0, 1.0), inf));
    }
    for r in elim.dehomogenize().real_roots() {
        let n = r.value.hypot(1.0);
        roots.push(((r.value / n, 1.0 / n), r.multiplicity));
    }
    let pf = pc1.to_f64();
    let qf = pc2.to_f64();
    let lb = line.base.to_f64();
    let ld = line.direction.to_f64();
    let mscale = mf.max_abs().max(1e-300);
    let mut real_points = Vec::new();
    for ((s, t), mult) in roots {
        let fib = eval_column_form(&res, s, t);
        let cands: Vec<(f64, f64)> = match fib.len() {
            3 => {
                let size = fib.iter().fold(0.0f64, |a, c| a.max(c.abs()));
                fiber_roots([fib[0], fib[1], fib[2]], size.max(1e-300), false).points()
            }
            2 => {
                let n = fib[0].hypot(fib[1]);
                if n > 0.0 {
                    vec![(fib[1] / n, -fib[0] / n)]
                } else {
                    Vec::new()
                }
            }
            _ => Vec::new(),
        };
        let best = cands
            .into_iter()
            .map(|(u, v)| ((u, v), mf.eval_f64(s, t, u, v).abs() / mscale))
            .min_by(|a, b| a.1.total_cmp(&b.1));
        let Some(((u, v), resid)) = best else { continue };
        if resid > 1e-6 {
            continue;
        }
        let x1 = pf.affine_point(&s, &t);
        let x2 = qf.affine_point(&u, &v);
        let (Some(x1), Some(x2)) = (x1, x2) else { continue };
        let point = if line.at_infinity { x1.clone() } else { closest_on_line(&lb, &ld, &x1, &x2) };
        real_points.push(SectionPoint { st: (s, t), uv: (u, v), multiplicity: mult, point });
    }
    let real_count = real_points.iter().map(|p| p.multiplicity).sum();
    Ok(LineSection {
        total_with_multiplicity: total,
        real_count,
        real_points,
        eliminant: elim,
        fiber_degrees: (g.degree(), h.degree()),
    })
}
