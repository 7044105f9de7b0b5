use num_complex::Complex64;
use num_traits::Zero;
use serde::Serialize;

use super::EdgeError;
use crate::binary_form::{BinaryForm, RootWithMultiplicity};
use crate::geom3::ParametrizedConic;
use crate::scalar::{rational_string, Rational, Scalar};

/// Bihomogeneous form of bidegree (2,2) on P1 x P1. `coeff[i][j]` multiplies
/// `s^(2-i) t^i u^(2-j) v^j`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Bideg22Form<S> {
    pub coeff: [[S; 3]; 3],
}

/// `[s^2, s t, t^2]`
pub(crate) fn quad_monomials<T>(s: T, t: T) -> [T; 3]
where
    T: Clone + std::ops::Mul<Output = T>,
{
    [s.clone() * s.clone(), s.clone() * t.clone(), t.clone() * t]
}

impl<S: Scalar> Bideg22Form<S> {
    pub fn new(coeff: [[S; 3]; 3]) -> Self {
        Bideg22Form { coeff }
    }

    pub fn from_i64(c: [[i64; 3]; 3]) -> Self {
        Bideg22Form::new(c.map(|r| r.map(S::from_i64)))
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.iter().flatten().all(|c| c.is_zero())
    }

    pub fn eval(&self, s: &S, t: &S, u: &S, v: &S) -> S {
        let m = quad_monomials(s.clone(), t.clone());
        let n = quad_monomials(u.clone(), v.clone());
        let mut acc = S::zero();
        for i in 0..3 {
            for j in 0..3 {
                acc = acc + self.coeff[i][j].clone() * m[i].clone() * n[j].clone();
            }
        }
        acc
    }

    pub fn eval_f64(&self, s: f64, t: f64, u: f64, v: f64) -> f64 {
        let m = quad_monomials(s, t);
        let n = quad_monomials(u, v);
        (0..3)
            .flat_map(|i| (0..3).map(move |j| (i, j)))
            .map(|(i, j)| self.coeff[i][j].to_f64() * m[i] * n[j])
            .sum()
    }

    /// Value, gradient `(E_s, E_t, E_u, E_v)` and Hessian at a complex point.
    pub fn jet_complex(&self, p: [Complex64; 4]) -> (Complex64, [Complex64; 4], [[Complex64; 4]; 4]) {
        let [s, t, u, v] = p;
        let two = Complex64::new(2.0, 0.0);
        let zero = Complex64::zero();
        let m = quad_monomials(s, t);
        let n = quad_monomials(u, v);
        // d/ds, d/dt of [s^2, st, t^2]
        let ms = [two * s, t, zero];
        let mt = [zero, s, two * t];
        let ns = [two * u, v, zero];
        let nt = [zero, u, two * v];
        let mss = [two, zero, zero];
        let mst = [zero, Complex64::new(1.0, 0.0), zero];
        let mtt = [zero, zero, two];
        let mut val = zero;
        let mut g = [zero; 4];
        let mut h = [[zero; 4]; 4];
        for i in 0..3 {
            for j in 0..3 {
                let c = Complex64::new(self.coeff[i][j].to_f64(), 0.0);
                val += c * m[i] * n[j];
                g[0] += c * ms[i] * n[j];
                g[1] += c * mt[i] * n[j];
                g[2] += c * m[i] * ns[j];
                g[3] += c * m[i] * nt[j];
                let a = [ms[i], mt[i]];
                let b = [ns[j], nt[j]];
                h[0][0] += c * mss[i] * n[j];
                h[0][1] += c * mst[i] * n[j];
                h[1][1] += c * mtt[i] * n[j];
                h[2][2] += c * m[i] * mss[j];
                h[2][3] += c * m[i] * mst[j];
                h[3][3] += c * m[i] * mtt[j];
                for (x, ax) in a.iter().enumerate() {
                    for (y, by) in b.iter().enumerate() {
                        h[x][2 + y] += c * ax * by;
                    }
                }
            }
        }
        for x in 0..4 {
            for y in 0..x {
                h[x][y] = h[y][x];
            }
        }
        (val, g, h)
    }

    /// `E(u,v,s,t)`: the form with the two factors interchanged.
    pub fn swapped(&self) -> Self {
        Bideg22Form::new(std::array::from_fn(|i| std::array::from_fn(|j| self.coeff[j][i].clone())))
    }

    /// `(A, B, C)` with `E = A u^2 + B u v + C v^2`, as forms in `(s, t)`.
    pub fn st_coefficients(&self) -> [BinaryForm<S>; 3] {
        std::array::from_fn(|j| BinaryForm::new((0..3).map(|i| self.coeff[i][j].clone()).collect()))
    }

    /// Coefficients of `s^2, s t, t^2`, as forms in `(u, v)`.
    pub fn uv_coefficients(&self) -> [BinaryForm<S>; 3] {
        std::array::from_fn(|i| BinaryForm::new(self.coeff[i].to_vec()))
    }

    /// The quadratic `E(s, t, ., .)` as `[A, B, C]`.
    pub fn fiber_over_st(&self, s: f64, t: f64) -> [f64; 3] {
        let m = quad_monomials(s, t);
        std::array::from_fn(|j| (0..3).map(|i| self.coeff[i][j].to_f64() * m[i]).sum())
    }

    /// The quadratic `E(., ., u, v)` as coefficients of `s^2, s t, t^2`.
    pub fn fiber_over_uv(&self, u: f64, v: f64) -> [f64; 3] {
        let n = quad_monomials(u, v);
        std::array::from_fn(|i| (0..3).map(|j| self.coeff[i][j].to_f64() * n[j]).sum())
    }

    pub fn scale(&self, k: &S) -> Self {
        Bideg22Form::new(self.coeff.clone().map(|r| r.map(|c| c * k.clone())))
    }

    /// Largest coefficient magnitude.
    pub fn max_abs(&self) -> f64 {
        self.coeff.iter().flatten().map(|c| c.to_f64().abs()).fold(0.0, f64::max)
    }

    pub fn to_f64(&self) -> Bideg22Form<f64> {
        Bideg22Form::new(self.coeff.clone().map(|r| r.map(|c| c.to_f64())))
    }

    pub fn to_rational(&self) -> Bideg22Form<Rational> {
        Bideg22Form::new(self.coeff.clone().map(|r| r.map(|c| c.to_rational())))
    }

    /// A nonzero form always has bidegree (2,2) as a section of O(2,2); the
    /// check is that neither factor's variables drop out entirely.
    pub fn has_full_bidegree(&self) -> bool {
        let st_used = self.st_coefficients().iter().any(|f| !f.is_zero());
        let uv_used = self.uv_coefficients().iter().any(|f| !f.is_zero());
        st_used && uv_used
    }

    /// Polynomial text such as `s^2*u^2 - 3*s^2*v^2`.
    pub fn to_polynomial_string(&self) -> String {
        let st = ["s^2", "s*t", "t^2"];
        let uv = ["u^2", "u*v", "v^2"];
        let mut out = String::new();
        for i in 0..3 {
            for j in 0..3 {
                let c = &self.coeff[i][j];
                if c.is_zero() {
                    continue;
                }
                let text = if S::EXACT { rational_string(&c.to_rational()) } else { format!("{}", c.to_f64()) };
                let (neg, mag) = match text.strip_prefix('-') {
                    Some(m) => (true, m.to_string()),
                    None => (false, text),
                };
                if out.is_empty() {
                    if neg {
                        out.push('-');
                    }
                } else {
                    out.push_str(if neg { " - " } else { " + " });
                }
                if mag != "1" {
                    out.push_str(&mag);
                    out.push('*');
                }
                out.push_str(st[i]);
                out.push('*');
                out.push_str(uv[j]);
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

/// Linear form `[a, b]` for `a s + b t`, times another: quadratic `[.,.,.]`.
fn mul_linear<S: Scalar>(p: &[S; 2], q: &[S; 2]) -> [S; 3] {
    [
        p[0].clone() * q[0].clone(),
        p[0].clone() * q[1].clone() + p[1].clone() * q[0].clone(),
        p[1].clone() * q[1].clone(),
    ]
}

/// Rows `d/ds f` and `d/dt f` of a conic, each entry a linear form in `(s, t)`.
fn derivative_rows<S: Scalar>(pc: &ParametrizedConic<S>) -> [[[S; 2]; 4]; 2] {
    let two = S::from_i64(2);
    let ds = pc.forms.clone().map(|[a, b, _]| [two.clone() * a, b]);
    let dt = pc.forms.clone().map(|[_, b, c]| [b, two.clone() * c]);
    [ds, dt]
}

/// The edge form `det[d_s f1; d_t f1; d_u f2; d_v f2]`, expanded by the
/// generalized Laplace rule along the first two rows.
pub fn edge_form<S: Scalar>(
    pc1: &ParametrizedConic<S>,
    pc2: &ParametrizedConic<S>,
) -> Result<Bideg22Form<S>, EdgeError> {
    let [a0, a1] = derivative_rows(pc1);
    let [b0, b1] = derivative_rows(pc2);
    let minor = |r0: &[[S; 2]; 4], r1: &[[S; 2]; 4], c0: usize, c1: usize| -> [S; 3] {
        let x = mul_linear(&r0[c0], &r1[c1]);
        let y = mul_linear(&r0[c1], &r1[c0]);
        std::array::from_fn(|k| x[k].clone() - y[k].clone())
    };
    let terms: [((usize, usize), (usize, usize), bool); 6] = [
        ((0, 1), (2, 3), false),
        ((0, 2), (1, 3), true),
        ((0, 3), (1, 2), false),
        ((1, 2), (0, 3), false),
        ((1, 3), (0, 2), true),
        ((2, 3), (0, 1), false),
    ];
    let mut coeff: [[S; 3]; 3] = std::array::from_fn(|_| std::array::from_fn(|_| S::zero()));
    for ((c0, c1), (d0, d1), neg) in terms {
        let top = minor(&a0, &a1, c0, c1);
        let bottom = minor(&b0, &b1, d0, d1);
        for i in 0..3 {
            for j in 0..3 {
                let p = top[i].clone() * bottom[j].clone();
                coeff[i][j] = if neg { coeff[i][j].clone() - p } else { coeff[i][j].clone() + p };
            }
        }
    }
    let f = Bideg22Form::new(coeff);
    if f.is_zero() {
        return Err(EdgeError::CoplanarConics);
    }
    Ok(f)
}

/// Discriminant quartic of one projection and its roots.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BranchData<S> {
    /// `B^2 - 4 A C` as a binary quartic.
    pub quartic: BinaryForm<S>,
    /// Distinct roots with multiplicities (complex, possibly at infinity).
    pub roots: Vec<RootWithMultiplicity>,
    /// Number of distinct real roots.
    pub real_count: usize,
    /// Root multiplicities, largest first, e.g. `[2, 1, 1]`; decided exactly.
    pub pattern: Vec<usize>,
}

impl<S: Scalar> BranchData<S> {
    fn from_quartic(quartic: BinaryForm<S>) -> Self {
        let exact = quartic.to_rational();
        let roots = quartic.roots();
        let (real_count, pattern) = if exact.is_zero() {
            (0, Vec::new())
        } else {
            (exact.count_real_roots(), exact.multiplicity_pattern())
        };
        BranchData { quartic, roots, real_count, pattern }
    }

    /// Real roots as unit vectors `(s, t)`, ordered by angle in `[0, pi)`.
    pub fn real_params(&self) -> Vec<(f64, f64)> {
        let mut out: Vec<(f64, f64)> = self
            .roots
            .iter()
            .filter(|r| r.root.is_real(1e-9))
            .map(|r| r.root.real_st())
            .collect();
        out.sort_by(|a, b| projective_angle(*a).total_cmp(&projective_angle(*b)));
        out
    }
}

/// Angle of the projective point `(s:t)` in `[0, pi)`.
pub fn projective_angle((s, t): (f64, f64)) -> f64 {
    let a = t.atan2(s);
    a.rem_euclid(std::f64::consts::PI)
}

fn discriminant_of<S: Scalar>([a, b, c]: [BinaryForm<S>; 3]) -> BinaryForm<S> {
    let four = S::from_i64(4);
    &(&b * &b) - &(&a * &c).scale(&four)
}

/// `Delta_(s,t)` and `Delta_(u,v)`.
pub fn discriminants<S: Scalar>(f: &Bideg22Form<S>) -> (BranchData<S>, BranchData<S>) {
    let st = discriminant_of(f.st_coefficients());
    let uv = discriminant_of(f.uv_coefficients());
    (BranchData::from_quartic(st), BranchData::from_quartic(uv))
}

/// Exact `Delta_(s,t)` of a rational form.
pub fn discriminant_st(f: &Bideg22Form<Rational>) -> BinaryForm<Rational> {
    discriminant_of(f.st_coefficients())
}
