use num_complex::Complex64;
use num_traits::Zero;
use serde::Serialize;

use super::form::{discriminant_st, discriminants, Bideg22Form};
use super::EdgeError;
use crate::binary_form::{BinaryForm, Complex64Ser, ProjectiveRoot};
use crate::geom3::{circle_parametrization, Circle, ParametrizedConic};
use crate::scalar::{Rational, Scalar};

/// Component structure of a (2,2)-curve.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind")]
pub enum CurveTag {
    SmoothGenusOne,
    NodalIrreducibleRational,
    Cuspidal,
    /// Two (1,1) components, real or complex conjugate.
    TwoOneOne { real: bool },
    TwoOnePlusZeroOne,
    OneTwoPlusOneZero,
    MixedThree,
    FourLines,
    OtherDegenerate,
}

impl CurveTag {
    pub fn label(&self) -> &'static str {
        match self {
            CurveTag::SmoothGenusOne => "smooth genus one",
            CurveTag::NodalIrreducibleRational => "nodal irreducible rational",
            CurveTag::Cuspidal => "cuspidal",
            CurveTag::TwoOneOne { real: true } => "2(1,1) real",
            CurveTag::TwoOneOne { real: false } => "2(1,1) complex conjugate",
            CurveTag::TwoOnePlusZeroOne => "(2,1)+(0,1)",
            CurveTag::OneTwoPlusOneZero => "(1,2)+(1,0)",
            CurveTag::MixedThree => "(1,1)+(0,1)+(1,0)",
            CurveTag::FourLines => "2(1,0)+2(0,1)",
            CurveTag::OtherDegenerate => "other degenerate",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum LemmaCase {
    /// `p = q`, neither tangent lies in the other plane.
    I,
    /// `p = q`, exactly one tangent lies in the other plane.
    II,
    /// `p = q`, both tangents lie in the other plane.
    III,
    /// `p != q`, exactly one tangent lies in the other plane.
    IV,
    /// `p != q`, both tangents equal the common line of the planes.
    V,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum LocalType {
    Node,
    NonNode,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SingularPoint {
    /// `(s, t)` normalised to unit length.
    pub st: [Complex64Ser; 2],
    pub uv: [Complex64Ser; 2],
    pub lemma_case: LemmaCase,
    pub local_type: LocalType,
    pub real: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CurveType {
    pub tag: CurveTag,
    /// Degree of the common `(s,t)` factor of `E`, i.e. number of (1,0) components.
    pub one_zero_components: usize,
    /// Number of (0,1) components.
    pub zero_one_components: usize,
    /// Multiplicity pattern of `Delta_(s,t)` of the residual curve.
    pub residual_pattern: Vec<usize>,
    /// Filled by [`classify_edge_curve`]; empty from [`classify_curve`].
    pub singular_points: Vec<SingularPoint>,
}

fn gcd3(f: &[BinaryForm<Rational>; 3]) -> Option<BinaryForm<Rational>> {
    let nz: Vec<&BinaryForm<Rational>> = f.iter().filter(|g| !g.is_zero()).collect();
    let first = (*nz.first()?).clone();
    Some(nz.iter().skip(1).fold(first, |acc, g| acc.gcd(g)))
}

/// Residual of `E` after dividing out `g(s,t)` and `h(u,v)`, as a grid with
/// `coeff[i][j]` multiplying `s^(da-i) t^i u^(db-j) v^j`.
fn residual(
    f: &Bideg22Form<Rational>,
    g: &BinaryForm<Rational>,
    h: &BinaryForm<Rational>,
) -> Vec<Vec<Rational>> {
    let cols: Vec<BinaryForm<Rational>> = f.st_coefficients().iter().map(|c| c.exact_div(g)).collect();
    let da = cols[0].degree();
    let rows: Vec<BinaryForm<Rational>> = (0..=da)
        .map(|i| BinaryForm::new(cols.iter().map(|c| c.coeff(i).clone()).collect()).exact_div(h))
        .collect();
    rows.iter().map(|r| r.coeffs().to_vec()).collect()
}

/// Fiber components of `E`: `E = g(s,t) h(u,v) R` with `R` free of fiber
/// factors. Returns `(g, h, R)`, the grid of `R` indexed as in [`residual`].
pub fn split_fibers(f: &Bideg22Form<Rational>) -> Option<(BinaryForm<Rational>, BinaryForm<Rational>, Vec<Vec<Rational>>)> {
    if f.is_zero() {
        return None;
    }
    let g = gcd3(&f.st_coefficients())?;
    let h = gcd3(&f.uv_coefficients())?;
    let r = residual(f, &g, &h);
    Some((g, h, r))
}

/// Component type of a (2,2)-form. Float forms are rationalised first.
pub fn classify_curve<S: Scalar>(f: &Bideg22Form<S>) -> Result<CurveType, EdgeError> {
    let e = f.to_rational();
    if e.is_zero() {
        return Err(EdgeError::ZeroForm);
    }
    let g = gcd3(&e.st_coefficients()).expect("nonzero form");
    let h = gcd3(&e.uv_coefficients()).expect("nonzero form");
    let (a, b) = (g.degree(), h.degree());
    let res = residual(&e, &g, &h);
    let delta = (res.len() == 3 && res[0].len() == 3).then(|| {
        discriminant_st(&Bideg22Form::new(std::array::from_fn(|i| {
            std::array::from_fn(|j| res[i][j].clone())
        })))
    });
    let pattern = match &delta {
        Some(d) if !d.is_zero() => d.multiplicity_pattern(),
        _ => Vec::new(),
    };
    let tag = match (a, b) {
        (0, 0) => match pattern.as_slice() {
            [1, 1, 1, 1] => CurveTag::SmoothGenusOne,
            [2, 1, 1] => CurveTag::NodalIrreducibleRational,
            [3, 1] => CurveTag::Cuspidal,
            [2, 2] | [4] => match delta.as_ref().and_then(|d| d.as_constant_times_square()) {
                Some((c, _)) => CurveTag::TwoOneOne { real: c > Rational::zero() },
                None => CurveTag::OtherDegenerate,
            },
            _ => CurveTag::OtherDegenerate,
        },
        (0, 1) => CurveTag::TwoOnePlusZeroOne,
        (1, 0) => CurveTag::OneTwoPlusOneZero,
        (1, 1) => CurveTag::MixedThree,
        (2, 2) => CurveTag::FourLines,
        _ => CurveTag::OtherDegenerate,
    };
    Ok(CurveType {
        tag,
        one_zero_components: a,
        zero_one_components: b,
        residual_pattern: pattern,
        singular_points: Vec::new(),
    })
}

fn conic_eval(pc: &ParametrizedConic<f64>, s: Complex64, t: Complex64) -> [Complex64; 4] {
    pc.forms.map(|[a, b, c]| s * s * a + s * t * b + t * t * c)
}

fn conic_ds(pc: &ParametrizedConic<f64>, s: Complex64, t: Complex64) -> [Complex64; 4] {
    pc.forms.map(|[a, b, _]| s * (2.0 * a) + t * b)
}

fn conic_dt(pc: &ParametrizedConic<f64>, s: Complex64, t: Complex64) -> [Complex64; 4] {
    pc.forms.map(|[_, b, c]| s * b + t * (2.0 * c))
}

fn cnorm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn proportional(p: &[Complex64; 4], q: &[Complex64; 4], tol: f64) -> bool {
    let scale = cnorm(p) * cnorm(q);
    (0..4).all(|i| (0..i).all(|j| (p[i] * q[j] - p[j] * q[i]).norm() <= tol * scale))
}

fn in_plane(plane: &[f64; 4], x: &[Complex64; 4], tol: f64) -> bool {
    let dot: Complex64 = plane.iter().zip(x).map(|(l, z)| z * *l).sum();
    let pn = plane.iter().map(|l| l * l).sum::<f64>().sqrt();
    dot.norm() <= tol * pn * cnorm(x)
}

fn unit_pair((a, b): (Complex64, Complex64)) -> (Complex64, Complex64) {
    let n = (a.norm_sqr() + b.norm_sqr()).sqrt();
    (a / n, b / n)
}

/// Singular points of the edge form of `(c1, c2)` built from the default
/// circle parametrizations.
pub fn singular_points<S: Scalar>(
    f: &Bideg22Form<S>,
    c1: &Circle<S>,
    c2: &Circle<S>,
) -> Vec<SingularPoint> {
    singular_points_of(f, &circle_parametrization(c1), &circle_parametrization(c2))
}

/// Singular points of `f`, the edge form of the conics `pc1`, `pc2`.
///
/// Candidates pair roots of the two discriminants; a candidate is kept when
/// `E` and its gradient vanish there.
pub fn singular_points_of<S: Scalar>(
    f: &Bideg22Form<S>,
    pc1: &ParametrizedConic<S>,
    pc2: &ParametrizedConic<S>,
) -> Vec<SingularPoint> {
    const TOL: f64 = 1e-8;
    let (dst, duv) = discriminants(&f.to_rational());
    if dst.quartic.is_zero() || duv.quartic.is_zero() {
        return Vec::new();
    }
    let scale = f.max_abs();
    let l1 = pc1.plane_relation().map(|q| q.to_f64());
    let l2 = pc2.plane_relation().map(|q| q.to_f64());
    let (p1, p2) = (pc1.to_f64(), pc2.to_f64());
    let mut out = Vec::new();
    for rs in &dst.roots {
        for ru in &duv.roots {
            let (s, t) = unit_pair(rs.root.homogeneous());
            let (u, v) = unit_pair(ru.root.homogeneous());
            let (val, g, h) = f.jet_complex([s, t, u, v]);
            if val.norm() > TOL * scale || g.iter().any(|d| d.norm() > TOL * scale) {
                continue;
            }
            // Affine chart: dehomogenize by the larger coordinate of each pair.
            let x = if s.norm() >= t.norm() { 1 } else { 0 };
            let y = if u.norm() >= v.norm() { 3 } else { 2 };
            let det = h[x][x] * h[y][y] - h[x][y] * h[x][y];
            let local_type = if det.norm() > 1e-6 * scale * scale { LocalType::Node } else { LocalType::NonNode };
            let p = conic_eval(&p1, s, t);
            let q = conic_eval(&p2, u, v);
            let same = proportional(&p, &q, 1e-7);
            let tp_in_2 = in_plane(&l2, &conic_ds(&p1, s, t), 1e-7) && in_plane(&l2, &conic_dt(&p1, s, t), 1e-7);
            let tq_in_1 = in_plane(&l1, &conic_ds(&p2, u, v), 1e-7) && in_plane(&l1, &conic_dt(&p2, u, v), 1e-7);
            let lemma_case = match (same, tp_in_2, tq_in_1) {
                (true, false, false) => LemmaCase::I,
                (true, true, true) => LemmaCase::III,
                (true, _, _) => LemmaCase::II,
                (false, true, true) => LemmaCase::V,
                (false, true, false) | (false, false, true) => LemmaCase::IV,
                (false, false, false) => continue,
            };
            let real = rs.root.is_real(1e-9) && ru.root.is_real(1e-9);
            out.push(SingularPoint {
                st: [s.into(), t.into()],
                uv: [u.into(), v.into()],
                lemma_case,
                local_type,
                real,
            });
        }
    }
    out
}

/// Component type plus singular points of the edge curve of two circles.
pub fn classify_edge_curve(c1: &Circle<Rational>, c2: &Circle<Rational>) -> Result<(Bideg22Form<Rational>, CurveType), EdgeError> {
    let pc1 = circle_parametrization(c1);
    let pc2 = circle_parametrization(c2);
    let f = super::edge_form(&pc1, &pc2)?;
    let mut ct = classify_curve(&f)?;
    ct.singular_points = singular_points_of(&f, &pc1, &pc2);
    Ok((f, ct))
}

fn bracket(a: (Complex64, Complex64), b: (Complex64, Complex64)) -> Complex64 {
    a.0 * b.1 - b.0 * a.1
}

/// Cross-ratio of four points of P1 in the normalisation sending
/// `(z1, z2, z4)` to `(0, 1, inf)`.
pub fn cross_ratio(z: &[ProjectiveRoot; 4]) -> Complex64 {
    let h = z.map(|r| r.homogeneous());
    (bracket(h[2], h[0]) * bracket(h[1], h[3])) / (bracket(h[2], h[3]) * bracket(h[1], h[0]))
}

/// `2^8 (l^2 - l + 1)^3 / (l^2 (l - 1)^2)`
pub fn j_from_lambda(l: Complex64) -> Complex64 {
    let one = Complex64::new(1.0, 0.0);
    let num = (l * l - l + one).powu(3) * 256.0;
    let den = l * l * (l - one) * (l - one);
    num / den
}

pub fn j_from_roots(z: &[ProjectiveRoot; 4]) -> Complex64 {
    j_from_lambda(cross_ratio(z))
}

fn four_roots(roots: &[crate::binary_form::RootWithMultiplicity]) -> Result<[ProjectiveRoot; 4], EdgeError> {
    if roots.len() != 4 || roots.iter().any(|r| r.multiplicity != 1) {
        return Err(EdgeError::NotSmoothGenusOne);
    }
    Ok(std::array::from_fn(|k| roots[k].root))
}

/// j-invariant from the branch points of the projection to the first factor.
pub fn j_invariant<S: Scalar>(f: &Bideg22Form<S>) -> Result<f64, EdgeError> {
    if classify_curve(f)?.tag != CurveTag::SmoothGenusOne {
        return Err(EdgeError::NotSmoothGenusOne);
    }
    let (dst, _) = discriminants(f);
    Ok(j_from_roots(&four_roots(&dst.roots)?).re)
}

/// j-invariant from the branch points of the projection to the second factor.
pub fn j_invariant_uv<S: Scalar>(f: &Bideg22Form<S>) -> Result<f64, EdgeError> {
    j_invariant(&f.swapped())
}
