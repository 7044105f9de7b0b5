//! Homogeneous binary forms `sum c_k s^(d-k) t^k`.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::poly::{complex_roots, Poly};
use crate::scalar::{Rational, Scalar};

/// `coeffs[k]` multiplies `s^(d-k) t^k`; the formal degree `d` is
/// `coeffs.len() - 1` and is kept even when leading coefficients vanish.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BinaryForm<S> {
    coeffs: Vec<S>,
}

/// A point of the projective line, as a ratio `s/t`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum ProjectiveRoot {
    Finite(Complex64Ser),
    Infinity,
}

/// Serializable complex number.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Complex64Ser {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for Complex64Ser {
    fn from(z: Complex64) -> Self {
        Complex64Ser { re: z.re, im: z.im }
    }
}

impl From<Complex64Ser> for Complex64 {
    fn from(z: Complex64Ser) -> Self {
        Complex64::new(z.re, z.im)
    }
}

impl ProjectiveRoot {
    pub fn finite(z: Complex64) -> Self {
        ProjectiveRoot::Finite(z.into())
    }

    /// Homogeneous coordinates `(s, t)`.
    pub fn homogeneous(&self) -> (Complex64, Complex64) {
        match self {
            ProjectiveRoot::Finite(z) => (Complex64::new(z.re, z.im), Complex64::new(1.0, 0.0)),
            ProjectiveRoot::Infinity => (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)),
        }
    }

    pub fn is_real(&self, tol: f64) -> bool {
        match self {
            ProjectiveRoot::Finite(z) => z.im.abs() <= tol * z.re.abs().max(1.0),
            ProjectiveRoot::Infinity => true,
        }
    }

    /// Unit real homogeneous coordinates for a real root.
    pub fn real_st(&self) -> (f64, f64) {
        match self {
            ProjectiveRoot::Finite(z) => {
                let n = (z.re * z.re + 1.0).sqrt();
                (z.re / n, 1.0 / n)
            }
            ProjectiveRoot::Infinity => (1.0, 0.0),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RootWithMultiplicity {
    pub root: ProjectiveRoot,
    pub multiplicity: usize,
}

impl<S: Scalar> BinaryForm<S> {
    pub fn new(coeffs: Vec<S>) -> Self {
        assert!(!coeffs.is_empty(), "a binary form needs at least one coefficient");
        BinaryForm { coeffs }
    }

    pub fn zero(degree: usize) -> Self {
        BinaryForm::new(vec![S::zero(); degree + 1])
    }

    /// `a s + b t`
    pub fn linear(a: S, b: S) -> Self {
        BinaryForm::new(vec![a, b])
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &S {
        &self.coeffs[k]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn eval(&self, s: &S, t: &S) -> S {
        let d = self.degree();
        self.coeffs
            .iter()
            .enumerate()
            .fold(S::zero(), |acc, (k, c)| {
                acc + c.clone() * pow(s, d - k) * pow(t, k)
            })
    }

    pub fn eval_f64(&self, s: f64, t: f64) -> f64 {
        let d = self.degree();
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| c.to_f64() * s.powi((d - k) as i32) * t.powi(k as i32))
            .sum()
    }

    pub fn eval_complex(&self, s: Complex64, t: Complex64) -> Complex64 {
        let d = self.degree();
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| s.powu((d - k) as u32) * t.powu(k as u32) * c.to_f64())
            .sum()
    }

    /// `d/ds`
    pub fn d_s(&self) -> Self {
        let d = self.degree();
        if d == 0 {
            return BinaryForm::zero(0);
        }
        BinaryForm::new(
            (0..d)
                .map(|k| self.coeffs[k].clone() * S::from_i64((d - k) as i64))
                .collect(),
        )
    }

    /// `d/dt`
    pub fn d_t(&self) -> Self {
        let d = self.degree();
        if d == 0 {
            return BinaryForm::zero(0);
        }
        BinaryForm::new(
            (1..=d)
                .map(|k| self.coeffs[k].clone() * S::from_i64(k as i64))
                .collect(),
        )
    }

    pub fn scale(&self, k: &S) -> Self {
        BinaryForm::new(self.coeffs.iter().map(|c| c.clone() * k.clone()).collect())
    }

    pub fn to_f64(&self) -> BinaryForm<f64> {
        BinaryForm::new(self.coeffs.iter().map(Scalar::to_f64).collect())
    }

    pub fn to_rational(&self) -> BinaryForm<Rational> {
        BinaryForm::new(self.coeffs.iter().map(Scalar::to_rational).collect())
    }

    /// `f(x, 1)` as a polynomial in `x = s/t`.
    pub fn dehomogenize(&self) -> Poly<S> {
        let d = self.degree();
        Poly::new((0..=d).map(|j| self.coeffs[d - j].clone()).collect())
    }

    /// Inverse of [`Self::dehomogenize`] at formal degree `d`.
    pub fn from_poly(p: &Poly<S>, d: usize) -> Self {
        assert!(p.degree().unwrap_or(0) <= d, "polynomial degree exceeds form degree");
        BinaryForm::new((0..=d).map(|k| p.coeff(d - k)).collect())
    }

    /// Multiplicity of the root `(1:0)`, i.e. the power of `t` dividing the form.
    pub fn infinity_multiplicity(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// Numeric roots with multiplicities. Exact forms get their multiplicity
    /// structure from a square-free decomposition; float forms are solved
    /// directly and nearby roots are clustered.
    pub fn roots(&self) -> Vec<RootWithMultiplicity> {
        if self.is_zero() {
            return Vec::new();
        }
        if S::EXACT {
            return self.to_rational().exact_roots();
        }
        let inf = self.infinity_multiplicity();
        let mut out = Vec::new();
        if inf > 0 {
            out.push(RootWithMultiplicity {
                root: ProjectiveRoot::Infinity,
                multiplicity: inf,
            });
        }
        let p = self.dehomogenize().to_f64();
        let zs = complex_roots(&p);
        let mut clusters: Vec<(Complex64, usize)> = Vec::new();
        for z in zs {
            match clusters
                .iter_mut()
                .find(|(c, _)| (*c - z).norm() <= 1e-6 * z.norm().max(1.0))
            {
                Some(entry) => {
                    let n = entry.1 as f64;
                    entry.0 = (entry.0 * n + z) / (n + 1.0);
                    entry.1 += 1;
                }
                None => clusters.push((z, 1)),
            }
        }
        out.extend(clusters.into_iter().map(|(z, m)| RootWithMultiplicity {
            root: ProjectiveRoot::finite(z),
            multiplicity: m,
        }));
        out
    }
}

fn pow<S: Scalar>(x: &S, e: usize) -> S {
    (0..e).fold(S::one(), |acc, _| acc * x.clone())
}

impl BinaryForm<Rational> {
    /// Monic-normalised gcd of two forms (degree may be zero).
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let inf = self.infinity_multiplicity().min(other.infinity_multiplicity());
        let g = self.dehomogenize().gcd(&other.dehomogenize());
        let gd = g.degree().unwrap_or(0);
        let core = BinaryForm::from_poly(&g, gd);
        &core * &t_power(inf)
    }

    /// Exact quotient; panics (debug) if the division is inexact.
    pub fn exact_div(&self, divisor: &Self) -> Self {
        let inf = divisor.infinity_multiplicity();
        let d = self.degree() - divisor.degree();
        let q = self.dehomogenize().exact_div(&divisor.dehomogenize());
        debug_assert!(self.infinity_multiplicity() >= inf);
        BinaryForm::from_poly(&q, d)
    }

    /// `self = c * prod f_i^i` over the rationals, including powers of `t`.
    pub fn squarefree_decomposition(&self) -> Vec<(Self, usize)> {
        let inf = self.infinity_multiplicity();
        let p = self.dehomogenize();
        let mut parts: Vec<(Self, usize)> = p
            .squarefree_decomposition()
            .into_iter()
            .map(|(f, m)| {
                let d = f.degree().unwrap_or(0);
                (BinaryForm::from_poly(&f, d), m)
            })
            .collect();
        if inf > 0 {
            let t = t_power(1);
            match parts.iter_mut().find(|(_, m)| *m == inf) {
                Some(entry) => entry.0 = &entry.0 * &t,
                None => parts.push((t, inf)),
            }
        }
        parts.sort_by_key(|(_, m)| *m);
        parts
    }

    /// Root multiplicities in non-increasing order, e.g. `[2, 1, 1]`.
    pub fn multiplicity_pattern(&self) -> Vec<usize> {
        let mut pat = Vec::new();
        for (f, m) in self.squarefree_decomposition() {
            for _ in 0..f.degree() {
                pat.push(m);
            }
        }
        pat.sort_unstable_by(|a, b| b.cmp(a));
        pat
    }

    fn exact_roots(&self) -> Vec<RootWithMultiplicity> {
        let mut out = Vec::new();
        for (f, m) in self.squarefree_decomposition() {
            let inf = f.infinity_multiplicity();
            if inf > 0 {
                out.push(RootWithMultiplicity {
                    root: ProjectiveRoot::Infinity,
                    multiplicity: m,
                });
            }
            let p = f.dehomogenize();
            let mut reals = p.real_roots();
            let nreal = reals.len();
            let deg = p.degree().unwrap_or(0);
            for r in reals.drain(..) {
                out.push(RootWithMultiplicity {
                    root: ProjectiveRoot::finite(Complex64::new(r.value, 0.0)),
                    multiplicity: m,
                });
            }
            if deg > nreal {
                let zs = complex_roots(&p.to_f64());
                // Real roots are already known exactly; keep the most clearly
                // non-real upper half-plane roots and mirror them.
                let mut upper: Vec<Complex64> = zs.into_iter().filter(|z| z.im > 0.0).collect();
                upper.sort_by(|a, b| b.im.total_cmp(&a.im));
                upper.truncate((deg - nreal) / 2);
                for z in upper {
                    for w in [z, z.conj()] {
                        out.push(RootWithMultiplicity {
                            root: ProjectiveRoot::finite(w),
                            multiplicity: m,
                        });
                    }
                }
            }
        }
        out
    }

    /// Number of distinct real projective roots.
    pub fn count_real_roots(&self) -> usize {
        let inf = usize::from(self.infinity_multiplicity() > 0);
        inf + self.dehomogenize().count_real_roots()
    }

    /// True iff the form is `c * q^2` for a rational form `q`; returns `c`'s
    /// sign and `q` when so.
    pub fn as_constant_times_square(&self) -> Option<(Rational, Self)> {
        if self.is_zero() {
            return None;
        }
        let parts = self.squarefree_decomposition();
        if parts.iter().any(|(_, m)| m % 2 == 1) {
            return None;
        }
        let q = parts.iter().fold(BinaryForm::new(vec![Rational::one()]), |acc, (f, m)| {
            (0..m / 2).fold(acc, |a, _| &a * f)
        });
        let q2 = &q * &q;
        // self = c * q2; read c off any nonzero coefficient.
        let k = q2.coeffs.iter().position(|c| !c.is_zero())?;
        let c = self.coeffs[k].clone() / q2.coeffs[k].clone();
        Some((c, q))
    }
}

/// `t^k` as a form of degree k.
pub fn t_power<S: Scalar>(k: usize) -> BinaryForm<S> {
    let mut c = vec![S::zero(); k + 1];
    c[k] = S::one();
    BinaryForm::new(c)
}

impl<S: Scalar> Add for &BinaryForm<S> {
    type Output = BinaryForm<S>;
    fn add(self, rhs: &BinaryForm<S>) -> BinaryForm<S> {
        assert_eq!(self.degree(), rhs.degree(), "adding forms of different degree");
        BinaryForm::new(
            self.coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        )
    }
}

impl<S: Scalar> Sub for &BinaryForm<S> {
    type Output = BinaryForm<S>;
    fn sub(self, rhs: &BinaryForm<S>) -> BinaryForm<S> {
        assert_eq!(self.degree(), rhs.degree(), "subtracting forms of different degree");
        BinaryForm::new(
            self.coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        )
    }
}

impl<S: Scalar> Mul for &BinaryForm<S> {
    type Output = BinaryForm<S>;
    fn mul(self, rhs: &BinaryForm<S>) -> BinaryForm<S> {
        let mut out = vec![S::zero(); self.degree() + rhs.degree() + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        BinaryForm::new(out)
    }
}

impl<S: Scalar> Neg for &BinaryForm<S> {
    type Output = BinaryForm<S>;
    fn neg(self) -> BinaryForm<S> {
        BinaryForm::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

impl<S: Scalar> BinaryForm<S> {
    pub fn is_constant_one(&self) -> bool {
        self.degree() == 0 && self.coeffs[0].is_one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rint;

    fn qf(c: &[i64]) -> BinaryForm<Rational> {
        BinaryForm::new(c.iter().map(|&v| rint(v)).collect())
    }

    #[test]
    fn derivatives_obey_euler_identity() {
        // 2 f = s f_s + t f_t for a quadratic
        let f = qf(&[3, -2, 5]);
        let (s, t) = (rint(7), rint(-4));
        let lhs = f.eval(&s, &t) * rint(2);
        let rhs = f.d_s().eval(&s, &t) * s.clone() + f.d_t().eval(&s, &t) * t.clone();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn gcd_detects_root_at_infinity() {
        // s t (s - t) and t^2 (s + t)
        let a = &(&qf(&[1, 0]) * &qf(&[0, 1])) * &qf(&[1, -1]);
        let b = &(&qf(&[0, 1]) * &qf(&[0, 1])) * &qf(&[1, 1]);
        let g = a.gcd(&b);
        assert_eq!(g.degree(), 1);
        assert_eq!(g.infinity_multiplicity(), 1);
    }

    #[test]
    fn squarefree_pattern_with_infinity() {
        // -4 s^2 t^2
        let f = qf(&[0, 0, -4, 0, 0]);
        assert_eq!(f.multiplicity_pattern(), vec![2, 2]);
        let (c, q) = f.as_constant_times_square().unwrap();
        assert_eq!(&(&q * &q).scale(&c), &f);
        assert!(c < rint(0));
    }

    #[test]
    fn roots_include_infinity() {
        // t (s - 2t) (s^2 + t^2)
        let f = &(&qf(&[0, 1]) * &qf(&[1, -2])) * &qf(&[1, 0, 1]);
        let roots = f.roots();
        let total: usize = roots.iter().map(|r| r.multiplicity).sum();
        assert_eq!(total, 4);
        assert!(roots.iter().any(|r| r.root == ProjectiveRoot::Infinity));
        assert_eq!(f.count_real_roots(), 2);
    }
}
