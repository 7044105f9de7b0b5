//! Dense univariate polynomials over a [`Scalar`] field.
//!
//! Exact-only algorithms (gcd, square-free decomposition, Sturm sequences) are
//! provided for `Poly<Rational>`; numeric root finding works on `f64`
//! coefficients.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Signed, Zero};

use crate::scalar::{rational_to_f64, Rational, Scalar};

/// Coefficients in ascending order: `coeffs[i]` multiplies `x^i`.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly<S> {
    coeffs: Vec<S>,
}

impl<S: Scalar> Poly<S> {
    pub fn new(mut coeffs: Vec<S>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: S) -> Self {
        Poly::new(vec![c])
    }

    /// `x - r`
    pub fn linear_root(r: S) -> Self {
        Poly::new(vec![-r, S::one()])
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&S> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> S {
        self.coeffs.get(i).cloned().unwrap_or_else(S::zero)
    }

    pub fn eval(&self, x: &S) -> S {
        self.coeffs
            .iter()
            .rev()
            .fold(S::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64())
    }

    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::zero(), |acc, c| acc * z + c.to_f64())
    }

    pub fn derivative(&self) -> Self {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.clone() * S::from_i64(i as i64))
                .collect(),
        )
    }

    pub fn scale(&self, k: &S) -> Self {
        Poly::new(self.coeffs.iter().map(|c| c.clone() * k.clone()).collect())
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(lc) => {
                let inv = S::one() / lc.clone();
                self.scale(&inv)
            }
            None => self.clone(),
        }
    }

    pub fn to_f64(&self) -> Poly<f64> {
        Poly::new(self.coeffs.iter().map(Scalar::to_f64).collect())
    }

    pub fn to_rational(&self) -> Poly<Rational> {
        Poly::new(self.coeffs.iter().map(Scalar::to_rational).collect())
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lc = divisor.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![S::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dd].clone() / lc.clone();
            if !c.is_zero() {
                for (j, dc) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] = rem[k + j].clone() - c.clone() * dc.clone();
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Poly::new(quot), Poly::new(rem))
    }

    pub fn pow(&self, e: usize) -> Self {
        (0..e).fold(Poly::constant(S::one()), |acc, _| &acc * self)
    }
}

impl<S: Scalar> Add for &Poly<S> {
    type Output = Poly<S>;
    fn add(self, rhs: &Poly<S>) -> Poly<S> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<S: Scalar> Sub for &Poly<S> {
    type Output = Poly<S>;
    fn sub(self, rhs: &Poly<S>) -> Poly<S> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<S: Scalar> Mul for &Poly<S> {
    type Output = Poly<S>;
    fn mul(self, rhs: &Poly<S>) -> Poly<S> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![S::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(out)
    }
}

impl<S: Scalar> Neg for &Poly<S> {
    type Output = Poly<S>;
    fn neg(self) -> Poly<S> {
        Poly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

impl Poly<Rational> {
    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.primitive_rescale();
        }
        a.monic()
    }

    /// Rescales to keep coefficient growth in check; result is a unit multiple.
    fn primitive_rescale(self) -> Self {
        match self.leading() {
            Some(lc) if !lc.is_zero() => self.monic(),
            _ => self,
        }
    }

    pub fn exact_div(&self, divisor: &Self) -> Self {
        let (q, r) = self.div_rem(divisor);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Yun's square-free decomposition: `self = c * prod f_i^i`, returned as
    /// `(f_i, i)` pairs with non-constant monic `f_i`.
    pub fn squarefree_decomposition(&self) -> Vec<(Self, usize)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let f = self.monic();
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.exact_div(&a0);
        let mut c = df.exact_div(&a0);
        let mut d = &c - &b.derivative();
        let mut i = 1;
        loop {
            if b.degree() == Some(0) {
                break;
            }
            let a = b.gcd(&d);
            if a.degree().unwrap_or(0) > 0 {
                out.push((a.clone(), i));
            }
            b = b.exact_div(&a);
            c = d.exact_div(&a);
            d = &c - &b.derivative();
            i += 1;
            if i > 64 {
                break;
            }
        }
        out
    }

    /// Square-free part (monic).
    pub fn squarefree_part(&self) -> Self {
        self.squarefree_decomposition()
            .into_iter()
            .fold(Poly::constant(Rational::one()), |acc, (f, _)| &acc * &f)
    }

    /// Sturm sequence of a square-free polynomial.
    pub fn sturm_sequence(&self) -> Vec<Self> {
        let mut seq = vec![self.clone(), self.derivative()];
        while let Some(last) = seq.last() {
            if last.is_zero() || last.degree() == Some(0) {
                break;
            }
            let prev = &seq[seq.len() - 2];
            let (_, r) = prev.div_rem(last);
            if r.is_zero() {
                break;
            }
            let neg = -&r;
            // Keep signs, drop size.
            let lc = neg.leading().unwrap().abs();
            seq.push(neg.scale(&lc.recip()));
        }
        seq.retain(|p| !p.is_zero());
        seq
    }

    /// Real roots of the polynomial (any multiplicity), isolated exactly and
    /// refined to `f64`.
    pub fn real_roots(&self) -> Vec<RealRoot> {
        let mut roots = Vec::new();
        for (factor, mult) in self.squarefree_decomposition() {
            for mut r in isolate_squarefree(&factor) {
                r.multiplicity = mult;
                roots.push(r);
            }
        }
        roots.sort_by(|a, b| a.value.total_cmp(&b.value));
        roots
    }

    /// Number of distinct real roots.
    pub fn count_real_roots(&self) -> usize {
        let sf = self.squarefree_part();
        if sf.degree().unwrap_or(0) == 0 {
            return 0;
        }
        let seq = sf.sturm_sequence();
        let b = cauchy_bound(&sf) + Rational::one();
        sign_changes_at(&seq, &-b.clone()) - sign_changes_at(&seq, &b)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RealRoot {
    pub value: f64,
    pub multiplicity: usize,
    /// Present when the root is rational.
    pub exact: Option<Rational>,
}

fn cauchy_bound(p: &Poly<Rational>) -> Rational {
    let lc = p.leading().unwrap().abs();
    let m = p.coeffs[..p.coeffs.len() - 1]
        .iter()
        .map(|c| c.abs() / lc.clone())
        .fold(Rational::zero(), |a, b| if b > a { b } else { a });
    Rational::one() + m
}

fn sign_changes_at(seq: &[Poly<Rational>], x: &Rational) -> usize {
    let mut changes = 0;
    let mut last = 0i8;
    for p in seq {
        let v = p.eval(x);
        let s = if v.is_positive() {
            1
        } else if v.is_negative() {
            -1
        } else {
            0
        };
        if s != 0 {
            if last != 0 && s != last {
                changes += 1;
            }
            last = s;
        }
    }
    changes
}

fn isolate_squarefree(p: &Poly<Rational>) -> Vec<RealRoot> {
    let deg = p.degree().unwrap_or(0);
    if deg == 0 {
        return Vec::new();
    }
    if deg == 1 {
        let r = -p.coeff(0) / p.coeff(1);
        return vec![RealRoot {
            value: rational_to_f64(&r),
            multiplicity: 1,
            exact: Some(r),
        }];
    }
    let seq = p.sturm_sequence();
    let b = cauchy_bound(p);
    let mut out = Vec::new();
    let mut stack = vec![(-b.clone(), b)];
    let half = Rational::new(1.into(), 2.into());
    while let Some((lo, hi)) = stack.pop() {
        // Roots in (lo, hi].
        let n = sign_changes_at(&seq, &lo) - sign_changes_at(&seq, &hi);
        if n == 0 {
            continue;
        }
        if p.eval(&hi).is_zero() {
            out.push(RealRoot {
                value: rational_to_f64(&hi),
                multiplicity: 1,
                exact: Some(hi.clone()),
            });
            if n > 1 {
                let mid = (&lo + &hi) * &half;
                stack.push((lo, mid.clone()));
                stack.push((mid, hi));
                // The root at `hi` is re-found in the right half; dedup below.
            }
            continue;
        }
        if n == 1 {
            out.push(refine_isolated(p, lo, hi));
            continue;
        }
        let mid = (&lo + &hi) * &half;
        stack.push((lo, mid.clone()));
        stack.push((mid, hi));
    }
    out.sort_by(|a, b| a.value.total_cmp(&b.value));
    out.dedup_by(|a, b| a.exact.is_some() && a.exact == b.exact);
    out
}

/// Bisection on a sign change until the bracket is below double precision,
/// then a final float Newton step.
fn refine_isolated(p: &Poly<Rational>, mut lo: Rational, mut hi: Rational) -> RealRoot {
    let half = Rational::new(1.into(), 2.into());
    let mut slo = p.eval(&lo).signum();
    if slo.is_zero() {
        // A root exactly at lo belongs to the previous interval; just right of
        // it p has the sign of p' (p is square-free).
        slo = p.derivative().eval(&lo).signum();
    }
    for _ in 0..200 {
        let width = rational_to_f64(&(&hi - &lo));
        let scale = rational_to_f64(&hi).abs().max(1.0);
        if width <= scale * 1e-17 {
            break;
        }
        let mid = (&lo + &hi) * &half;
        let sm = p.eval(&mid).signum();
        if sm.is_zero() {
            return RealRoot {
                value: rational_to_f64(&mid),
                multiplicity: 1,
                exact: Some(mid),
            };
        }
        if sm == slo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let value = rational_to_f64(&((&lo + &hi) * &half));
    // Rational roots with modest denominators are recovered exactly.
    let guess = crate::scalar::snap_within(value, value.abs().max(1.0) * 1e-14);
    let exact = (guess >= lo && guess <= hi && p.eval(&guess).is_zero()).then_some(guess);
    RealRoot {
        value,
        multiplicity: 1,
        exact,
    }
}

/// All complex roots of a polynomial with float coefficients by the
/// Aberth-Ehrlich iteration followed by Newton polishing.
pub fn complex_roots(p: &Poly<f64>) -> Vec<Complex64> {
    let Some(n) = p.degree() else {
        return Vec::new();
    };
    if n == 0 {
        return Vec::new();
    }
    let lc = *p.leading().unwrap();
    let monic: Vec<f64> = p.coeffs.iter().map(|c| c / lc).collect();
    if n == 1 {
        return vec![Complex64::new(-monic[0], 0.0)];
    }
    if n == 2 {
        return quadratic_roots(monic[0], monic[1], 1.0).to_vec();
    }
    let bound = 1.0 + monic[..n].iter().fold(0.0f64, |m, c| m.max(c.abs()));
    let radius = bound.min(
        // Fujiwara-type bound is usually much tighter.
        2.0 * (0..n)
            .map(|k| monic[k].abs().powf(1.0 / (n - k) as f64))
            .fold(0.0f64, f64::max),
    );
    let radius = if radius > 0.0 { radius } else { 1.0 };
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let ang = 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / n as f64 + 0.4;
            Complex64::from_polar(radius * 0.5 + 0.1, ang)
        })
        .collect();
    let pc = Poly::new(monic.clone());
    let dpc = pc.derivative();
    for _ in 0..500 {
        let mut max_step = 0.0f64;
        for i in 0..n {
            let pv = pc.eval_complex(z[i]);
            let dv = dpc.eval_complex(z[i]);
            if pv.norm() == 0.0 {
                continue;
            }
            let ratio = pv / dv;
            let sum: Complex64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| {
                    let d = z[i] - z[j];
                    if d.norm() == 0.0 {
                        Complex64::new(1e100, 0.0)
                    } else {
                        d.inv()
                    }
                })
                .sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * sum);
            if step.is_finite() {
                z[i] -= step;
                max_step = max_step.max(step.norm() / z[i].norm().max(1.0));
            }
        }
        if max_step < 1e-16 {
            break;
        }
    }
    for zi in z.iter_mut() {
        for _ in 0..3 {
            let dv = dpc.eval_complex(*zi);
            if dv.norm() == 0.0 {
                break;
            }
            let step = pc.eval_complex(*zi) / dv;
            if !step.is_finite() || step.norm() > 1e-6 * zi.norm().max(1.0) {
                break;
            }
            *zi -= step;
        }
    }
    z
}

/// Roots of `c + b x + a x^2` in a cancellation-free form (`a != 0`).
pub fn quadratic_roots(c: f64, b: f64, a: f64) -> [Complex64; 2] {
    let disc = b * b - 4.0 * a * c;
    if disc >= 0.0 {
        let sq = disc.sqrt();
        let q = -0.5 * (b + b.signum_nonzero() * sq);
        let r1 = q / a;
        let r2 = if q != 0.0 { c / q } else { -b / (2.0 * a) - r1 };
        [Complex64::new(r1, 0.0), Complex64::new(r2, 0.0)]
    } else {
        let re = -b / (2.0 * a);
        let im = (-disc).sqrt() / (2.0 * a.abs());
        [Complex64::new(re, im), Complex64::new(re, -im)]
    }
}

trait SignumNonzero {
    fn signum_nonzero(self) -> f64;
}

impl SignumNonzero for f64 {
    fn signum_nonzero(self) -> f64 {
        if self < 0.0 {
            -1.0
        } else {
            1.0
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, rint};

    fn qp(c: &[i64]) -> Poly<Rational> {
        Poly::new(c.iter().map(|&v| rint(v)).collect())
    }

    #[test]
    fn gcd_of_shared_factor() {
        // (x-1)(x-2) and (x-1)(x+3)
        let a = qp(&[2, -3, 1]);
        let b = qp(&[-3, 2, 1]);
        assert_eq!(a.gcd(&b), qp(&[-1, 1]));
    }

    #[test]
    fn yun_decomposition() {
        // (x-1)^2 (x+2)^3 (x^2+1)
        let f = &(&qp(&[-1, 1]).pow(2) * &qp(&[2, 1]).pow(3)) * &qp(&[1, 0, 1]);
        let sf = f.squarefree_decomposition();
        assert_eq!(
            sf,
            vec![(qp(&[1, 0, 1]), 1), (qp(&[-1, 1]), 2), (qp(&[2, 1]), 3)]
        );
    }

    #[test]
    fn sturm_counts_and_isolates() {
        // (x^2-2)(x-1/3)(x^2+1)
        let f = &(&qp(&[-2, 0, 1]) * &Poly::new(vec![rat(-1, 3), rint(1)])) * &qp(&[1, 0, 1]);
        assert_eq!(f.count_real_roots(), 3);
        let roots = f.real_roots();
        let vals: Vec<f64> = roots.iter().map(|r| r.value).collect();
        assert!((vals[0] + 2f64.sqrt()).abs() < 1e-15);
        assert!((vals[1] - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(roots[1].exact, Some(rat(1, 3)));
        assert!((vals[2] - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn real_roots_keep_multiplicity() {
        let f = &qp(&[-1, 1]).pow(2) * &qp(&[3, 1]);
        let roots = f.real_roots();
        assert_eq!(roots.len(), 2);
        assert_eq!(roots[0].multiplicity, 1);
        assert_eq!(roots[1].multiplicity, 2);
    }

    #[test]
    fn aberth_finds_all_roots() {
        // (x-1)(x-2)(x-3)(x^2+4)
        let f = (&(&qp(&[-1, 1]) * &qp(&[-2, 1])) * &(&qp(&[-3, 1]) * &qp(&[4, 0, 1]))).to_f64();
        let roots = complex_roots(&f);
        assert_eq!(roots.len(), 5);
        let expected = [
            Complex64::new(0.0, -2.0),
            Complex64::new(0.0, 2.0),
            Complex64::new(1.0, 0.0),
            Complex64::new(2.0, 0.0),
            Complex64::new(3.0, 0.0),
        ];
        for e in expected {
            assert!(roots.iter().any(|r| (r - e).norm() < 1e-12), "missing {e}");
        }
    }
}
