//! Scalar field abstraction shared by the exact and floating-point code paths.
//!
//! Everything that has to make a topological decision (multiplicities, shared
//! roots, ranks) runs over [`Rational`]. Reporting, meshing and optimisation
//! run over `f64`. Float inputs that reach an exact decision procedure are
//! snapped to the simplest rational within [`SNAP_TOLERANCE`].

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, One, Signed, ToPrimitive, Zero};

/// Arbitrary precision rational number.
pub type Rational = BigRational;

/// Absolute tolerance for float comparisons unless an operation overrides it.
pub const FLOAT_TOLERANCE: f64 = 1e-9;

/// Float inputs are rationalised to the simplest fraction within this distance.
pub const SNAP_TOLERANCE: f64 = 1e-9;

pub trait Scalar:
    Clone + Debug + PartialEq + PartialOrd + Num + Signed + Send + Sync + 'static
{
    /// True when arithmetic is error free and equality is decidable.
    const EXACT: bool;

    fn from_i64(v: i64) -> Self;
    fn from_rational(q: &Rational) -> Self;
    fn to_f64(&self) -> f64;
    /// Exact value for rationals; snapped value for floats.
    fn to_rational(&self) -> Rational;
    /// `== 0` in exact mode, `|x| <= FLOAT_TOLERANCE` in float mode.
    fn is_negligible(&self) -> bool;
    /// Square root when it exists in the field (perfect squares for rationals).
    fn sqrt_checked(&self) -> Option<Self>;

    fn from_f64_lossy(v: f64) -> Self {
        Self::from_rational(&snap(v))
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn from_rational(q: &Rational) -> Self {
        rational_to_f64(q)
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn to_rational(&self) -> Rational {
        snap(*self)
    }

    fn is_negligible(&self) -> bool {
        self.abs() <= FLOAT_TOLERANCE
    }

    fn sqrt_checked(&self) -> Option<Self> {
        if *self >= 0.0 {
            Some(self.sqrt())
        } else if *self >= -FLOAT_TOLERANCE {
            Some(0.0)
        } else {
            None
        }
    }

    fn from_f64_lossy(v: f64) -> Self {
        v
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn from_i64(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }

    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }

    fn to_f64(&self) -> f64 {
        rational_to_f64(self)
    }

    fn to_rational(&self) -> Rational {
        self.clone()
    }

    fn is_negligible(&self) -> bool {
        self.is_zero()
    }

    fn sqrt_checked(&self) -> Option<Self> {
        rational_sqrt(self)
    }
}

/// Exact square root of a non-negative rational, if it is a perfect square.
pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer();
    let d = q.denom();
    let sn = n.sqrt();
    let sd = d.sqrt();
    if &(&sn * &sn) == n && &(&sd * &sd) == d {
        Some(Rational::new(sn, sd))
    } else {
        None
    }
}

pub fn rational_to_f64(q: &Rational) -> f64 {
    if let Some(v) = ToPrimitive::to_f64(q) {
        if v.is_finite() {
            return v;
        }
    }
    // Scale huge numerators/denominators down before dividing.
    let n = q.numer();
    let d = q.denom();
    let shift = n.bits().max(d.bits()).saturating_sub(1000) as usize;
    let ns: BigInt = n >> shift;
    let ds: BigInt = d >> shift;
    ns.to_f64().unwrap_or(f64::NAN) / ds.to_f64().unwrap_or(f64::NAN)
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rint(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Simplest rational within [`SNAP_TOLERANCE`] of `x` (continued-fraction walk).
pub fn snap(x: f64) -> Rational {
    snap_within(x, SNAP_TOLERANCE)
}

pub fn snap_within(x: f64, tol: f64) -> Rational {
    assert!(x.is_finite(), "cannot rationalise a non-finite value");
    if x == x.trunc() && x.abs() < 9.0e15 {
        return Rational::from_integer(BigInt::from(x as i64));
    }
    let exact = Rational::from_f64(x).expect("finite float");
    let tol_q = Rational::from_f64(tol).expect("finite tolerance");
    // Convergents p_k/q_k of the exact binary value.
    let (mut p0, mut q0) = (BigInt::zero(), BigInt::one());
    let (mut p1, mut q1) = (BigInt::one(), BigInt::zero());
    let mut rem = exact.clone();
    loop {
        let a = rem.floor().to_integer();
        let p2 = &a * &p1 + &p0;
        let q2 = &a * &q1 + &q0;
        let cand = Rational::new(p2.clone(), q2.clone());
        if (&cand - &exact).abs() <= tol_q {
            return cand;
        }
        let frac = &rem - Rational::from_integer(a);
        if frac.is_zero() {
            return cand;
        }
        rem = frac.recip();
        p0 = std::mem::replace(&mut p1, p2);
        q0 = std::mem::replace(&mut q1, q2);
    }
}

/// Parses `"3"`, `"-1/3"`, `"0.125"` or `"1e-3"` into an exact rational.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    if let Some((n, d)) = text.split_once('/') {
        let n = parse_rational(n)?;
        let d = parse_rational(d)?;
        if d.is_zero() {
            return None;
        }
        return Some(n / d);
    }
    let (mantissa, exponent) = match text.find(['e', 'E']) {
        Some(i) => (&text[..i], text[i + 1..].parse::<i32>().ok()?),
        None => (text, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let all = format!("{int_part}{frac_part}");
    let numer = BigInt::from_str_radix(if all.is_empty() { "0" } else { &all }, 10).ok()?;
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let mut q = if scale >= 0 {
        Rational::from_integer(numer * num_traits::pow(ten, scale as usize))
    } else {
        Rational::new(numer, num_traits::pow(ten, (-scale) as usize))
    };
    if neg {
        q = -q;
    }
    Some(q)
}

/// Compact display: `"3"`, `"-2/5"`.
pub fn rational_string(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Least common multiple of denominators, used to clear fractions.
pub fn denominator_lcm<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}
