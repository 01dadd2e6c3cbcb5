//! Scalar backends and q-combinatorial quantities.
//!
//! Every coefficient in the crate is a [`Scalar`]: either an exact rational
//! ([`Rational`], the default, with all invariants holding at exact equality) or a
//! double ([`f64`], for irrational deformation parameters). The two backends
//! are separate types, so exact and float values can never meet in one
//! computation.
//!
//! The deformation parameter lives in [`QParam`], which enforces
//! `-1 < q < 1` at construction. On top of it sit the q-integers
//! `[n]_q = 1 + q + ... + q^{n-1}`, the q-factorial `[n]_q!` and the
//! q-binomial coefficients.

use std::fmt::{Debug, Display};
use std::str::FromStr;

use num::bigint::BigInt;
use num::rational::Ratio;
use num::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact scalar: arbitrary-precision rational, always in lowest terms with
/// positive denominator (maintained by `num`).
pub type Rational = Ratio<BigInt>;

/// Coefficient field abstraction over the exact and float backends.
///
/// `Signed` pulls in the full ring/field operations plus sign queries;
/// the additions here cover conversion and rendering.
pub trait Scalar: Signed + PartialOrd + Clone + Debug + Display + 'static {
    /// True for the exact rational backend. Exactness-only assertions and
    /// the `p/d` renderings in reports key off this.
    const EXACT: bool;

    fn from_int(n: i64) -> Self;

    /// Float rendering (approximate for the exact backend).
    fn to_f64(&self) -> f64;

    /// Exact `p/d` rendering; `None` on the float backend.
    fn exact_repr(&self) -> Option<String>;

    /// Division that refuses a zero divisor instead of producing NaN.
    fn checked_div(&self, rhs: &Self) -> Option<Self>;
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn from_int(n: i64) -> Self {
        Ratio::from_integer(BigInt::from(n))
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn exact_repr(&self) -> Option<String> {
        Some(self.to_string())
    }

    fn checked_div(&self, rhs: &Self) -> Option<Self> {
        if rhs.is_zero() {
            None
        } else {
            Some(self / rhs)
        }
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_int(n: i64) -> Self {
        n as f64
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn exact_repr(&self) -> Option<String> {
        None
    }

    fn checked_div(&self, rhs: &Self) -> Option<Self> {
        if *rhs == 0.0 {
            None
        } else {
            Some(self / rhs)
        }
    }
}

/// `base^exp` by repeated multiplication, so `q^0 = 1` holds at `q = 0`.
pub fn pow<S: Scalar>(base: &S, exp: usize) -> S {
    let mut acc = S::one();
    for _ in 0..exp {
        acc = acc * base.clone();
    }
    acc
}

/// The deformation parameter, validated to lie strictly inside (-1, 1).
#[derive(Debug, Clone, PartialEq)]
pub struct QParam<S: Scalar> {
    value: S,
}

impl<S: Scalar> QParam<S> {
    pub fn new(value: S) -> Result<Self> {
        let one = S::one();
        // NaN fails both comparisons.
        if value > -one.clone() && value < one {
            Ok(QParam { value })
        } else {
            Err(Error::QOutOfRange(value.to_string()))
        }
    }

    /// The free case q = 0.
    pub fn zero() -> Self {
        QParam { value: S::zero() }
    }

    pub fn value(&self) -> &S {
        &self.value
    }

    /// `q^k`, with `q^0 = 1` even at q = 0.
    pub fn pow(&self, k: usize) -> S {
        pow(&self.value, k)
    }
}

impl QParam<Rational> {
    /// Convenience for tests and examples: q = p/d.
    pub fn from_ratio(p: i64, d: i64) -> Result<Self> {
        QParam::new(Ratio::new(BigInt::from(p), BigInt::from(d)))
    }
}

/// A parsed deformation parameter, tagged by backend.
///
/// `p/d` or a bare integer selects the exact backend; a decimal or
/// scientific literal selects the float backend.
#[derive(Debug, Clone)]
pub enum ParsedQ {
    Exact(QParam<Rational>),
    Float(QParam<f64>),
}

/// Parse a deformation parameter from its CLI/config form.
///
/// `"1/2"` and `"0"` are exact; `"0.5"` and `"-3e-1"` are float.
pub fn parse_q(text: &str) -> Result<ParsedQ> {
    let trimmed = text.trim();
    if let Some((num, den)) = trimmed.split_once('/') {
        let p = BigInt::from_str(num.trim()).map_err(|_| Error::QParse(text.to_string()))?;
        let d = BigInt::from_str(den.trim()).map_err(|_| Error::QParse(text.to_string()))?;
        if d.is_zero() {
            return Err(Error::QParse(text.to_string()));
        }
        return Ok(ParsedQ::Exact(QParam::new(Ratio::new(p, d))?));
    }
    if let Ok(p) = BigInt::from_str(trimmed) {
        return Ok(ParsedQ::Exact(QParam::new(Ratio::from_integer(p))?));
    }
    let value: f64 = trimmed.parse().map_err(|_| Error::QParse(text.to_string()))?;
    Ok(ParsedQ::Float(QParam::new(value)?))
}

/// The q-integer `[n]_q = 1 + q + ... + q^{n-1}`, as the explicit sum.
///
/// `q_int(0) = 0` (empty sum) and the identity `[n]_q (1-q) = 1 - q^n`
/// holds for every q.
pub fn q_int<S: Scalar>(n: usize, q: &QParam<S>) -> S {
    let mut sum = S::zero();
    let mut term = S::one();
    for _ in 0..n {
        sum = sum + term.clone();
        term = term * q.value().clone();
    }
    sum
}

/// The q-factorial `[n]_q! = [1]_q [2]_q ... [n]_q`, with `[0]_q! = 1`.
pub fn q_factorial<S: Scalar>(n: usize, q: &QParam<S>) -> S {
    let mut prod = S::one();
    for k in 1..=n {
        prod = prod * q_int(k, q);
    }
    prod
}

/// The q-binomial coefficient `[n]_q! / ([k]_q! [n-k]_q!)`, computed by the
/// multiplicative recurrence `prod_{i=1..k} [n-k+i]_q / [i]_q` (each factor
/// is a nonzero q-integer for |q| < 1, so the division is exact).
pub fn q_binomial<S: Scalar>(n: usize, k: usize, q: &QParam<S>) -> Result<S> {
    if k > n {
        return Err(Error::BinomialOutOfRange { n, k });
    }
    let mut acc = S::one();
    for i in 1..=k {
        acc = acc * q_int(n - k + i, q);
        acc = acc
            .checked_div(&q_int(i, q))
            .expect("q-integers are nonzero for |q| < 1");
    }
    Ok(acc)
}
