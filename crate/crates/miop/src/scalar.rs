//! Scalar field abstraction and the exact Gaussian rational type.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::MiopError;

pub type Rational = BigRational;
pub type GaussScalar = Complex<Rational>;

/// Field operations plus complex conjugation.
pub trait Scalar:
    Clone
    + PartialEq
    + Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
{
    fn conj(&self) -> Self;
}

impl Scalar for Rational {
    fn conj(&self) -> Self {
        self.clone()
    }
}

impl Scalar for f64 {
    fn conj(&self) -> Self {
        *self
    }
}

impl Scalar for Complex<Rational> {
    fn conj(&self) -> Self {
        Complex::new(self.re.clone(), -self.im.clone())
    }
}

impl Scalar for Complex<f64> {
    fn conj(&self) -> Self {
        Complex::conj(self)
    }
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rint(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn g(r: Rational) -> GaussScalar {
    Complex::new(r, Rational::zero())
}

pub fn gi(n: i64) -> GaussScalar {
    g(rint(n))
}

pub fn gr(n: i64, d: i64) -> GaussScalar {
    g(rat(n, d))
}

pub fn imag_unit() -> GaussScalar {
    Complex::new(Rational::zero(), Rational::one())
}

/// `i^k` for any integer `k`.
pub fn i_pow(k: i64) -> GaussScalar {
    match k.rem_euclid(4) {
        0 => gi(1),
        1 => imag_unit(),
        2 => gi(-1),
        _ => -imag_unit(),
    }
}

/// Integer power, negative exponents allowed.
pub fn pow_i<S: Scalar>(x: &S, k: i64) -> S {
    let mut base = if k < 0 { S::one() / x.clone() } else { x.clone() };
    let mut e = k.unsigned_abs();
    let mut acc = S::one();
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base.clone();
        }
        e >>= 1;
        if e > 0 {
            base = base.clone() * base;
        }
    }
    acc
}

/// Exact square root of a non-negative rational, if it exists.
pub fn sqrt_exact(x: &Rational) -> Option<Rational> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer().sqrt();
    let d = x.denom().sqrt();
    if &(&n * &n) == x.numer() && &(&d * &d) == x.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

/// Greatest integer not exceeding `a / b` for `b > 0`.
pub fn floor_div(a: i64, b: i64) -> i64 {
    a.div_euclid(b)
}

pub fn is_real(z: &GaussScalar) -> bool {
    z.im.is_zero()
}

pub fn parse_rational(s: &str) -> Result<Rational, MiopError> {
    let t = s.trim();
    if t.is_empty() {
        return Err(MiopError::Parse(s.to_string()));
    }
    Rational::from_str(t).map_err(|_| MiopError::Parse(s.to_string()))
}

/// Parses `p/q`, `r/s*i`, `i`, `-i` and `p/q+r/s*i` forms.
pub fn parse_gauss(s: &str) -> Result<GaussScalar, MiopError> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        return Err(MiopError::Parse(s.to_string()));
    }
    if !t.ends_with('i') {
        return Ok(g(parse_rational(&t)?));
    }
    // split at the last sign that is not the leading character
    let body = &t[..t.len() - 1];
    let split = body
        .char_indices()
        .filter(|&(k, c)| k > 0 && (c == '+' || c == '-'))
        .map(|(k, _)| k)
        .last();
    let (re_s, im_s) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("", body),
    };
    let im_s = im_s.strip_suffix('*').unwrap_or(im_s);
    let im = match im_s {
        "" | "+" => Rational::one(),
        "-" => -Rational::one(),
        other => parse_rational(other.strip_prefix('+').unwrap_or(other))?,
    };
    let re = if re_s.is_empty() { Rational::zero() } else { parse_rational(re_s)? };
    Ok(Complex::new(re, im))
}

pub fn format_gauss(z: &GaussScalar) -> String {
    if z.im.is_zero() {
        return z.re.to_string();
    }
    let im = if z.im.is_one() {
        "i".to_string()
    } else if (-z.im.clone()).is_one() {
        "-i".to_string()
    } else {
        format!("{}*i", z.im)
    };
    if z.re.is_zero() {
        im
    } else if im.starts_with('-') {
        format!("{}{}", z.re, im)
    } else {
        format!("{}+{}", z.re, im)
    }
}
