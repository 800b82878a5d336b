//! Binary fixed-point reals with a running error bound.
//!
//! A value is `mant / 2^bits` with an absolute error of at most
//! `err * 2^-bits`. The working precision is chosen from a decimal digit
//! count `D` plus [`GUARD_BITS`].

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub const GUARD_BITS: u32 = 32;
pub const DEFAULT_DIGITS: u32 = 60;
const LOG2_10: f64 = std::f64::consts::LOG2_10;

pub fn bits_for_digits(digits: u32) -> u32 {
    (digits as f64 * LOG2_10).ceil() as u32 + GUARD_BITS
}

/// `round(n / d)` with ties away from negative infinity; `d` must be nonzero.
pub(crate) fn div_round(n: &BigInt, d: &BigInt) -> BigInt {
    let (n, d) = if d.is_negative() {
        (-n, -d)
    } else {
        (n.clone(), d.clone())
    };
    let num: BigInt = n * 2 + &d;
    num.div_floor(&(d * 2))
}

pub(crate) fn shr_round(x: &BigInt, s: u32) -> BigInt {
    if s == 0 {
        return x.clone();
    }
    (x + (BigInt::one() << (s - 1))) >> s
}

#[derive(Clone)]
pub struct BigReal {
    mant: BigInt,
    bits: u32,
    digits: u32,
    err: f64,
}

impl BigReal {
    pub fn from_parts(mant: BigInt, digits: u32, err_ulps: f64) -> Self {
        BigReal {
            mant,
            bits: bits_for_digits(digits),
            digits,
            err: err_ulps,
        }
    }

    pub fn zero(digits: u32) -> Self {
        Self::from_parts(BigInt::zero(), digits, 0.0)
    }

    pub fn one(digits: u32) -> Self {
        let bits = bits_for_digits(digits);
        Self::from_parts(BigInt::one() << bits, digits, 0.0)
    }

    pub fn from_integer(n: impl Into<BigInt>, digits: u32) -> Self {
        let bits = bits_for_digits(digits);
        Self::from_parts(n.into() << bits, digits, 0.0)
    }

    pub fn from_rational(q: &BigRational, digits: u32) -> Self {
        let bits = bits_for_digits(digits);
        let mant = div_round(&(q.numer() << bits), q.denom());
        Self::from_parts(mant, digits, if q.denom().is_one() { 0.0 } else { 0.5 })
    }

    /// Builds a value from a fixed-point integer scaled by `2^src_bits`,
    /// rounding to the working precision.
    pub fn from_fixed(x: &BigInt, src_bits: u32, src_err_ulps: f64, digits: u32) -> Self {
        let bits = bits_for_digits(digits);
        match src_bits.cmp(&bits) {
            Ordering::Equal => Self::from_parts(x.clone(), digits, src_err_ulps),
            Ordering::Greater => {
                let s = src_bits - bits;
                let err = src_err_ulps / 2f64.powi(s as i32) + 0.5;
                Self::from_parts(shr_round(x, s), digits, err)
            }
            Ordering::Less => {
                let s = bits - src_bits;
                Self::from_parts(x << s, digits, src_err_ulps * 2f64.powi(s as i32))
            }
        }
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mant
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    /// Error bound in units of `2^-bits`.
    pub fn err_ulps(&self) -> f64 {
        self.err
    }

    /// Absolute error bound.
    pub fn error_bound(&self) -> f64 {
        self.err * 2f64.powi(-(self.bits as i32))
    }

    /// Threshold below which a value counts as zero: `10^-(D-10)`.
    pub fn zero_tolerance(&self) -> f64 {
        10f64.powi(-(self.digits as i32 - 10))
    }

    pub fn is_negligible(&self) -> bool {
        self.abs_f64() < self.zero_tolerance()
    }

    /// Changes the working precision, rounding if it decreases.
    pub fn with_digits(&self, digits: u32) -> BigReal {
        BigReal::from_fixed(&self.mant, self.bits, self.err, digits)
    }

    pub fn to_f64(&self) -> f64 {
        // keep 64 significant bits before converting
        let len = self.mant.bits() as i64;
        let shift = (len - 64).max(0) as u32;
        let top = (&self.mant >> shift).to_f64().unwrap_or(0.0);
        top * 2f64.powi(shift as i32 - self.bits as i32)
    }

    pub fn abs_f64(&self) -> f64 {
        self.to_f64().abs()
    }

    /// `log10 |x|`, or `-inf` for zero. Valid far beyond the `f64` range.
    pub fn log10_abs(&self) -> f64 {
        if self.mant.is_zero() {
            return f64::NEG_INFINITY;
        }
        let len = self.mant.bits() as i64;
        let shift = (len - 64).max(0) as u32;
        let top = (self.mant.abs() >> shift).to_f64().unwrap_or(1.0);
        (top.log2() + shift as f64 - self.bits as f64) / LOG2_10
    }

    pub fn abs(&self) -> BigReal {
        BigReal {
            mant: self.mant.abs(),
            ..self.clone()
        }
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn signum(&self) -> i32 {
        match self.mant.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    fn check(&self, other: &BigReal) {
        assert_eq!(self.bits, other.bits, "mixed precisions");
    }

    pub fn add(&self, other: &BigReal) -> BigReal {
        self.check(other);
        BigReal {
            mant: &self.mant + &other.mant,
            bits: self.bits,
            digits: self.digits,
            err: self.err + other.err,
        }
    }

    pub fn sub(&self, other: &BigReal) -> BigReal {
        self.check(other);
        BigReal {
            mant: &self.mant - &other.mant,
            bits: self.bits,
            digits: self.digits,
            err: self.err + other.err,
        }
    }

    pub fn neg(&self) -> BigReal {
        BigReal {
            mant: -&self.mant,
            ..self.clone()
        }
    }

    pub fn mul(&self, other: &BigReal) -> BigReal {
        self.check(other);
        let mant = shr_round(&(&self.mant * &other.mant), self.bits);
        let ulp = 2f64.powi(-(self.bits as i32));
        let err = self.abs_f64() * other.err
            + other.abs_f64() * self.err
            + self.err * other.err * ulp
            + 0.5;
        BigReal {
            mant,
            bits: self.bits,
            digits: self.digits,
            err: err * (1.0 + 1e-12),
        }
    }

    pub fn div(&self, other: &BigReal) -> Result<BigReal> {
        self.check(other);
        if other.mant.is_zero() {
            return Err(Error::Invalid("division by zero".into()));
        }
        let mant = div_round(&(&self.mant << self.bits), &other.mant);
        let b = other.abs_f64();
        let ulp = 2f64.powi(-(self.bits as i32));
        let eb = other.err * ulp;
        if eb >= b {
            return Err(Error::Invalid(
                "divisor not distinguishable from zero".into(),
            ));
        }
        let q = self.abs_f64() / b;
        let err = (self.err + q * other.err) / (b - eb) + 0.5;
        Ok(BigReal {
            mant,
            bits: self.bits,
            digits: self.digits,
            err: err * (1.0 + 1e-12),
        })
    }

    pub fn mul_rational(&self, q: &BigRational) -> BigReal {
        let mant = div_round(&(&self.mant * q.numer()), q.denom());
        let qa = q.numer().to_f64().unwrap_or(f64::MAX).abs() / q.denom().to_f64().unwrap_or(1.0);
        BigReal {
            mant,
            bits: self.bits,
            digits: self.digits,
            err: (self.err * qa + 0.5) * (1.0 + 1e-12),
        }
    }

    pub fn mul_int(&self, n: i64) -> BigReal {
        BigReal {
            mant: &self.mant * n,
            bits: self.bits,
            digits: self.digits,
            err: self.err * n.unsigned_abs() as f64,
        }
    }

    pub fn div_int(&self, n: i64) -> BigReal {
        assert!(n != 0, "division by zero");
        BigReal {
            mant: div_round(&self.mant, &BigInt::from(n)),
            bits: self.bits,
            digits: self.digits,
            err: self.err / n.unsigned_abs() as f64 + 0.5,
        }
    }

    pub fn square(&self) -> BigReal {
        self.mul(self)
    }

    /// The value as an exact dyadic rational (ignoring the error bound).
    pub fn to_rational(&self) -> BigRational {
        BigRational::new(self.mant.clone(), BigInt::one() << self.bits)
    }

    /// Decimal string with `places` digits after the point, rounded.
    pub fn to_decimal(&self, places: u32) -> String {
        let scaled = shr_round(&(&self.mant * BigInt::from(10u32).pow(places)), self.bits);
        format_scaled(&scaled, places)
    }

    /// Exact decimal expansion of the dyadic value `mant / 2^bits`.
    pub fn to_exact_decimal(&self) -> String {
        let scaled = &self.mant * BigInt::from(5u32).pow(self.bits);
        format_scaled(&scaled, self.bits)
    }

    /// Inverse of [`to_exact_decimal`](Self::to_exact_decimal) at the given
    /// precision; fails unless the decimal is an exact multiple of `2^-bits`.
    pub fn from_exact_decimal(s: &str, digits: u32, err_ulps: f64) -> Result<BigReal> {
        let bits = bits_for_digits(digits);
        let q = parse_decimal(s)?;
        let scaled = q * BigRational::from_integer(BigInt::one() << bits);
        if !scaled.is_integer() {
            return Err(Error::Cache(format!(
                "value {s} is not representable with {bits} fractional bits"
            )));
        }
        Ok(BigReal::from_parts(scaled.to_integer(), digits, err_ulps))
    }

    /// Square root by integer square root of the scaled mantissa.
    pub fn sqrt(&self) -> Result<BigReal> {
        if self.mant.is_negative() {
            return Err(Error::Invalid("square root of a negative value".into()));
        }
        let mant = (&self.mant << self.bits).sqrt();
        let v = self.to_f64();
        // d(sqrt x) = dx / (2 sqrt x); near zero fall back to sqrt(dx)
        let err = if v > 0.0 {
            self.err / (2.0 * v.sqrt())
        } else {
            self.err.sqrt() * 2f64.powi(self.bits as i32 / 2 + 1)
        };
        Ok(BigReal {
            mant,
            bits: self.bits,
            digits: self.digits,
            err: err + 1.0,
        })
    }
}

fn format_scaled(scaled: &BigInt, places: u32) -> String {
    let neg = scaled.is_negative();
    let s = scaled.abs().to_string();
    let places = places as usize;
    let (int, frac) = if s.len() > places {
        let (a, b) = s.split_at(s.len() - places);
        (a.to_string(), b.to_string())
    } else {
        (
            "0".to_string(),
            format!("{}{}", "0".repeat(places - s.len()), s),
        )
    };
    let sign = if neg && scaled.sign() != Sign::NoSign {
        "-"
    } else {
        ""
    };
    if places == 0 {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{frac}")
    }
}

pub(crate) fn parse_decimal(s: &str) -> Result<BigRational> {
    let t = s.trim();
    let bad = || Error::Invalid(format!("cannot parse decimal {s:?}"));
    let (neg, body) = match t.strip_prefix('-') {
        Some(r) => (true, r),
        None => (false, t),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    let digits = format!("{int}{frac}");
    if !digits.chars().all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let n: BigInt = digits.parse().map_err(|_| bad())?;
    let q = BigRational::new(n, BigInt::from(10u32).pow(frac.len() as u32));
    Ok(if neg { -q } else { q })
}

impl fmt::Display for BigReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let places = f.precision().unwrap_or(self.digits as usize) as u32;
        f.write_str(&self.to_decimal(places))
    }
}

impl fmt::Debug for BigReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} (±{:.1e})",
            self.to_decimal(self.digits.min(30)),
            self.error_bound()
        )
    }
}
