//! Scalar abstraction shared by the geometry, the LP engine and the hitting-set code.
//!
//! Everything is written against [`Scalar`] so the same predicates run over exact
//! rationals (the default everywhere correctness matters) and over `f32`/`f64` for
//! quick experiments. Exact types report a zero tolerance; float types a small one.

use std::fmt::{Debug, Display};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, One, Signed, ToPrimitive, Zero};
use thiserror::Error;

pub trait Scalar:
    Clone + Debug + Display + PartialOrd + Num + Signed + FromPrimitive + Send + Sync + 'static
{
    /// Whether arithmetic on this type is exact.
    const EXACT: bool;

    /// Absolute tolerance for sign tests. Zero for exact types.
    fn tolerance() -> Self;

    fn from_ratio(numer: i64, denom: i64) -> Self;

    fn to_f64(&self) -> f64;

    fn half() -> Self {
        Self::from_ratio(1, 2)
    }

    fn is_pos(&self) -> bool {
        *self > Self::tolerance()
    }

    fn is_neg(&self) -> bool {
        *self < -Self::tolerance()
    }

    fn is_zero_tol(&self) -> bool {
        !self.is_pos() && !self.is_neg()
    }
}

macro_rules! impl_float_scalar {
    ($t:ty, $tol:expr) => {
        impl Scalar for $t {
            const EXACT: bool = false;

            fn tolerance() -> Self {
                $tol
            }

            fn from_ratio(numer: i64, denom: i64) -> Self {
                numer as $t / denom as $t
            }

            fn to_f64(&self) -> f64 {
                *self as f64
            }
        }
    };
}

impl_float_scalar!(f32, 1e-5);
impl_float_scalar!(f64, 1e-9);

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn tolerance() -> Self {
        BigRational::zero()
    }

    fn from_ratio(numer: i64, denom: i64) -> Self {
        BigRational::new(BigInt::from(numer), BigInt::from(denom))
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn is_pos(&self) -> bool {
        Signed::is_positive(self)
    }

    fn is_neg(&self) -> bool {
        Signed::is_negative(self)
    }

    fn is_zero_tol(&self) -> bool {
        Zero::is_zero(self)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseRationalError {
    #[error("empty rational literal")]
    Empty,
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
    #[error("decimal literal {0:?} needs lossy parsing")]
    Decimal(String),
    #[error("malformed rational literal {0:?}")]
    Malformed(String),
}

/// Parses `"p/q"` or a bare integer. Decimals are rejected unless `allow_decimal`,
/// in which case they are converted exactly (`"0.25"` becomes `1/4`).
pub fn parse_rational(text: &str, allow_decimal: bool) -> Result<BigRational, ParseRationalError> {
    let text = text.trim();
    if text.is_empty() {
        return Err(ParseRationalError::Empty);
    }
    let malformed = || ParseRationalError::Malformed(text.to_string());
    if let Some((num, den)) = text.split_once('/') {
        let num = BigInt::from_str(num.trim()).map_err(|_| malformed())?;
        let den = BigInt::from_str(den.trim()).map_err(|_| malformed())?;
        if den.is_zero() {
            return Err(ParseRationalError::ZeroDenominator(text.to_string()));
        }
        return Ok(BigRational::new(num, den));
    }
    if let Ok(int) = BigInt::from_str(text) {
        return Ok(BigRational::from_integer(int));
    }
    if text.contains(['.', 'e', 'E']) {
        if !allow_decimal {
            return Err(ParseRationalError::Decimal(text.to_string()));
        }
        return parse_decimal(text).ok_or_else(malformed);
    }
    Err(malformed())
}

fn parse_decimal(text: &str) -> Option<BigRational> {
    let (mantissa, exponent) = match text.find(['e', 'E']) {
        Some(pos) => (&text[..pos], text[pos + 1..].parse::<i32>().ok()?),
        None => (text, 0),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    let negative = int_part.starts_with('-');
    let digits = format!("{}{}", int_part.trim_start_matches(['-', '+']), frac_part);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let mut value = BigRational::from_integer(BigInt::from_str(&digits).ok()?);
    let scale = exponent - frac_part.len() as i32;
    let ten = BigRational::from_integer(BigInt::from(10));
    if scale >= 0 {
        value *= num_traits::pow(ten, scale as usize);
    } else {
        value /= num_traits::pow(ten, (-scale) as usize);
    }
    Some(if negative { -value } else { value })
}

/// Canonical text form: bare integer when the denominator is one, otherwise `"p/q"`.
pub fn format_rational(value: &BigRational) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// Fixed-precision decimal rendering, used where output must be byte-stable
/// (SVG coordinates).
pub fn format_decimal(value: &BigRational, places: usize) -> String {
    let scale = num_traits::pow(BigInt::from(10), places);
    let scaled = value * BigRational::from_integer(scale.clone());
    let rounded = scaled.round().to_integer();
    let negative = rounded.is_negative();
    let digits = rounded.abs().to_string();
    let digits = format!("{:0>width$}", digits, width = places + 1);
    let (int_part, frac_part) = digits.split_at(digits.len() - places);
    let frac_part = frac_part.trim_end_matches('0');
    let sign = if negative { "-" } else { "" };
    if frac_part.is_empty() {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{frac_part}")
    }
}

/// Shorthand for building exact constants in code and tests.
pub fn ratio(numer: i64, denom: i64) -> BigRational {
    BigRational::from_ratio(numer, denom)
}

pub fn int(value: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(value))
}

/// `ceil` of a nonnegative rational as `u64`.
pub fn ceil_u64(value: &BigRational) -> Option<u64> {
    value.ceil().to_integer().to_u64()
}
