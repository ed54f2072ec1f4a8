use std::fmt;
use std::ops::{Add, Div, Mul, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// An exact rational number, always held in lowest terms with a positive
/// denominator.
///
/// Comparisons, arithmetic, and hashing are all exact; there is no rounding
/// anywhere except in [`ExactRatio::to_decimal`], which exists purely for
/// display. Renders as `numerator/denominator` even when the value is an
/// integer (`2/1`), so output lines stay machine-splittable.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExactRatio(BigRational);

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RatioError {
    #[error("denominator must be nonzero")]
    ZeroDenominator,
    #[error("malformed ratio literal {0:?}: expected `n` or `n/d` with integer parts")]
    Malformed(String),
}

impl ExactRatio {
    /// Builds `numerator / denominator`, reducing to lowest terms.
    pub fn new(
        numerator: impl Into<BigInt>,
        denominator: impl Into<BigInt>,
    ) -> Result<Self, RatioError> {
        let denominator = denominator.into();
        if denominator.is_zero() {
            return Err(RatioError::ZeroDenominator);
        }
        Ok(Self(BigRational::new(numerator.into(), denominator)))
    }

    pub fn from_integer(value: impl Into<BigInt>) -> Self {
        Self(BigRational::from_integer(value.into()))
    }

    /// Exact quotient of two unsigned integers; `denominator` must be nonzero.
    pub fn from_unsigned(numerator: BigUint, denominator: BigUint) -> Result<Self, RatioError> {
        Self::new(BigInt::from(numerator), BigInt::from(denominator))
    }

    pub fn zero() -> Self {
        Self(BigRational::zero())
    }

    pub fn one() -> Self {
        Self(BigRational::one())
    }

    /// Numerator of the reduced form; carries the sign of the value.
    pub fn numerator(&self) -> &BigInt {
        self.0.numer()
    }

    /// Denominator of the reduced form; always positive.
    pub fn denominator(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs_diff(&self, other: &Self) -> Self {
        Self((&self.0 - &other.0).abs())
    }

    pub fn reciprocal(&self) -> Result<Self, RatioError> {
        if self.0.is_zero() {
            return Err(RatioError::ZeroDenominator);
        }
        Ok(Self(self.0.recip()))
    }

    /// Decimal rendering with exactly `digits` fractional digits, rounding
    /// half away from zero. Display-only; never feed this back into
    /// arithmetic.
    pub fn to_decimal(&self, digits: u32) -> String {
        let sign = if self.0.is_negative() { "-" } else { "" };
        let numer = self.numerator().magnitude();
        let denom = self.denominator().magnitude();
        let scale = BigUint::from(10u32).pow(digits);
        // round(|n| * 10^digits / d), half away from zero
        let scaled = (numer * &scale * 2u32 + denom) / (denom * 2u32);
        let int_part = &scaled / &scale;
        let frac_part = &scaled % &scale;
        if digits == 0 {
            format!("{sign}{int_part}")
        } else {
            format!(
                "{sign}{int_part}.{frac:0>width$}",
                frac = frac_part.to_string(),
                width = digits as usize
            )
        }
    }
}

impl fmt::Display for ExactRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numerator(), self.denominator())
    }
}

impl fmt::Debug for ExactRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExactRatio({self})")
    }
}

impl FromStr for ExactRatio {
    type Err = RatioError;

    /// Accepts `n/d` or a bare integer `n` (read as `n/1`).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let malformed = || RatioError::Malformed(s.to_owned());
        match s.split_once('/') {
            Some((n, d)) => {
                let n = BigInt::from_str(n.trim()).map_err(|_| malformed())?;
                let d = BigInt::from_str(d.trim()).map_err(|_| malformed())?;
                Self::new(n, d)
            }
            None => {
                let n = BigInt::from_str(s.trim()).map_err(|_| malformed())?;
                Ok(Self::from_integer(n))
            }
        }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for &ExactRatio {
            type Output = ExactRatio;
            fn $method(self, rhs: &ExactRatio) -> ExactRatio {
                ExactRatio((&self.0).$method(&rhs.0))
            }
        }
        impl $trait for ExactRatio {
            type Output = ExactRatio;
            fn $method(self, rhs: ExactRatio) -> ExactRatio {
                ExactRatio(self.0.$method(rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);
