use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use rug::float::Constant;
use rug::ops::Pow;
use rug::Float;

use crate::error::{Error, Result};

/// Working precision, expressed in decimal digits.
///
/// Every multiprecision value is created through a context; there is no
/// global precision setting. Binary operations on [`Real`] and
/// [`HpComplex`](super::HpComplex) round to the larger precision of their
/// operands.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub struct Precision {
    digits: u32,
}

impl Default for Precision {
    fn default() -> Self {
        Precision {
            digits: Self::DEFAULT_DIGITS,
        }
    }
}

impl Precision {
    pub const DEFAULT_DIGITS: u32 = 40;
    pub const MIN_DIGITS: u32 = 16;
    const MAX_DIGITS: u32 = 100_000;

    pub fn new(digits: u32) -> Result<Self> {
        if !(Self::MIN_DIGITS..=Self::MAX_DIGITS).contains(&digits) {
            return Err(Error::InvalidInput(format!(
                "precision must be between {} and {} digits, got {digits}",
                Self::MIN_DIGITS,
                Self::MAX_DIGITS
            )));
        }
        Ok(Precision { digits })
    }

    pub fn digits(self) -> u32 {
        self.digits
    }

    /// Mantissa bits backing `digits` decimal digits.
    pub fn bits(self) -> u32 {
        (f64::from(self.digits) * std::f64::consts::LOG2_10).ceil() as u32
    }

    pub fn zero(self) -> Real {
        Real(Float::new(self.bits()))
    }

    pub fn one(self) -> Real {
        self.int(1)
    }

    pub fn int(self, value: i64) -> Real {
        Real(Float::with_val(self.bits(), value))
    }

    /// Exact conversion of a binary double. Use [`Precision::parse_real`]
    /// for decimal literals such as `0.51`, which are not representable.
    pub fn real(self, value: f64) -> Real {
        Real(Float::with_val(self.bits(), value))
    }

    /// Exact rational `num/den` rounded once to working precision.
    pub fn ratio(self, num: i64, den: i64) -> Real {
        let n = Float::with_val(self.bits(), num);
        Real(n / den)
    }

    pub fn parse_real(self, text: &str) -> Result<Real> {
        let parsed = Float::parse(text.trim())
            .map_err(|e| Error::Parse(format!("{text:?}: {e}")))?;
        Ok(Real(Float::with_val(self.bits(), parsed)))
    }

    pub fn pi(self) -> Real {
        Real(Float::with_val(self.bits(), Constant::Pi))
    }

    /// `10^exp` at working precision.
    pub fn ten_pow(self, exp: i32) -> Real {
        let ten = Float::with_val(self.bits(), 10);
        Real(ten.pow(exp))
    }

    /// Unit roundoff `10^-digits`.
    pub fn epsilon(self) -> Real {
        self.ten_pow(-(self.digits as i32))
    }
}

/// Multiprecision real number (MPFR-backed, correctly rounded).
#[derive(Clone)]
pub struct Real(pub(crate) Float);

impl Real {
    pub fn from_float(f: Float) -> Self {
        Real(f)
    }

    pub fn as_float(&self) -> &Float {
        &self.0
    }

    pub fn into_float(self) -> Float {
        self.0
    }

    /// Mantissa precision in bits.
    pub fn prec(&self) -> u32 {
        self.0.prec()
    }

    pub fn precision_digits(&self) -> u32 {
        (f64::from(self.prec()) / std::f64::consts::LOG2_10).floor() as u32
    }

    pub fn zero_like(&self) -> Real {
        Real(Float::new(self.prec()))
    }

    pub fn one_like(&self) -> Real {
        Real(Float::with_val(self.prec(), 1))
    }

    pub fn with_value_f64(&self, v: f64) -> Real {
        Real(Float::with_val(self.prec(), v))
    }

    pub fn with_value_i64(&self, v: i64) -> Real {
        Real(Float::with_val(self.prec(), v))
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        self.0.is_finite()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_sign_negative() && !self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_sign_positive() && !self.0.is_zero()
    }

    pub fn abs(&self) -> Real {
        Real(self.0.clone().abs())
    }

    pub fn square(&self) -> Real {
        Real(self.0.clone().square())
    }

    pub fn recip(&self) -> Real {
        Real(self.0.clone().recip())
    }

    pub fn sqrt(&self) -> Real {
        Real(self.0.clone().sqrt())
    }

    pub fn ln(&self) -> Real {
        Real(self.0.clone().ln())
    }

    pub fn exp(&self) -> Real {
        Real(self.0.clone().exp())
    }

    pub fn sin_cos(&self) -> (Real, Real) {
        let (s, c) = self.0.clone().sin_cos(Float::new(self.prec()));
        (Real(s), Real(c))
    }

    pub fn atan2(&self, x: &Real) -> Real {
        let prec = self.prec().max(x.prec());
        Real(Float::with_val(prec, &self.0).atan2(&x.0))
    }

    pub fn powf(&self, exponent: &Real) -> Real {
        let prec = self.prec().max(exponent.prec());
        Real(Float::with_val(prec, (&self.0).pow(&exponent.0)))
    }

    pub fn powi(&self, exponent: i32) -> Real {
        Real(Float::with_val(self.prec(), (&self.0).pow(exponent)))
    }

    pub fn max_of(self, other: Real) -> Real {
        if other > self {
            other
        } else {
            self
        }
    }

    pub fn min_of(self, other: Real) -> Real {
        if other < self {
            other
        } else {
            self
        }
    }

    /// Integer-valued? (`p == round(p)`).
    pub fn to_integer_exact(&self) -> Option<i64> {
        if !self.0.is_finite() || !self.0.is_integer() {
            return None;
        }
        self.0.to_i32_saturating().map(i64::from).filter(|v| v.abs() < i64::from(i32::MAX))
    }

    /// Shortest decimal text that parses back to the identical binary value.
    pub fn to_decimal_string(&self) -> String {
        self.0.to_string_radix(10, None)
    }

    /// Fewest significant digits that still parse back to the same value, so
    /// that `0.176` prints as `1.76e-1` rather than with a trailing rounding tail.
    pub fn to_shortest_string(&self) -> String {
        if !self.0.is_normal() {
            return self.to_decimal_string();
        }
        let prec = self.0.prec();
        for digits in 1..=(prec as usize * 30103 / 100_000 + 2) {
            let text = self.0.to_string_radix(10, Some(digits));
            let parsed = Float::parse(&text).map(|p| Float::with_val(prec, p));
            if parsed.map(|p| p == self.0).unwrap_or(false) {
                return text;
            }
        }
        self.to_decimal_string()
    }

    /// Decimal text with `digits` significant digits.
    pub fn to_string_digits(&self, digits: usize) -> String {
        self.0.to_string_radix(10, Some(digits.max(1)))
    }
}

impl fmt::Debug for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_digits(20))
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match f.precision() {
            Some(p) => write!(f, "{}", self.to_string_digits(p)),
            None => write!(f, "{}", self.to_decimal_string()),
        }
    }
}

impl PartialEq for Real {
    fn eq(&self, other: &Self) -> bool {
        self.0 == other.0
    }
}

impl PartialOrd for Real {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.0.partial_cmp(&other.0)
    }
}

impl PartialEq<f64> for Real {
    fn eq(&self, other: &f64) -> bool {
        self.0 == *other
    }
}

impl PartialOrd<f64> for Real {
    fn partial_cmp(&self, other: &f64) -> Option<Ordering> {
        self.0.partial_cmp(other)
    }
}

impl Neg for Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real(-self.0)
    }
}

impl Neg for &Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real(-self.0.clone())
    }
}

macro_rules! real_binop {
    ($trait:ident, $method:ident, $op:tt, $assign_trait:ident, $assign:ident) => {
        impl $trait<&Real> for &Real {
            type Output = Real;
            fn $method(self, rhs: &Real) -> Real {
                let prec = self.0.prec().max(rhs.0.prec());
                Real(Float::with_val(prec, &self.0 $op &rhs.0))
            }
        }
        impl $trait<Real> for &Real {
            type Output = Real;
            fn $method(self, rhs: Real) -> Real {
                self $op &rhs
            }
        }
        impl $trait<&Real> for Real {
            type Output = Real;
            fn $method(self, rhs: &Real) -> Real {
                &self $op rhs
            }
        }
        impl $trait<Real> for Real {
            type Output = Real;
            fn $method(self, rhs: Real) -> Real {
                &self $op &rhs
            }
        }
        impl $trait<f64> for &Real {
            type Output = Real;
            fn $method(self, rhs: f64) -> Real {
                Real(Float::with_val(self.0.prec(), &self.0 $op rhs))
            }
        }
        impl $trait<f64> for Real {
            type Output = Real;
            fn $method(self, rhs: f64) -> Real {
                &self $op rhs
            }
        }
        impl $trait<&Real> for f64 {
            type Output = Real;
            fn $method(self, rhs: &Real) -> Real {
                Real(Float::with_val(rhs.0.prec(), self $op &rhs.0))
            }
        }
        impl $trait<Real> for f64 {
            type Output = Real;
            fn $method(self, rhs: Real) -> Real {
                self $op &rhs
            }
        }
        impl $assign_trait<&Real> for Real {
            fn $assign(&mut self, rhs: &Real) {
                if rhs.0.prec() > self.0.prec() {
                    *self = &*self $op rhs;
                } else {
                    self.0.$assign(&rhs.0);
                }
            }
        }
        impl $assign_trait<Real> for Real {
            fn $assign(&mut self, rhs: Real) {
                self.$assign(&rhs);
            }
        }
        impl $assign_trait<f64> for Real {
            fn $assign(&mut self, rhs: f64) {
                self.0.$assign(rhs);
            }
        }
    };
}

real_binop!(Add, add, +, AddAssign, add_assign);
real_binop!(Sub, sub, -, SubAssign, sub_assign);
real_binop!(Mul, mul, *, MulAssign, mul_assign);
real_binop!(Div, div, /, DivAssign, div_assign);
