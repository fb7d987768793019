use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use super::real::{Precision, Real};
use crate::error::{Error, Result};

/// Multiprecision complex number with [`Real`] parts.
#[derive(Clone, PartialEq)]
pub struct HpComplex {
    pub re: Real,
    pub im: Real,
}

impl Precision {
    pub fn czero(self) -> HpComplex {
        HpComplex::new(self.zero(), self.zero())
    }

    pub fn cone(self) -> HpComplex {
        HpComplex::new(self.one(), self.zero())
    }

    pub fn complex(self, re: f64, im: f64) -> HpComplex {
        HpComplex::new(self.real(re), self.real(im))
    }

    pub fn parse_complex(self, re: &str, im: &str) -> Result<HpComplex> {
        Ok(HpComplex::new(self.parse_real(re)?, self.parse_real(im)?))
    }

    /// `e^{i t}`.
    pub fn cis(self, t: &Real) -> HpComplex {
        let (s, c) = t.sin_cos();
        HpComplex::new(c, s)
    }
}

impl HpComplex {
    pub fn new(re: Real, im: Real) -> Self {
        HpComplex { re, im }
    }

    pub fn from_real(re: Real) -> Self {
        let im = re.zero_like();
        HpComplex { re, im }
    }

    pub fn prec(&self) -> u32 {
        self.re.prec().max(self.im.prec())
    }

    pub fn zero_like(&self) -> HpComplex {
        HpComplex::new(self.re.zero_like(), self.re.zero_like())
    }

    pub fn one_like(&self) -> HpComplex {
        HpComplex::new(self.re.one_like(), self.re.zero_like())
    }

    pub fn conj(&self) -> HpComplex {
        HpComplex::new(self.re.clone(), -&self.im)
    }

    pub fn norm_sqr(&self) -> Real {
        self.re.square() + self.im.square()
    }

    pub fn abs(&self) -> Real {
        Real(self.re.0.clone().hypot(&self.im.0))
    }

    /// Principal argument in `(-π, π]`.
    pub fn arg(&self) -> Real {
        self.im.atan2(&self.re)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    /// Rounding allowance `2^{8-bits}` for comparisons of `|z|²` with 1, so
    /// that points built as `e^{it}` count as lying on the circle.
    pub fn circle_slack(&self) -> Real {
        let bits = self.prec();
        Real(rug::Float::with_val(bits, 1u32) >> bits.saturating_sub(8))
    }

    pub fn in_closed_disk(&self) -> bool {
        self.norm_sqr() <= 1.0 + self.circle_slack()
    }

    pub fn in_open_disk(&self) -> bool {
        self.norm_sqr() < 1.0 - self.circle_slack()
    }

    pub fn on_circle(&self) -> bool {
        (self.norm_sqr() - 1.0).abs() <= self.circle_slack()
    }

    pub fn scale(&self, s: &Real) -> HpComplex {
        HpComplex::new(&self.re * s, &self.im * s)
    }

    pub fn recip(&self) -> HpComplex {
        let n = self.norm_sqr();
        HpComplex::new(&self.re / &n, -(&self.im / &n))
    }

    /// Principal logarithm.
    pub fn ln(&self) -> HpComplex {
        HpComplex::new(self.norm_sqr().ln() * 0.5, self.arg())
    }

    pub fn exp(&self) -> HpComplex {
        let m = self.re.exp();
        let (s, c) = self.im.sin_cos();
        HpComplex::new(&m * c, m * s)
    }

    /// Principal square root.
    pub fn sqrt(&self) -> HpComplex {
        if self.is_zero() {
            return self.clone();
        }
        let r = self.abs();
        let a = ((&r + &self.re) * 0.5).sqrt();
        let b = ((&r - &self.re) * 0.5).sqrt();
        let b = if self.im.is_negative() { -b } else { b };
        HpComplex::new(a, b)
    }

    /// Integer power by repeated squaring.
    pub fn powi(&self, n: i64) -> HpComplex {
        let mut base = if n < 0 { self.recip() } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = self.one_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `base^p` on the principal branch, restricted to `Re(base) > 0`.
    ///
    /// Every `(1 - z conj(w))^p` with `|z| <= 1`, `|w| < 1` lands in this
    /// half plane. Small integer exponents are evaluated by repeated
    /// multiplication.
    pub fn cpow_real(&self, p: &Real) -> Result<HpComplex> {
        if !self.re.is_positive() {
            return Err(Error::Domain(format!(
                "complex power needs Re(base) > 0, got {:.10}",
                self.re
            )));
        }
        if let Some(n) = p.to_integer_exact() {
            if n.abs() <= 64 {
                return Ok(self.powi(n));
            }
        }
        Ok(self.ln().scale(p).exp())
    }

    /// `"<re> <im>"`, exact round trip at the value's precision.
    pub fn to_decimal_string(&self) -> String {
        format!("{} {}", self.re.to_decimal_string(), self.im.to_decimal_string())
    }

    pub fn parse(ctx: Precision, text: &str) -> Result<HpComplex> {
        let mut parts = text.split_whitespace();
        let (Some(re), Some(im), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(Error::Parse(format!("expected \"<re> <im>\", got {text:?}")));
        };
        ctx.parse_complex(re, im)
    }
}

impl fmt::Debug for HpComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?} {:?}i)", self.re, self.im)
    }
}

impl fmt::Display for HpComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match f.precision() {
            Some(p) => write!(f, "{:.*} {:.*}", p, self.re, p, self.im),
            None => write!(f, "{}", self.to_decimal_string()),
        }
    }
}

impl Neg for HpComplex {
    type Output = HpComplex;
    fn neg(self) -> HpComplex {
        HpComplex::new(-self.re, -self.im)
    }
}

impl Neg for &HpComplex {
    type Output = HpComplex;
    fn neg(self) -> HpComplex {
        HpComplex::new(-&self.re, -&self.im)
    }
}

impl Add<&HpComplex> for &HpComplex {
    type Output = HpComplex;
    fn add(self, rhs: &HpComplex) -> HpComplex {
        HpComplex::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub<&HpComplex> for &HpComplex {
    type Output = HpComplex;
    fn sub(self, rhs: &HpComplex) -> HpComplex {
        HpComplex::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul<&HpComplex> for &HpComplex {
    type Output = HpComplex;
    fn mul(self, rhs: &HpComplex) -> HpComplex {
        HpComplex::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Div<&HpComplex> for &HpComplex {
    type Output = HpComplex;
    fn div(self, rhs: &HpComplex) -> HpComplex {
        let n = rhs.norm_sqr();
        HpComplex::new(
            (&self.re * &rhs.re + &self.im * &rhs.im) / &n,
            (&self.im * &rhs.re - &self.re * &rhs.im) / &n,
        )
    }
}

macro_rules! forward_owned {
    ($trait:ident, $method:ident) => {
        impl $trait<HpComplex> for HpComplex {
            type Output = HpComplex;
            fn $method(self, rhs: HpComplex) -> HpComplex {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&HpComplex> for HpComplex {
            type Output = HpComplex;
            fn $method(self, rhs: &HpComplex) -> HpComplex {
                (&self).$method(rhs)
            }
        }
        impl $trait<HpComplex> for &HpComplex {
            type Output = HpComplex;
            fn $method(self, rhs: HpComplex) -> HpComplex {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Add<&Real> for &HpComplex {
    type Output = HpComplex;
    fn add(self, rhs: &Real) -> HpComplex {
        HpComplex::new(&self.re + rhs, self.im.clone())
    }
}

impl Sub<&Real> for &HpComplex {
    type Output = HpComplex;
    fn sub(self, rhs: &Real) -> HpComplex {
        HpComplex::new(&self.re - rhs, self.im.clone())
    }
}

impl Mul<&Real> for &HpComplex {
    type Output = HpComplex;
    fn mul(self, rhs: &Real) -> HpComplex {
        self.scale(rhs)
    }
}

impl Div<&Real> for &HpComplex {
    type Output = HpComplex;
    fn div(self, rhs: &Real) -> HpComplex {
        HpComplex::new(&self.re / rhs, &self.im / rhs)
    }
}

impl Add<f64> for &HpComplex {
    type Output = HpComplex;
    fn add(self, rhs: f64) -> HpComplex {
        HpComplex::new(&self.re + rhs, self.im.clone())
    }
}

impl Sub<&HpComplex> for f64 {
    type Output = HpComplex;
    fn sub(self, rhs: &HpComplex) -> HpComplex {
        HpComplex::new(self - &rhs.re, -&rhs.im)
    }
}

impl Sub<HpComplex> for f64 {
    type Output = HpComplex;
    fn sub(self, rhs: HpComplex) -> HpComplex {
        self - &rhs
    }
}

impl Mul<f64> for &HpComplex {
    type Output = HpComplex;
    fn mul(self, rhs: f64) -> HpComplex {
        HpComplex::new(&self.re * rhs, &self.im * rhs)
    }
}

macro_rules! forward_owned_scalar {
    ($trait:ident, $method:ident, $rhs:ty) => {
        impl $trait<$rhs> for HpComplex {
            type Output = HpComplex;
            fn $method(self, rhs: $rhs) -> HpComplex {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned_scalar!(Add, add, &Real);
forward_owned_scalar!(Sub, sub, &Real);
forward_owned_scalar!(Mul, mul, &Real);
forward_owned_scalar!(Div, div, &Real);
forward_owned_scalar!(Add, add, f64);
forward_owned_scalar!(Mul, mul, f64);

impl AddAssign<&HpComplex> for HpComplex {
    fn add_assign(&mut self, rhs: &HpComplex) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl AddAssign<HpComplex> for HpComplex {
    fn add_assign(&mut self, rhs: HpComplex) {
        *self += &rhs;
    }
}

impl SubAssign<&HpComplex> for HpComplex {
    fn sub_assign(&mut self, rhs: &HpComplex) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl SubAssign<HpComplex> for HpComplex {
    fn sub_assign(&mut self, rhs: HpComplex) {
        *self -= &rhs;
    }
}

impl MulAssign<&HpComplex> for HpComplex {
    fn mul_assign(&mut self, rhs: &HpComplex) {
        *self = &*self * rhs;
    }
}

impl MulAssign<HpComplex> for HpComplex {
    fn mul_assign(&mut self, rhs: HpComplex) {
        *self = &*self * &rhs;
    }
}
