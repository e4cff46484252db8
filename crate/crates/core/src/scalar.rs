//! Coefficient-field abstraction.
//!
//! All jet algebra is generic over [`Scalar`]. Two instantiations are
//! provided: `num_complex::Complex64` for float work and [`crate::exact::Exact`]
//! for exact work. Exponential and logarithm are partial operations:
//! they always succeed for floats and succeed for exact scalars only
//! when the value is representable in the field (see [`crate::exact`]).

use crate::error::{Error, Result};
use num_complex::Complex64;
use std::fmt::{Debug, Display};
use std::ops::{Add, Mul, Neg, Sub};

pub trait Scalar:
    Clone
    + PartialEq
    + Debug
    + Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    /// True for floating-point instantiations; drives tolerance handling.
    const FLOAT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_int(n: i64) -> Self;
    fn from_ratio(num: i64, den: i64) -> Self;
    /// The imaginary unit.
    fn i() -> Self;

    fn is_zero(&self) -> bool;
    fn conj(&self) -> Self;
    fn inv(&self) -> Result<Self>;

    /// `e^self`, when representable in the field.
    fn try_exp(&self) -> Option<Self>;
    /// A logarithm of `self` (principal for floats), when representable.
    fn try_log(&self) -> Option<Self>;

    /// Numeric magnitude, used for pivoting and float tolerances.
    fn abs(&self) -> f64;
    /// Numeric magnitude of the imaginary part.
    fn im_abs(&self) -> f64;
    /// Numeric value (approximate for exact scalars).
    fn approx(&self) -> Complex64;

    fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.clone() * o.inv()?)
    }

    fn is_real(&self) -> bool {
        self.conj() == self.clone()
    }

    fn scale_int(&self, n: i64) -> Self {
        self.clone() * Self::from_int(n)
    }

    fn scale_ratio(&self, num: i64, den: i64) -> Self {
        self.clone() * Self::from_ratio(num, den)
    }
}

impl Scalar for Complex64 {
    const FLOAT: bool = true;

    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn from_int(n: i64) -> Self {
        Complex64::new(n as f64, 0.0)
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        Complex64::new(num as f64 / den as f64, 0.0)
    }
    fn i() -> Self {
        Complex64::new(0.0, 1.0)
    }

    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn conj(&self) -> Self {
        Complex64::conj(self)
    }
    fn inv(&self) -> Result<Self> {
        if Scalar::is_zero(self) {
            return Err(Error::DivisionByZero);
        }
        Ok(Complex64::new(1.0, 0.0) / self)
    }

    fn try_exp(&self) -> Option<Self> {
        Some(self.exp())
    }
    fn try_log(&self) -> Option<Self> {
        if Scalar::is_zero(self) {
            None
        } else {
            Some(self.ln())
        }
    }

    fn abs(&self) -> f64 {
        self.norm()
    }
    fn im_abs(&self) -> f64 {
        self.im.abs()
    }
    fn approx(&self) -> Complex64 {
        *self
    }
}
