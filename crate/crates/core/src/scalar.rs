//! Field abstraction shared by the floating-point and exact backends.

use core::fmt::Debug;
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;

/// A field element usable by the generic matrix and polynomial code.
///
/// `negligible` is the single place where the two backends differ: the
/// floating-point field compares magnitudes against a tolerance while the
/// exact field only ever treats a true zero as negligible.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn from_f64(v: f64) -> Self;
    fn is_zero(&self) -> bool;
    fn negligible(&self, tol: f64) -> bool;
    /// Magnitude used for pivot selection.
    fn magnitude(&self) -> f64;
    fn to_complex(&self) -> Complex64;
    fn conj(&self) -> Self;
}

impl Scalar for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn from_i64(v: i64) -> Self {
        Complex64::new(v as f64, 0.0)
    }
    fn from_f64(v: f64) -> Self {
        Complex64::new(v, 0.0)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn negligible(&self, tol: f64) -> bool {
        self.norm() <= tol
    }
    fn magnitude(&self) -> f64 {
        self.norm()
    }
    fn to_complex(&self) -> Complex64 {
        *self
    }
    fn conj(&self) -> Self {
        Complex64::conj(self)
    }
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_i64(v: i64) -> Self {
        v as f64
    }
    fn from_f64(v: f64) -> Self {
        v
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn negligible(&self, tol: f64) -> bool {
        num_traits::Float::abs(*self) <= tol
    }
    fn magnitude(&self) -> f64 {
        num_traits::Float::abs(*self)
    }
    fn to_complex(&self) -> Complex64 {
        Complex64::new(*self, 0.0)
    }
    fn conj(&self) -> Self {
        *self
    }
}

/// Complex number shorthand.
pub fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}
