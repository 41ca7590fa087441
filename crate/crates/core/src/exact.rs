//! Exact arithmetic over the Gaussian rationals Q(i).
//!
//! Jordan structure is discontinuous in floating point, so the small-N
//! decomposition engine and several tests run entirely in this field.

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::matrix::Mat;
use crate::scalar::Scalar;

/// An element `re + i·im` with arbitrary-precision rational parts.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GaussRat {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussRat {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn real(re: BigRational) -> Self {
        Self { re, im: BigRational::zero() }
    }

    /// `num/den` as a real element.
    pub fn ratio(num: i64, den: i64) -> Self {
        Self::real(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        Self { re: BigRational::from_integer(BigInt::from(re)), im: BigRational::from_integer(BigInt::from(im)) }
    }

    /// Exact binary value of a complex double. Returns `None` for NaN/Inf.
    pub fn from_complex_exact(z: Complex64) -> Option<Self> {
        Some(Self { re: BigRational::from_float(z.re)?, im: BigRational::from_float(z.im)? })
    }

    /// Recovers a "nice" rational from a double: the first continued-fraction
    /// convergent with denominator at most `max_den` that reproduces the input
    /// to within a few ulps, falling back to the exact binary value.
    pub fn from_complex_rationalized(z: Complex64, max_den: u64) -> Option<Self> {
        Some(Self { re: rationalize_or_exact(z.re, max_den)?, im: rationalize_or_exact(z.im, max_den)? })
    }

    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Lexicographic order on (re, im), used to sort exact eigenvalues.
    pub fn lex_cmp(&self, other: &Self) -> Ordering {
        self.re.cmp(&other.re).then_with(|| self.im.cmp(&other.im))
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = acc * self.clone();
        }
        acc
    }
}

fn rat_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

fn rationalize_or_exact(x: f64, max_den: u64) -> Option<BigRational> {
    if !x.is_finite() {
        return None;
    }
    let tol = 4.0 * f64::EPSILON * num_traits::Float::abs(x).max(f64::MIN_POSITIVE);
    for c in convergents(x, max_den) {
        if num_traits::Float::abs(rat_to_f64(&c) - x) <= tol {
            return Some(c);
        }
    }
    BigRational::from_float(x)
}

/// Continued-fraction convergents of `x` with denominators up to `max_den`.
pub fn convergents(x: f64, max_den: u64) -> Vec<BigRational> {
    let mut out = Vec::new();
    if !x.is_finite() {
        return out;
    }
    // exact binary value, then run Euclid on numerator/denominator
    let exact = match BigRational::from_float(x) {
        Some(r) => r,
        None => return out,
    };
    let mut num = exact.numer().clone();
    let mut den = exact.denom().clone();
    let (mut p0, mut q0) = (BigInt::zero(), BigInt::one());
    let (mut p1, mut q1) = (BigInt::one(), BigInt::zero());
    let limit = BigInt::from(max_den);
    while !den.is_zero() {
        let (a, r) = num.div_mod_floor(&den);
        let p2 = &a * &p1 + &p0;
        let q2 = &a * &q1 + &q0;
        if q2 > limit {
            break;
        }
        out.push(BigRational::new(p2.clone(), q2.clone()));
        p0 = core::mem::replace(&mut p1, p2);
        q0 = core::mem::replace(&mut q1, q2);
        num = core::mem::replace(&mut den, r);
    }
    out
}

impl fmt::Debug for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            write!(f, "{}i", self.im)
        } else if self.im.is_negative() {
            write!(f, "{}-{}i", self.re, -self.im.clone())
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

impl Add for GaussRat {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self { re: self.re + o.re, im: self.im + o.im }
    }
}

impl Sub for GaussRat {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self { re: self.re - o.re, im: self.im - o.im }
    }
}

impl Mul for GaussRat {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Self { re: &self.re * &o.re - &self.im * &o.im, im: &self.re * &o.im + &self.im * &o.re }
    }
}

impl Div for GaussRat {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        let d = o.norm_sqr();
        assert!(!d.is_zero(), "division by zero in Q(i)");
        Self { re: (&self.re * &o.re + &self.im * &o.im) / &d, im: (&self.im * &o.re - &self.re * &o.im) / &d }
    }
}

impl Neg for GaussRat {
    type Output = Self;
    fn neg(self) -> Self {
        Self { re: -self.re, im: -self.im }
    }
}

impl Scalar for GaussRat {
    fn zero() -> Self {
        Self { re: BigRational::zero(), im: BigRational::zero() }
    }
    fn one() -> Self {
        Self { re: BigRational::one(), im: BigRational::zero() }
    }
    fn from_i64(v: i64) -> Self {
        Self::from_ints(v, 0)
    }
    fn from_f64(v: f64) -> Self {
        Self::real(BigRational::from_float(v).expect("finite value"))
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn negligible(&self, _tol: f64) -> bool {
        self.is_zero()
    }
    fn magnitude(&self) -> f64 {
        if self.is_zero() {
            0.0
        } else {
            num_traits::Float::sqrt(rat_to_f64(&self.norm_sqr()))
        }
    }
    fn to_complex(&self) -> Complex64 {
        Complex64::new(rat_to_f64(&self.re), rat_to_f64(&self.im))
    }
    fn conj(&self) -> Self {
        Self { re: self.re.clone(), im: -self.im.clone() }
    }
}

/// Matrix over Q(i) with the given integer entries.
pub fn int_matrix(rows: &[Vec<i64>]) -> Mat<GaussRat> {
    Mat::from_rows(&rows.iter().map(|r| r.iter().map(|&x| GaussRat::from_ints(x, 0)).collect()).collect::<Vec<_>>())
}
