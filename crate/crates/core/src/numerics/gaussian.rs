use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::{ComplexF, FastScalar, Scalar};
use crate::error::{Error, Result};

/// Exact complex integer `re + j*im`.
///
/// Ordering is lexicographic on `(re, im)`; it exists only so that search
/// results can be tie-broken deterministically.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GaussianInt {
    pub re: i64,
    pub im: i64,
}

impl GaussianInt {
    pub const ZERO: Self = Self::new(0, 0);
    pub const ONE: Self = Self::new(1, 0);
    pub const J: Self = Self::new(0, 1);

    pub const fn new(re: i64, im: i64) -> Self {
        Self { re, im }
    }

    /// `j*z`: a swap and one negation.
    pub fn mul_j(self) -> Self {
        Self::new(-self.im, self.re)
    }

    pub fn conj(self) -> Self {
        Self::new(self.re, -self.im)
    }

    pub fn checked_neg(self) -> Result<Self> {
        Ok(Self::new(neg(self.re)?, neg(self.im)?))
    }

    pub fn checked_add(self, rhs: Self) -> Result<Self> {
        Ok(Self::new(add(self.re, rhs.re)?, add(self.im, rhs.im)?))
    }

    pub fn checked_sub(self, rhs: Self) -> Result<Self> {
        Ok(Self::new(sub(self.re, rhs.re)?, sub(self.im, rhs.im)?))
    }

    pub fn checked_mul(self, rhs: Self) -> Result<Self> {
        let re = sub(mul(self.re, rhs.re)?, mul(self.im, rhs.im)?)?;
        let im = add(mul(self.re, rhs.im)?, mul(self.im, rhs.re)?)?;
        Ok(Self::new(re, im))
    }

    /// Exact `re^2 + im^2`.
    pub fn norm_sqr_exact(self) -> i128 {
        let (re, im) = (self.re as i128, self.im as i128);
        re * re + im * im
    }

    /// Whether both components lie in `{0, ±1, ±2}`.
    pub fn in_small_set(self) -> bool {
        self.re.abs() <= 2 && self.im.abs() <= 2
    }

    /// `|re| + |im|`, the number of unit current copies needed for this weight.
    pub fn l1(self) -> i64 {
        self.re.abs() + self.im.abs()
    }

    pub fn to_complex(self) -> ComplexF {
        ComplexF::new(self.re as f64, self.im as f64)
    }
}

/// Multiply by `j`.
pub fn gauss_mul_j(z: GaussianInt) -> GaussianInt {
    z.mul_j()
}

pub(super) fn add(a: i64, b: i64) -> Result<i64> {
    a.checked_add(b).ok_or(Error::Overflow("add"))
}

pub(super) fn sub(a: i64, b: i64) -> Result<i64> {
    a.checked_sub(b).ok_or(Error::Overflow("sub"))
}

pub(super) fn mul(a: i64, b: i64) -> Result<i64> {
    a.checked_mul(b).ok_or(Error::Overflow("mul"))
}

pub(super) fn neg(a: i64) -> Result<i64> {
    a.checked_neg().ok_or(Error::Overflow("neg"))
}

/// Writes `a+bj` in the compact form used everywhere for exact values:
/// `3`, `-2j`, `1-1j`.
pub(super) fn write_numerator(f: &mut fmt::Formatter<'_>, re: i64, im: i64) -> fmt::Result {
    match (re, im) {
        (re, 0) => write!(f, "{re}"),
        (0, im) => write!(f, "{im}j"),
        (re, im) if im < 0 => write!(f, "{re}-{}j", im.unsigned_abs()),
        (re, im) => write!(f, "{re}+{im}j"),
    }
}

impl fmt::Display for GaussianInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_numerator(f, self.re, self.im)
    }
}

impl Add for GaussianInt {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.checked_add(rhs).expect("GaussianInt addition overflowed")
    }
}

impl Sub for GaussianInt {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.checked_sub(rhs).expect("GaussianInt subtraction overflowed")
    }
}

impl Neg for GaussianInt {
    type Output = Self;
    fn neg(self) -> Self {
        self.checked_neg().expect("GaussianInt negation overflowed")
    }
}

impl Mul for GaussianInt {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.checked_mul(rhs).expect("GaussianInt multiplication overflowed")
    }
}

impl Scalar for GaussianInt {
    fn zero() -> Self {
        Self::ZERO
    }

    fn one() -> Self {
        Self::ONE
    }

    fn checked_add(self, rhs: Self) -> Result<Self> {
        GaussianInt::checked_add(self, rhs)
    }

    fn checked_sub(self, rhs: Self) -> Result<Self> {
        GaussianInt::checked_sub(self, rhs)
    }

    fn checked_mul(self, rhs: Self) -> Result<Self> {
        GaussianInt::checked_mul(self, rhs)
    }

    fn conj(self) -> Self {
        GaussianInt::conj(self)
    }

    fn norm_sqr(self) -> f64 {
        self.norm_sqr_exact() as f64
    }

    fn to_complex(self) -> ComplexF {
        GaussianInt::to_complex(self)
    }
}

impl FastScalar for GaussianInt {
    fn mul_j(self) -> Self {
        GaussianInt::mul_j(self)
    }

    /// Integer halving is only exact on even values; odd components panic.
    fn halve(self) -> Self {
        assert!(self.re % 2 == 0 && self.im % 2 == 0, "cannot halve {self} exactly as a Gaussian integer");
        Self::new(self.re / 2, self.im / 2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mul_j_examples() {
        assert_eq!(gauss_mul_j(GaussianInt::new(1, 0)), GaussianInt::new(0, 1));
        assert_eq!(gauss_mul_j(GaussianInt::new(1, -1)), GaussianInt::new(1, 1));
        let mut z = GaussianInt::new(0, 1);
        for _ in 0..4 {
            z = gauss_mul_j(z);
        }
        assert_eq!(z, GaussianInt::new(0, 1));
    }

    #[test]
    fn mul_j_agrees_with_multiplication() {
        let z = GaussianInt::new(-3, 7);
        assert_eq!(z.mul_j(), z * GaussianInt::J);
    }

    #[test]
    fn overflow_is_reported() {
        let big = GaussianInt::new(i64::MAX, 0);
        assert_eq!(big.checked_add(GaussianInt::ONE), Err(Error::Overflow("add")));
        assert!(GaussianInt::new(i64::MIN, 0).checked_neg().is_err());
        assert!(big.checked_mul(GaussianInt::new(2, 0)).is_err());
    }

    #[test]
    #[should_panic(expected = "overflowed")]
    fn operator_panics_instead_of_wrapping() {
        let _ = GaussianInt::new(i64::MAX, 0) + GaussianInt::ONE;
    }

    #[test]
    fn display() {
        assert_eq!(GaussianInt::new(1, -1).to_string(), "1-1j");
        assert_eq!(GaussianInt::new(-1, 1).to_string(), "-1+1j");
        assert_eq!(GaussianInt::new(0, -2).to_string(), "-2j");
        assert_eq!(GaussianInt::new(2, 0).to_string(), "2");
        assert_eq!(GaussianInt::ZERO.to_string(), "0");
    }
}
