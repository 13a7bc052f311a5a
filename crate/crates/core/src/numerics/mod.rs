//! Exact and floating-point complex arithmetic shared by every other module.
//!
//! Three scalar types are provided:
//!
//! * [`GaussianInt`], an exact complex integer,
//! * [`DyadicGaussian`], a Gaussian integer times a power of two `2^-exp`,
//! * [`ComplexF`], the double precision mirror used for patterns and objectives.
//!
//! Exact types never round. Every operation that could overflow an `i64` is
//! checked and reported through [`Error::Overflow`](crate::Error::Overflow);
//! the operator impls (`+`, `-`, `*`) panic instead of wrapping.

mod dyadic;
mod gaussian;
mod matrix;

pub use dyadic::{dyadic_add, DyadicGaussian};
pub use gaussian::{gauss_mul_j, GaussianInt};
pub use matrix::{frobenius_norm, matmul, Matrix};

use std::fmt::Debug;
use std::ops::{Add, Neg, Sub};

use crate::error::Result;

/// Double precision complex value.
pub type ComplexF = num_complex::Complex64;

/// Default absolute tolerance for unit-scale float comparisons.
pub const DEFAULT_TOLERANCE: f64 = 1e-12;

/// Ring operations needed by [`Matrix`].
///
/// Exact implementors report overflow; the float implementor never fails.
pub trait Scalar: Copy + PartialEq + Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn checked_add(self, rhs: Self) -> Result<Self>;
    fn checked_sub(self, rhs: Self) -> Result<Self>;
    fn checked_mul(self, rhs: Self) -> Result<Self>;
    fn conj(self) -> Self;
    /// `|z|^2` as a float.
    fn norm_sqr(self) -> f64;
    fn to_complex(self) -> ComplexF;

    fn is_zero(self) -> bool {
        self == Self::zero()
    }
}

/// The operations a multiplierless stage may perform on a sample.
///
/// Anything implementing this can be pushed through the fast algorithm:
/// additions, subtractions, negations, rotation by `j` and halving. No general
/// multiplication is available.
pub trait FastScalar: Copy + Add<Output = Self> + Sub<Output = Self> + Neg<Output = Self> {
    fn mul_j(self) -> Self;
    fn halve(self) -> Self;
}

impl Scalar for ComplexF {
    fn zero() -> Self {
        ComplexF::new(0.0, 0.0)
    }

    fn one() -> Self {
        ComplexF::new(1.0, 0.0)
    }

    fn checked_add(self, rhs: Self) -> Result<Self> {
        Ok(self + rhs)
    }

    fn checked_sub(self, rhs: Self) -> Result<Self> {
        Ok(self - rhs)
    }

    fn checked_mul(self, rhs: Self) -> Result<Self> {
        Ok(self * rhs)
    }

    fn conj(self) -> Self {
        ComplexF::conj(&self)
    }

    fn norm_sqr(self) -> f64 {
        ComplexF::norm_sqr(&self)
    }

    fn to_complex(self) -> ComplexF {
        self
    }
}

impl FastScalar for ComplexF {
    #[inline(always)]
    fn mul_j(self) -> Self {
        ComplexF::new(-self.im, self.re)
    }

    #[inline(always)]
    fn halve(self) -> Self {
        ComplexF::new(self.re * 0.5, self.im * 0.5)
    }
}

/// `e^{-2 pi j k / n}` with exact values on the axes.
///
/// The exponent is reduced modulo `n` first, so large products `i*k` do not
/// lose precision in the angle.
pub fn root_of_unity(k: usize, n: usize) -> ComplexF {
    assert!(n > 0, "root of unity of order 0");
    let k = k % n;
    if (4 * k).is_multiple_of(n) {
        return match 4 * k / n {
            0 => ComplexF::new(1.0, 0.0),
            1 => ComplexF::new(0.0, -1.0),
            2 => ComplexF::new(-1.0, 0.0),
            _ => ComplexF::new(0.0, 1.0),
        };
    }
    let angle = -2.0 * std::f64::consts::PI * k as f64 / n as f64;
    ComplexF::new(angle.cos(), angle.sin())
}

/// Max over `a` of `|a_i - b_i|`, divided by the max modulus of `b` (or 1 if `b` is zero).
pub fn max_relative_deviation(a: &[ComplexF], b: &[ComplexF]) -> f64 {
    let scale = b.iter().map(|z| z.norm()).fold(0.0_f64, f64::max);
    let diff = a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0_f64, f64::max);
    if scale > 0.0 {
        diff / scale
    } else {
        diff
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_on_axes_are_exact() {
        assert_eq!(root_of_unity(0, 8), ComplexF::new(1.0, 0.0));
        assert_eq!(root_of_unity(2, 8), ComplexF::new(0.0, -1.0));
        assert_eq!(root_of_unity(4, 8), ComplexF::new(-1.0, 0.0));
        assert_eq!(root_of_unity(6, 8), ComplexF::new(0.0, 1.0));
        assert_eq!(root_of_unity(1, 2), ComplexF::new(-1.0, 0.0));
        assert_eq!(root_of_unity(49, 8), root_of_unity(1, 8));
    }

    #[test]
    fn eighth_root() {
        let w = root_of_unity(1, 8);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert!((w.re - s).abs() < 1e-15);
        assert!((w.im + s).abs() < 1e-15);
    }

    #[test]
    fn float_fast_ops() {
        let z = ComplexF::new(1.0, -1.0);
        assert_eq!(z.mul_j(), ComplexF::new(1.0, 1.0));
        assert_eq!(z.halve(), ComplexF::new(0.5, -0.5));
    }
}
