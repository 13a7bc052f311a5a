use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::gaussian::{add, mul, neg, write_numerator};
use super::{ComplexF, FastScalar, GaussianInt, Scalar};
use crate::error::{Error, Result};

/// Exact value `(re_num + j*im_num) * 2^-exp`.
///
/// Always stored in canonical form: `exp` is as small as possible, so when
/// `exp > 0` at least one numerator is odd, and zero is `0 * 2^0`. Equality of
/// canonical forms is therefore equality of values.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct DyadicGaussian {
    re_num: i64,
    im_num: i64,
    exp: u32,
}

impl DyadicGaussian {
    pub const ZERO: Self = Self { re_num: 0, im_num: 0, exp: 0 };
    pub const ONE: Self = Self { re_num: 1, im_num: 0, exp: 0 };
    pub const J: Self = Self { re_num: 0, im_num: 1, exp: 0 };
    pub const HALF: Self = Self { re_num: 1, im_num: 0, exp: 1 };

    /// Builds `(re + j*im) * 2^-exp` and canonicalizes it.
    pub fn new(re_num: i64, im_num: i64, exp: u32) -> Self {
        let mut v = Self { re_num, im_num, exp };
        v.canonicalize();
        v
    }

    pub fn from_int(re: i64) -> Self {
        Self::new(re, 0, 0)
    }

    pub fn re_num(&self) -> i64 {
        self.re_num
    }

    pub fn im_num(&self) -> i64 {
        self.im_num
    }

    pub fn exp(&self) -> u32 {
        self.exp
    }

    /// The Gaussian integer numerator.
    pub fn numerator(&self) -> GaussianInt {
        GaussianInt::new(self.re_num, self.im_num)
    }

    /// `Some` when the value is a Gaussian integer.
    pub fn as_gaussian(&self) -> Option<GaussianInt> {
        (self.exp == 0).then(|| self.numerator())
    }

    fn canonicalize(&mut self) {
        if self.re_num == 0 && self.im_num == 0 {
            self.exp = 0;
            return;
        }
        while self.exp > 0 && self.re_num % 2 == 0 && self.im_num % 2 == 0 {
            self.re_num /= 2;
            self.im_num /= 2;
            self.exp -= 1;
        }
    }

    /// Numerators rescaled to exponent `exp` (which must be >= `self.exp`).
    fn numerators_at(&self, exp: u32) -> Result<(i64, i64)> {
        let shift = exp - self.exp;
        let factor = 2_i64.checked_pow(shift).ok_or(Error::Overflow("align"))?;
        Ok((mul(self.re_num, factor)?, mul(self.im_num, factor)?))
    }

    pub fn checked_add(self, rhs: Self) -> Result<Self> {
        let exp = self.exp.max(rhs.exp);
        let (ar, ai) = self.numerators_at(exp)?;
        let (br, bi) = rhs.numerators_at(exp)?;
        Ok(Self::new(add(ar, br)?, add(ai, bi)?, exp))
    }

    pub fn checked_neg(self) -> Result<Self> {
        Ok(Self { re_num: neg(self.re_num)?, im_num: neg(self.im_num)?, exp: self.exp })
    }

    pub fn checked_sub(self, rhs: Self) -> Result<Self> {
        self.checked_add(rhs.checked_neg()?)
    }

    pub fn checked_mul(self, rhs: Self) -> Result<Self> {
        let num = self.numerator().checked_mul(rhs.numerator())?;
        let exp = self.exp.checked_add(rhs.exp).ok_or(Error::Overflow("exp"))?;
        Ok(Self::new(num.re, num.im, exp))
    }

    pub fn checked_halve(self) -> Result<Self> {
        let exp = self.exp.checked_add(1).ok_or(Error::Overflow("exp"))?;
        Ok(Self::new(self.re_num, self.im_num, exp))
    }

    pub fn checked_mul_j(self) -> Result<Self> {
        Ok(Self { re_num: neg(self.im_num)?, im_num: self.re_num, exp: self.exp })
    }

    pub fn conj(self) -> Self {
        Self { im_num: self.im_num.checked_neg().expect("conjugate overflowed"), ..self }
    }

    pub fn is_zero(&self) -> bool {
        self.re_num == 0 && self.im_num == 0
    }

    pub fn to_complex(self) -> ComplexF {
        let scale = 0.5_f64.powi(self.exp as i32);
        ComplexF::new(self.re_num as f64 * scale, self.im_num as f64 * scale)
    }
}

/// Exact sum of two dyadic values.
pub fn dyadic_add(a: DyadicGaussian, b: DyadicGaussian) -> Result<DyadicGaussian> {
    a.checked_add(b)
}

impl From<GaussianInt> for DyadicGaussian {
    fn from(z: GaussianInt) -> Self {
        Self::new(z.re, z.im, 0)
    }
}

impl fmt::Display for DyadicGaussian {
    /// `1`, `-1j`, `1/2`, `(1-1j)/2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp == 0 {
            return write_numerator(f, self.re_num, self.im_num);
        }
        let both = self.re_num != 0 && self.im_num != 0;
        if both {
            write!(f, "(")?;
        }
        write_numerator(f, self.re_num, self.im_num)?;
        if both {
            write!(f, ")")?;
        }
        write!(f, "/{}", 1_u128 << self.exp)
    }
}

impl FromStr for DyadicGaussian {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("not a dyadic Gaussian value: {s:?}"));
        let s = s.trim();
        let (num, exp) = match s.rsplit_once('/') {
            Some((num, den)) => {
                let den: u128 = den.trim().parse().map_err(|_| bad())?;
                if !den.is_power_of_two() {
                    return Err(bad());
                }
                let num = num.trim();
                let num = num.strip_prefix('(').and_then(|n| n.strip_suffix(')')).unwrap_or(num);
                (num, den.trailing_zeros())
            }
            None => (s, 0),
        };
        let (re, im) = parse_numerator(num).ok_or_else(bad)?;
        let v = Self::new(re, im, exp);
        if v.exp != exp {
            // reject non-canonical spellings such as "2/2"
            return Err(bad());
        }
        Ok(v)
    }
}

fn parse_numerator(s: &str) -> Option<(i64, i64)> {
    let Some(body) = s.strip_suffix('j') else {
        return Some((s.parse().ok()?, 0));
    };
    // split point is the last sign that is not the leading one
    let split = body.char_indices().skip(1).filter(|&(_, c)| c == '+' || c == '-').map(|(i, _)| i).last();
    match split {
        Some(i) => {
            let re = body[..i].parse().ok()?;
            let im_str = body[i..].strip_prefix('+').unwrap_or(&body[i..]);
            Some((re, im_str.parse().ok()?))
        }
        None => Some((0, body.parse().ok()?)),
    }
}

impl TryFrom<String> for DyadicGaussian {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<DyadicGaussian> for String {
    fn from(v: DyadicGaussian) -> String {
        v.to_string()
    }
}

impl Add for DyadicGaussian {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.checked_add(rhs).expect("dyadic addition overflowed")
    }
}

impl Sub for DyadicGaussian {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.checked_sub(rhs).expect("dyadic subtraction overflowed")
    }
}

impl Neg for DyadicGaussian {
    type Output = Self;
    fn neg(self) -> Self {
        self.checked_neg().expect("dyadic negation overflowed")
    }
}

impl Mul for DyadicGaussian {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.checked_mul(rhs).expect("dyadic multiplication overflowed")
    }
}

impl Scalar for DyadicGaussian {
    fn zero() -> Self {
        Self::ZERO
    }

    fn one() -> Self {
        Self::ONE
    }

    fn checked_add(self, rhs: Self) -> Result<Self> {
        DyadicGaussian::checked_add(self, rhs)
    }

    fn checked_sub(self, rhs: Self) -> Result<Self> {
        DyadicGaussian::checked_sub(self, rhs)
    }

    fn checked_mul(self, rhs: Self) -> Result<Self> {
        DyadicGaussian::checked_mul(self, rhs)
    }

    fn conj(self) -> Self {
        DyadicGaussian::conj(self)
    }

    fn norm_sqr(self) -> f64 {
        self.to_complex().norm_sqr()
    }

    fn to_complex(self) -> ComplexF {
        DyadicGaussian::to_complex(self)
    }
}

impl FastScalar for DyadicGaussian {
    fn mul_j(self) -> Self {
        self.checked_mul_j().expect("dyadic j-rotation overflowed")
    }

    fn halve(self) -> Self {
        self.checked_halve().expect("dyadic halving overflowed")
    }
}
