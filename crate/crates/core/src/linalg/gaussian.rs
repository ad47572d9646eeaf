use num_bigint::BigInt;

use super::{ComplexRational, Rational};

/// Gaussian integer over `i128` with checked arithmetic. Fast path for
/// Gamma-matrix products, whose entries are Gaussian integers once
/// denominators are scaled out.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct GaussianInt {
    pub re: i128,
    pub im: i128,
}

impl GaussianInt {
    pub const fn new(re: i128, im: i128) -> Self {
        Self { re, im }
    }

    pub fn checked_add(self, rhs: Self) -> Option<Self> {
        Some(Self::new(self.re.checked_add(rhs.re)?, self.im.checked_add(rhs.im)?))
    }

    pub fn checked_sub(self, rhs: Self) -> Option<Self> {
        Some(Self::new(self.re.checked_sub(rhs.re)?, self.im.checked_sub(rhs.im)?))
    }

    pub fn checked_mul(self, rhs: Self) -> Option<Self> {
        if self.im == 0 && rhs.im == 0 {
            return Some(Self::new(self.re.checked_mul(rhs.re)?, 0));
        }
        let re = self.re.checked_mul(rhs.re)?.checked_sub(self.im.checked_mul(rhs.im)?)?;
        let im = self.re.checked_mul(rhs.im)?.checked_add(self.im.checked_mul(rhs.re)?)?;
        Some(Self::new(re, im))
    }

    /// `None` unless both parts are integers that fit in `i128`.
    pub fn from_exact(z: &ComplexRational) -> Option<Self> {
        Some(Self::new(z.re.to_i128()?, z.im.to_i128()?))
    }

    pub fn to_exact(self) -> ComplexRational {
        ComplexRational::new(
            Rational::from_integer(BigInt::from(self.re)),
            Rational::from_integer(BigInt::from(self.im)),
        )
    }
}
