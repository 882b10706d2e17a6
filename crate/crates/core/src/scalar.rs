//! Numeric traits shared by the generic polynomial and linear-algebra code.

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{Num, ToPrimitive};

/// A commutative ring element with the conversions this crate needs.
pub trait Scalar: Num + Clone + Debug + Display + PartialOrd {
    fn from_i64(value: i64) -> Self;

    /// Exact integer value, if `self` represents one.
    fn as_integer(&self) -> Option<BigInt>;
}

/// A [`Scalar`] supporting division (exactly, or approximately for floats).
pub trait Field: Scalar {
    fn ratio(num: i64, den: i64) -> Self {
        Self::from_i64(num) / Self::from_i64(den)
    }
}

macro_rules! float_scalar {
    ($($t:ty),*) => {$(
        impl Scalar for $t {
            fn from_i64(value: i64) -> Self {
                value as $t
            }

            fn as_integer(&self) -> Option<BigInt> {
                if self.fract() == 0.0 {
                    self.to_i128().map(BigInt::from)
                } else {
                    None
                }
            }
        }

        impl Field for $t {}
    )*};
}

float_scalar!(f32, f64);

impl Scalar for i64 {
    fn from_i64(value: i64) -> Self {
        value
    }

    fn as_integer(&self) -> Option<BigInt> {
        Some(BigInt::from(*self))
    }
}

impl Scalar for BigInt {
    fn from_i64(value: i64) -> Self {
        BigInt::from(value)
    }

    fn as_integer(&self) -> Option<BigInt> {
        Some(self.clone())
    }
}

impl Scalar for BigRational {
    fn from_i64(value: i64) -> Self {
        BigRational::from_integer(BigInt::from(value))
    }

    fn as_integer(&self) -> Option<BigInt> {
        self.is_integer().then(|| self.to_integer())
    }
}

impl Field for BigRational {
    fn ratio(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }
}

impl Scalar for Ratio<i64> {
    fn from_i64(value: i64) -> Self {
        Ratio::from_integer(value)
    }

    fn as_integer(&self) -> Option<BigInt> {
        self.is_integer().then(|| BigInt::from(*self.numer()))
    }
}

impl Field for Ratio<i64> {
    fn ratio(num: i64, den: i64) -> Self {
        Ratio::new(num, den)
    }
}

/// `C(n, k)` for arbitrary (possibly negative) integer `n` and `k >= 0`,
/// as the polynomial `n (n-1) ... (n-k+1) / k!`. Returns 0 for `k < 0`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 {
        return BigInt::from(0);
    }
    let mut acc = BigInt::from(1);
    for i in 0..k {
        acc *= BigInt::from(n - i);
        acc /= BigInt::from(i + 1);
    }
    acc
}

pub(crate) fn is_negative<T: Scalar>(x: &T) -> bool {
    *x < T::zero()
}
