//! Field scalars accepted by the dense linear solver.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// A field element. Exact types report zero only for true zero; floating
/// types treat values below a tolerance as zero.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + PartialOrd
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
{
    fn from_bigint(v: &BigInt) -> Self;

    fn negligible(&self) -> bool {
        self.is_zero()
    }

    fn from_i64(v: i64) -> Self {
        Self::from_bigint(&BigInt::from(v))
    }
}

impl Scalar for BigRational {
    fn from_bigint(v: &BigInt) -> Self {
        BigRational::from_integer(v.clone())
    }
}

impl Scalar for f64 {
    fn from_bigint(v: &BigInt) -> Self {
        v.to_f64().unwrap_or(f64::NAN)
    }

    fn negligible(&self) -> bool {
        self.abs() < 1e-9
    }
}

/// `true` for a rational with denominator 1.
pub fn is_integral(q: &BigRational) -> bool {
    q.is_integer()
}

/// `true` for a rational below zero.
pub fn is_negative(q: &BigRational) -> bool {
    q.is_negative()
}
