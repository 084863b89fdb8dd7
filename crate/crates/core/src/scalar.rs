//! Scalar abstraction for the LP layer.
//!
//! The simplex solver is written once against [`LpScalar`]. Exact rationals
//! give certified optima; `f64` is available for quick cross-checks.

use std::fmt::Debug;
use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{Num, Signed, Zero};

pub trait LpScalar: Num + Clone + PartialOrd + Neg<Output = Self> + Debug {
    fn from_u64(x: u64) -> Self;

    /// Sign tests used for pivoting decisions. Exact types compare with
    /// zero; floating types apply a tolerance.
    fn is_pos(&self) -> bool;
    fn is_neg(&self) -> bool;
}

impl LpScalar for BigRational {
    fn from_u64(x: u64) -> Self {
        BigRational::from_integer(BigInt::from(x))
    }

    fn is_pos(&self) -> bool {
        self.is_positive()
    }

    fn is_neg(&self) -> bool {
        self.is_negative()
    }
}

impl LpScalar for Ratio<i128> {
    fn from_u64(x: u64) -> Self {
        Ratio::from_integer(x as i128)
    }

    fn is_pos(&self) -> bool {
        *self > Ratio::zero()
    }

    fn is_neg(&self) -> bool {
        *self < Ratio::zero()
    }
}

const FLOAT_EPS: f64 = 1e-9;

impl LpScalar for f64 {
    fn from_u64(x: u64) -> Self {
        x as f64
    }

    fn is_pos(&self) -> bool {
        *self > FLOAT_EPS
    }

    fn is_neg(&self) -> bool {
        *self < -FLOAT_EPS
    }
}
