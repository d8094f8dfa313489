//! Coefficient traits.
//!
//! Everything in this crate is generic over an exact field of fractions
//! `Scalar`, whose elements decompose into numerator and denominator over an
//! integer type `Scalar::Int`. Rank computations clear denominators and run
//! integer-preserving elimination on `Int` (with a machine-word fast path).
//! `Ratio<I>` for any signed integer `I` qualifies; the crate root fixes the
//! arbitrary-precision choice as [`crate::Rational`].

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{CheckedMul, CheckedSub, FromPrimitive, Num, One, Signed, ToPrimitive, Zero};

/// Integer ring backing a [`Scalar`]. Checked operations must return `None`
/// only on overflow.
pub trait ExactInt:
    Clone
    + Debug
    + Display
    + Hash
    + Integer
    + Signed
    + CheckedMul
    + CheckedSub
    + ToPrimitive
    + FromPrimitive
    + Send
    + Sync
    + 'static
{
}

impl<T> ExactInt for T where
    T: Clone
        + Debug
        + Display
        + Hash
        + Integer
        + Signed
        + CheckedMul
        + CheckedSub
        + ToPrimitive
        + FromPrimitive
        + Send
        + Sync
        + 'static
{
}

/// An exact field of fractions over [`ExactInt`].
pub trait Scalar:
    Clone + Debug + Display + Eq + Hash + Num + Signed + Send + Sync + 'static
{
    type Int: ExactInt;

    fn numer_int(&self) -> Self::Int;
    fn denom_int(&self) -> Self::Int;
    /// `n / d`, reduced. `d` must be nonzero.
    fn from_parts(n: Self::Int, d: Self::Int) -> Self;

    fn from_int(n: Self::Int) -> Self {
        Self::from_parts(n, Self::Int::one())
    }

    fn from_i64(v: i64) -> Self {
        Self::from_int(Self::Int::from_i64(v).expect("i64 fits every ExactInt"))
    }

    fn from_u64(v: u64) -> Self {
        Self::from_int(Self::Int::from_u64(v).expect("coefficient does not fit the integer type"))
    }

    /// Smallest integer not below `self`.
    fn ceil_int(&self) -> Self::Int {
        let (q, r) = self.numer_int().div_mod_floor(&self.denom_int());
        if r.is_zero() {
            q
        } else {
            q + Self::Int::one()
        }
    }
}

impl<I> Scalar for Ratio<I>
where
    I: ExactInt,
{
    type Int = I;

    fn numer_int(&self) -> I {
        self.numer().clone()
    }

    fn denom_int(&self) -> I {
        self.denom().clone()
    }

    fn from_parts(n: I, d: I) -> Self {
        Ratio::new(n, d)
    }
}

/// Parse a non-negative decimal integer literal into `I`.
pub(crate) fn parse_int<I: ExactInt>(digits: &str) -> Option<I> {
    <I as Num>::from_str_radix(digits, 10).ok()
}
