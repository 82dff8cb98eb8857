//! Numeric traits shared by every generic routine in the crate.

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::{Integer, Rational};

/// A coefficient type: a commutative ring containing ℚ, with context-free
/// identities.
///
/// Implemented by [`Rational`] and by [`BetaPoly`](crate::series::BetaPoly).
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Neg<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Send
    + Sync
{
    fn from_rational(q: Rational) -> Self;

    fn scale(&self, q: &Rational) -> Self;
}

impl Scalar for Rational {
    fn from_rational(q: Rational) -> Self {
        q
    }

    fn scale(&self, q: &Rational) -> Self {
        self * q
    }
}

/// The ring interface consumed by the Pfaffian algorithms.
///
/// Elements may carry context (a truncation cap), so identities are produced
/// from an existing element rather than out of thin air.
pub trait Ring:
    Clone
    + Debug
    + PartialEq
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
{
    fn zero_like(&self) -> Self;

    fn one_like(&self) -> Self;

    fn is_zero_elem(&self) -> bool;

    /// Exact division by a nonzero integer.
    fn div_integer(&self, d: &Integer) -> Self;
}

impl<S: Scalar> Ring for S {
    fn zero_like(&self) -> Self {
        S::zero()
    }

    fn one_like(&self) -> Self {
        S::one()
    }

    fn is_zero_elem(&self) -> bool {
        Zero::is_zero(self)
    }

    fn div_integer(&self, d: &Integer) -> Self {
        self.scale(&Rational::new(Integer::one(), d.clone()))
    }
}
