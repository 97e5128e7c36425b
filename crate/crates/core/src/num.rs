//! Scalar traits for the generic numeric core.
//!
//! The matrix and polynomial engines are written against these bounds, not
//! against a concrete number type. The crate-root aliases instantiate them
//! with `BigInt` / `BigRational`; any `num-traits` scalar with exact
//! arithmetic works the same way.

use std::fmt;
use std::ops::{Div, Neg, Sub};

use num_traits::{One, Signed, Zero};

/// Commutative ring scalar: enough structure for polynomial arithmetic.
pub trait Ring:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Signed
    + Neg<Output = Self>
    + Sub<Output = Self>
{
}

impl<T> Ring for T where
    T: Clone
        + PartialEq
        + fmt::Debug
        + fmt::Display
        + Zero
        + One
        + Signed
        + Neg<Output = Self>
        + Sub<Output = Self>
{
}

/// Field scalar: a ring with exact division, as used by the elimination code.
pub trait Field: Ring + Div<Output = Self> {}

impl<T> Field for T where T: Ring + Div<Output = Self> {}
