//! Exact coefficient field abstraction.
//!
//! Every symbolic quantity in the crate carries coefficients from a field
//! implementing [`Scalar`]. The bound set is what canonical forms need:
//! a total order (terms are keyed on exponential frequencies), hashing,
//! exact field arithmetic, and a text round trip through `Display`/`FromStr`.
//!
//! `num_rational::BigRational` is the default (see the aliases at the crate
//! root); `num_rational::Rational64` works for small problems and is used in
//! tests to exercise the generic paths. Floating point types are deliberately
//! not admitted: they are neither `Ord` nor `Hash`.

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::str::FromStr;

use num_traits::{FromPrimitive, Num, Signed};

pub trait Scalar:
    Clone
    + Debug
    + Display
    + Eq
    + Ord
    + Hash
    + Num
    + Signed
    + FromPrimitive
    + FromStr
    + Send
    + Sync
    + 'static
{
    fn from_int(n: i64) -> Self {
        Self::from_i64(n).expect("integer conversion into scalar field")
    }

    fn parse_literal(text: &str) -> Option<Self> {
        Self::from_str(text).ok()
    }
}

impl<T> Scalar for T where
    T: Clone
        + Debug
        + Display
        + Eq
        + Ord
        + Hash
        + Num
        + Signed
        + FromPrimitive
        + FromStr
        + Send
        + Sync
        + 'static
{
}
