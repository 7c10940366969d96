//! Scalar abstraction for item weights and scores.
//!
//! Weights are exact integers. Every type in the crate that stores a weight or
//! a score is generic over [`Weight`], so callers can pick the narrowest
//! signed integer that fits their data. All arithmetic on weights goes through
//! the checked helpers below; the crate never wraps silently.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_traits::{NumCast, PrimInt, Signed};
use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::error::{CdoError, Result};

/// Signed primitive integer usable as an item weight.
pub trait Weight:
    PrimInt
    + Signed
    + NumCast
    + Debug
    + Display
    + Hash
    + Default
    + Send
    + Sync
    + Serialize
    + DeserializeOwned
    + 'static
{
}

impl<T> Weight for T where
    T: PrimInt
        + Signed
        + NumCast
        + Debug
        + Display
        + Hash
        + Default
        + Send
        + Sync
        + Serialize
        + DeserializeOwned
        + 'static
{
}

pub(crate) fn add<W: Weight>(a: W, b: W) -> Result<W> {
    a.checked_add(&b).ok_or(CdoError::Overflow)
}

pub(crate) fn sub<W: Weight>(a: W, b: W) -> Result<W> {
    a.checked_sub(&b).ok_or(CdoError::Overflow)
}

pub(crate) fn mul<W: Weight>(a: W, b: W) -> Result<W> {
    a.checked_mul(&b).ok_or(CdoError::Overflow)
}

pub(crate) fn sum<W: Weight, I: IntoIterator<Item = W>>(values: I) -> Result<W> {
    values.into_iter().try_fold(W::zero(), add)
}

/// Converts a count into the weight type.
pub(crate) fn from_count<W: Weight>(n: usize) -> Result<W> {
    W::from(n).ok_or(CdoError::Overflow)
}

pub(crate) fn to_i64<W: Weight>(w: W) -> Result<i64> {
    w.to_i64().ok_or(CdoError::Overflow)
}

pub(crate) fn from_i64<W: Weight>(v: i64) -> Result<W> {
    W::from(v).ok_or(CdoError::Overflow)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn checked_helpers_report_overflow() {
        assert_eq!(add(i8::MAX, 1i8), Err(CdoError::Overflow));
        assert_eq!(mul(i16::MIN, -1i16), Err(CdoError::Overflow));
        assert_eq!(sum([1i32, 2, 3]), Ok(6));
        assert_eq!(from_count::<i8>(300), Err(CdoError::Overflow));
        assert_eq!(from_i64::<i32>(i64::MAX), Err(CdoError::Overflow));
    }
}
