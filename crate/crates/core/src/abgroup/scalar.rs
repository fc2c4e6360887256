//! Integer scalars for the linear-algebra kernels.
//!
//! Every kernel is written once against [`Scalar`]. The `i64` instance
//! reports [`Overflow`] instead of wrapping, and callers rerun the same
//! kernel over [`BigInt`] when that happens.

use std::cmp::Ordering;
use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Raised by the fixed-width instance when a result leaves `i64`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Overflow;

pub type Checked<T> = Result<T, Overflow>;

pub trait Scalar: Clone + Eq + Ord + Debug + Send + Sync + 'static {
    fn nil() -> Self;
    fn unit() -> Self;
    fn from_big(v: &BigInt) -> Option<Self>;
    fn to_big(&self) -> BigInt;
    fn is_nil(&self) -> bool;
    fn is_neg(&self) -> bool;
    fn add(&self, o: &Self) -> Checked<Self>;
    fn sub(&self, o: &Self) -> Checked<Self>;
    fn mul(&self, o: &Self) -> Checked<Self>;
    fn negated(&self) -> Checked<Self>;
    /// Floor division; the divisor is nonzero.
    fn floor_div(&self, o: &Self) -> Checked<Self>;
    fn is_multiple(&self, o: &Self) -> bool;
    /// Compare absolute values.
    fn abs_cmp(&self, o: &Self) -> Ordering;

    fn is_unit(&self) -> bool {
        self.abs_cmp(&Self::unit()) == Ordering::Equal
    }

    /// `self - q * o`.
    fn sub_mul(&self, q: &Self, o: &Self) -> Checked<Self> {
        self.sub(&q.mul(o)?)
    }
}

impl Scalar for i64 {
    fn nil() -> Self {
        0
    }
    fn unit() -> Self {
        1
    }
    fn from_big(v: &BigInt) -> Option<Self> {
        v.to_i64()
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
    fn is_nil(&self) -> bool {
        *self == 0
    }
    fn is_neg(&self) -> bool {
        *self < 0
    }
    fn add(&self, o: &Self) -> Checked<Self> {
        self.checked_add(*o).ok_or(Overflow)
    }
    fn sub(&self, o: &Self) -> Checked<Self> {
        self.checked_sub(*o).ok_or(Overflow)
    }
    fn mul(&self, o: &Self) -> Checked<Self> {
        self.checked_mul(*o).ok_or(Overflow)
    }
    fn negated(&self) -> Checked<Self> {
        self.checked_neg().ok_or(Overflow)
    }
    fn floor_div(&self, o: &Self) -> Checked<Self> {
        if *self == i64::MIN && *o == -1 {
            return Err(Overflow);
        }
        Ok(Integer::div_floor(self, o))
    }
    fn is_multiple(&self, o: &Self) -> bool {
        if *o == 0 {
            *self == 0
        } else {
            // i128 avoids the MIN % -1 trap
            (*self as i128) % (*o as i128) == 0
        }
    }
    fn abs_cmp(&self, o: &Self) -> Ordering {
        self.unsigned_abs().cmp(&o.unsigned_abs())
    }
}

impl Scalar for BigInt {
    fn nil() -> Self {
        Zero::zero()
    }
    fn unit() -> Self {
        One::one()
    }
    fn from_big(v: &BigInt) -> Option<Self> {
        Some(v.clone())
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
    fn is_nil(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_neg(&self) -> bool {
        Signed::is_negative(self)
    }
    fn add(&self, o: &Self) -> Checked<Self> {
        Ok(self + o)
    }
    fn sub(&self, o: &Self) -> Checked<Self> {
        Ok(self - o)
    }
    fn mul(&self, o: &Self) -> Checked<Self> {
        Ok(self * o)
    }
    fn negated(&self) -> Checked<Self> {
        Ok(-self)
    }
    fn floor_div(&self, o: &Self) -> Checked<Self> {
        Ok(Integer::div_floor(self, o))
    }
    fn is_multiple(&self, o: &Self) -> bool {
        if Zero::is_zero(o) {
            Zero::is_zero(self)
        } else {
            Zero::is_zero(&(self % o))
        }
    }
    fn abs_cmp(&self, o: &Self) -> Ordering {
        self.magnitude().cmp(o.magnitude())
    }
}

/// Try a kernel in `i64` first and fall back to `BigInt` on overflow.
pub fn with_fast_path<R>(
    fits: bool,
    fast: impl FnOnce() -> Checked<R>,
    slow: impl FnOnce() -> Checked<R>,
) -> R {
    if fits {
        if let Ok(r) = fast() {
            return r;
        }
    }
    slow().expect("BigInt arithmetic cannot overflow")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn i64_overflow_is_reported() {
        assert_eq!(i64::MAX.add(&1), Err(Overflow));
        assert_eq!(i64::MIN.floor_div(&-1), Err(Overflow));
        assert_eq!((-7i64).floor_div(&2), Ok(-4));
        assert!(i64::MIN.is_multiple(&-1));
    }

    #[test]
    fn bigint_matches_i64() {
        for a in -20i64..20 {
            for b in [-7i64, -3, -1, 1, 2, 5] {
                let (ba, bb) = (BigInt::from(a), BigInt::from(b));
                assert_eq!(a.floor_div(&b).unwrap().to_big(), ba.floor_div(&bb).unwrap());
                assert_eq!(a.is_multiple(&b), ba.is_multiple(&bb));
                assert_eq!(a.abs_cmp(&b), ba.abs_cmp(&bb));
            }
        }
    }
}
