use std::fmt::Debug;

use crate::base::BaseElem;

/// The handful of operations the generic algorithms (matrices, complement
/// shrinking) need from a commutative ring element.
pub trait RingElem: Clone + PartialEq + Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;

    fn from_int(n: i64) -> Self {
        let mut acc = Self::zero();
        let step = if n < 0 { Self::one().neg() } else { Self::one() };
        for _ in 0..n.unsigned_abs() {
            acc = acc.add(&step);
        }
        acc
    }

    fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }
}

impl RingElem for BaseElem {
    fn zero() -> Self {
        BaseElem::zero()
    }
    fn one() -> Self {
        BaseElem::one()
    }
    fn is_zero(&self) -> bool {
        BaseElem::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        BaseElem::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        BaseElem::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        BaseElem::mul(self, other)
    }
    fn neg(&self) -> Self {
        BaseElem::neg(self)
    }
    fn from_int(n: i64) -> Self {
        BaseElem::from(n)
    }
}
