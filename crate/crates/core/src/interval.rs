//! Closed intervals with exact rational endpoints.
//!
//! Every operation returns an interval containing all pointwise results.
//! Endpoints are computed exactly, so no outward rounding is ever needed.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalInterval {
    lo: BigRational,
    hi: BigRational,
}

impl RationalInterval {
    pub fn new(lo: BigRational, hi: BigRational) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvalidInterval(format!("[{lo}, {hi}] has lo > hi")));
        }
        Ok(RationalInterval { lo, hi })
    }

    pub(crate) fn new_unchecked(lo: BigRational, hi: BigRational) -> Self {
        debug_assert!(lo <= hi);
        RationalInterval { lo, hi }
    }

    pub fn point(x: BigRational) -> Self {
        RationalInterval { lo: x.clone(), hi: x }
    }

    pub fn from_integers(lo: i64, hi: i64) -> Result<Self> {
        Self::new(BigRational::from_integer(lo.into()), BigRational::from_integer(hi.into()))
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigInt::from(2)
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_interval(&self, other: &Self) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn intersect(&self, other: &Self) -> Option<Self> {
        let lo = (&self.lo).max(&other.lo).clone();
        let hi = (&self.hi).min(&other.hi).clone();
        (lo <= hi).then_some(RationalInterval { lo, hi })
    }

    pub fn hull(&self, other: &Self) -> Self {
        RationalInterval {
            lo: (&self.lo).min(&other.lo).clone(),
            hi: (&self.hi).max(&other.hi).clone(),
        }
    }

    /// Sign shared by every point, or `None` when the interval straddles
    /// zero. A degenerate `[0, 0]` reports `Equal`.
    pub fn sign(&self) -> Option<Ordering> {
        if self.lo.is_positive() {
            Some(Ordering::Greater)
        } else if self.hi.is_negative() {
            Some(Ordering::Less)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        let (x, y) = (&self.lo * k, &self.hi * k);
        if k.is_negative() {
            RationalInterval { lo: y, hi: x }
        } else {
            RationalInterval { lo: x, hi: y }
        }
    }

    pub fn scale_int(&self, k: &BigInt) -> Self {
        self.scale(&BigRational::from_integer(k.clone()))
    }

    /// `None` when `other` contains zero.
    pub fn checked_div(&self, other: &Self) -> Option<Self> {
        if other.contains_zero() {
            return None;
        }
        let inv = RationalInterval {
            lo: other.hi.recip(),
            hi: other.lo.recip(),
        };
        Some(self * &inv)
    }

    /// Exact image of `c₀ + c₁x + c₂x²` over the interval.
    pub fn quadratic_image(&self, c0: &BigRational, c1: &BigRational, c2: &BigRational) -> Self {
        let eval = |x: &BigRational| c0 + x * (c1 + x * c2);
        let mut lo = eval(&self.lo);
        let mut hi = lo.clone();
        let mut include = |v: BigRational| {
            if v < lo {
                lo = v;
            } else if v > hi {
                hi = v;
            }
        };
        include(eval(&self.hi));
        if !c2.is_zero() {
            let vertex = -c1 / (c2 * BigInt::from(2));
            if self.contains(&vertex) {
                include(eval(&vertex));
            }
        }
        RationalInterval { lo, hi }
    }

    /// Integers inside the interval, as an inclusive range (possibly empty).
    pub fn integer_hull(&self) -> Option<(BigInt, BigInt)> {
        let lo = ceil(&self.lo);
        let hi = floor(&self.hi);
        (lo <= hi).then_some((lo, hi))
    }
}

pub(crate) fn floor(x: &BigRational) -> BigInt {
    x.numer().div_floor(x.denom())
}

pub(crate) fn ceil(x: &BigRational) -> BigInt {
    -((-x.numer()).div_floor(x.denom()))
}

impl fmt::Display for RationalInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

impl Add for &RationalInterval {
    type Output = RationalInterval;

    fn add(self, rhs: Self) -> RationalInterval {
        RationalInterval {
            lo: &self.lo + &rhs.lo,
            hi: &self.hi + &rhs.hi,
        }
    }
}

impl Sub for &RationalInterval {
    type Output = RationalInterval;

    fn sub(self, rhs: Self) -> RationalInterval {
        RationalInterval {
            lo: &self.lo - &rhs.hi,
            hi: &self.hi - &rhs.lo,
        }
    }
}

impl Neg for &RationalInterval {
    type Output = RationalInterval;

    fn neg(self) -> RationalInterval {
        RationalInterval {
            lo: -&self.hi,
            hi: -&self.lo,
        }
    }
}

impl Mul for &RationalInterval {
    type Output = RationalInterval;

    fn mul(self, rhs: Self) -> RationalInterval {
        let products = [
            &self.lo * &rhs.lo,
            &self.lo * &rhs.hi,
            &self.hi * &rhs.lo,
            &self.hi * &rhs.hi,
        ];
        let lo = products.iter().min().unwrap().clone();
        let hi = products.iter().max().unwrap().clone();
        RationalInterval { lo, hi }
    }
}
