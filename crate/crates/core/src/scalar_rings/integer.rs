//! Unbounded integers with an inline fast path.
//!
//! Almost every coefficient met in practice fits in an `i64`; those never touch
//! the heap. Values outside that range are promoted to a boxed [`BigInt`] and
//! demoted again as soon as they fit.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Integer {
    Small(i64),
    /// Invariant: never holds a value representable as `i64`.
    Big(Box<BigInt>),
}

impl Integer {
    pub const ZERO: Integer = Integer::Small(0);
    pub const ONE: Integer = Integer::Small(1);

    pub fn from_big(b: BigInt) -> Self {
        match b.to_i64() {
            Some(v) => Integer::Small(v),
            None => Integer::Big(Box::new(b)),
        }
    }

    pub fn to_big(&self) -> BigInt {
        match self {
            Integer::Small(v) => BigInt::from(*v),
            Integer::Big(b) => (**b).clone(),
        }
    }

    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Integer::Small(v) => Some(*v),
            Integer::Big(_) => None,
        }
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        matches!(self, Integer::Small(0))
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Integer::Small(1))
    }

    pub fn signum(&self) -> i32 {
        match self {
            Integer::Small(v) => v.signum() as i32,
            Integer::Big(b) => {
                if b.is_negative() {
                    -1
                } else {
                    1
                }
            }
        }
    }

    /// Residue in `[0, p)`.
    pub fn rem_euclid_u32(&self, p: u32) -> u32 {
        match self {
            Integer::Small(v) => v.rem_euclid(p as i64) as u32,
            Integer::Big(b) => {
                let r = (**b).clone() % BigInt::from(p);
                let r = if r.is_negative() { r + BigInt::from(p) } else { r };
                r.to_u32().expect("residue below p")
            }
        }
    }

    /// `self += a * b`, the inner step of every dot product.
    #[inline]
    pub fn add_mul_assign(&mut self, a: &Integer, b: &Integer) {
        if let (Integer::Small(x), Integer::Small(y), Integer::Small(z)) = (&*self, a, b) {
            if let Some(v) = y.checked_mul(*z).and_then(|p| x.checked_add(p)) {
                *self = Integer::Small(v);
                return;
            }
        }
        *self = Integer::from_big(self.to_big() + a.to_big() * b.to_big());
    }

    #[inline]
    pub fn add_assign_ref(&mut self, a: &Integer) {
        if let (Integer::Small(x), Integer::Small(y)) = (&*self, a) {
            if let Some(v) = x.checked_add(*y) {
                *self = Integer::Small(v);
                return;
            }
        }
        *self = Integer::from_big(self.to_big() + a.to_big());
    }
}

impl Default for Integer {
    fn default() -> Self {
        Integer::ZERO
    }
}

impl From<i64> for Integer {
    fn from(v: i64) -> Self {
        Integer::Small(v)
    }
}

impl From<i32> for Integer {
    fn from(v: i32) -> Self {
        Integer::Small(v as i64)
    }
}

impl From<BigInt> for Integer {
    fn from(b: BigInt) -> Self {
        Integer::from_big(b)
    }
}

impl Add for &Integer {
    type Output = Integer;
    #[inline]
    fn add(self, rhs: &Integer) -> Integer {
        if let (Integer::Small(a), Integer::Small(b)) = (self, rhs) {
            if let Some(v) = a.checked_add(*b) {
                return Integer::Small(v);
            }
        }
        Integer::from_big(self.to_big() + rhs.to_big())
    }
}

impl Sub for &Integer {
    type Output = Integer;
    #[inline]
    fn sub(self, rhs: &Integer) -> Integer {
        if let (Integer::Small(a), Integer::Small(b)) = (self, rhs) {
            if let Some(v) = a.checked_sub(*b) {
                return Integer::Small(v);
            }
        }
        Integer::from_big(self.to_big() - rhs.to_big())
    }
}

impl Mul for &Integer {
    type Output = Integer;
    #[inline]
    fn mul(self, rhs: &Integer) -> Integer {
        if let (Integer::Small(a), Integer::Small(b)) = (self, rhs) {
            if let Some(v) = a.checked_mul(*b) {
                return Integer::Small(v);
            }
        }
        Integer::from_big(self.to_big() * rhs.to_big())
    }
}

impl Neg for &Integer {
    type Output = Integer;
    #[inline]
    fn neg(self) -> Integer {
        match self {
            Integer::Small(a) => match a.checked_neg() {
                Some(v) => Integer::Small(v),
                None => Integer::from_big(-BigInt::from(*a)),
            },
            Integer::Big(b) => Integer::from_big(-(**b).clone()),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Integer {
            type Output = Integer;
            fn $m(self, rhs: Integer) -> Integer {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Integer {
    type Output = Integer;
    fn neg(self) -> Integer {
        -&self
    }
}

impl Zero for Integer {
    fn zero() -> Self {
        Integer::ZERO
    }
    fn is_zero(&self) -> bool {
        Integer::is_zero(self)
    }
}

impl One for Integer {
    fn one() -> Self {
        Integer::ONE
    }
}

impl PartialOrd for Integer {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Integer {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Integer::Small(a), Integer::Small(b)) => a.cmp(b),
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl fmt::Display for Integer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Integer::Small(v) => write!(f, "{v}"),
            Integer::Big(b) => write!(f, "{b}"),
        }
    }
}

impl fmt::Debug for Integer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Integer {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        let t = s.trim();
        if let Ok(v) = t.parse::<i64>() {
            return Ok(Integer::Small(v));
        }
        t.parse::<BigInt>()
            .map(Integer::from_big)
            .map_err(|_| Error::Parse(format!("not an integer: `{s}`")))
    }
}
