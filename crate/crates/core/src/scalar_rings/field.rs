use super::{Integer, Ring, RingSpec};
use crate::error::{Error, Result};

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    if p.is_multiple_of(2) {
        return p == 2;
    }
    let mut d = 3u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// The prime field `F_p` for a prime `p < 2^31`. Elements are reduced `u32`s.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        if p >= 1 << 31 || !is_prime(p) {
            return Err(Error::Unsupported(format!("{p} is not a prime below 2^31")));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn reduce(&self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }

    pub fn pow(&self, base: u32, mut e: u64) -> u32 {
        let p = self.p as u64;
        let mut acc = 1u64 % p;
        let mut b = base as u64 % p;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        acc as u32
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: u32) -> Option<u32> {
        if a.is_multiple_of(self.p) {
            None
        } else {
            Some(self.pow(a, self.p as u64 - 2))
        }
    }
}

impl Ring for PrimeField {
    type Elem = u32;

    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1 % self.p
    }
    fn from_integer(&self, v: &Integer) -> u32 {
        v.rem_euclid_u32(self.p)
    }
    fn from_i64(&self, v: i64) -> u32 {
        self.reduce(v)
    }
    #[inline]
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    #[inline]
    fn add(&self, a: &u32, b: &u32) -> u32 {
        let s = *a as u64 + *b as u64;
        (if s >= self.p as u64 { s - self.p as u64 } else { s }) as u32
    }
    #[inline]
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        if a >= b {
            a - b
        } else {
            (*a as u64 + self.p as u64 - *b as u64) as u32
        }
    }
    #[inline]
    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    #[inline]
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 * *b as u64) % self.p as u64) as u32
    }

    fn dot<'a, I>(&self, base: u32, pairs: I) -> u32
    where
        I: Iterator<Item = (&'a u32, &'a u32)>,
    {
        let p = self.p as u64;
        if p <= 1 << 16 {
            // each product is below 2^32, so 2^31 of them fit in a u64
            let mut acc = base as u64;
            for (a, b) in pairs {
                acc += *a as u64 * *b as u64;
            }
            (acc % p) as u32
        } else {
            let mut acc = base as u64;
            for (a, b) in pairs {
                acc = (acc + *a as u64 * *b as u64) % p;
            }
            acc as u32
        }
    }

    fn spec(&self) -> Option<RingSpec> {
        Some(RingSpec::Fp { p: self.p })
    }

    fn format(&self, a: &u32) -> String {
        a.to_string()
    }

    fn parse(&self, s: &str) -> Result<u32> {
        let v: Integer = s.parse()?;
        Ok(self.from_integer(&v))
    }
}
