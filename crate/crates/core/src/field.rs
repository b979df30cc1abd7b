//! Arithmetic in the prime field `F_p`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default characteristic; large enough that random choices behave generically.
pub const DEFAULT_PRIME: u32 = 32003;

/// A prime field `F_p`. Elements are plain `u32` representatives in `[0, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldConfig {
    p: u32,
}

impl Default for FieldConfig {
    fn default() -> Self {
        FieldConfig { p: DEFAULT_PRIME }
    }
}

impl FieldConfig {
    /// Checks primality by trial division; `p` must fit in 31 bits.
    pub fn new(p: u32) -> Result<Self> {
        if p < 2 || p >= 1 << 31 {
            return Err(Error::InvalidInput(format!("prime {p} out of range [2, 2^31)")));
        }
        let mut d = 2u32;
        while (d as u64) * (d as u64) <= p as u64 {
            if p % d == 0 {
                return Err(Error::InvalidInput(format!("{p} is not prime")));
            }
            d += 1;
        }
        Ok(FieldConfig { p })
    }

    #[inline]
    pub fn prime(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn pow(&self, mut base: u32, mut exp: u64) -> u32 {
        let mut acc = 1u32;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self, a: u32) -> u32 {
        assert!(a != 0, "inverse of zero in F_{}", self.p);
        // extended Euclid on i64
        let (mut r0, mut r1) = (self.p as i64, a as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        t0.rem_euclid(self.p as i64) as u32
    }

    /// Reduces an arbitrary signed integer.
    pub fn from_i64(&self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }

    /// Symmetric representative in `(-p/2, p/2]`, used for printing.
    pub fn to_signed(&self, a: u32) -> i64 {
        if a > self.p / 2 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }
}
