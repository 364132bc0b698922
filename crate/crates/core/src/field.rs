//! Arithmetic in the prime field GF(p).
//!
//! Field elements are plain `u32` residues in `[0, p)`; the [`PrimeField`]
//! value carries the modulus and performs every operation. Keeping the
//! modulus out of the element keeps dense coordinate vectors compact.

use crate::error::{Error, Result};

/// A field element, always reduced into `[0, p)`.
pub type Scalar = u32;

/// Largest supported characteristic. Products of three residues stay well
/// inside `u64`, which the tensor kernels rely on when accumulating.
pub const MAX_CHARACTERISTIC: u32 = 1 << 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::input(format!("characteristic must be prime, got {p}")));
        }
        if p >= MAX_CHARACTERISTIC {
            return Err(Error::input(format!(
                "characteristic {p} exceeds the supported bound {MAX_CHARACTERISTIC}"
            )));
        }
        Ok(Self { p })
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn reduce(&self, v: u64) -> Scalar {
        (v % self.p as u64) as Scalar
    }

    /// Image of a signed integer in GF(p).
    pub fn from_i64(&self, v: i64) -> Scalar {
        v.rem_euclid(self.p as i64) as Scalar
    }

    #[inline]
    pub fn add(&self, a: Scalar, b: Scalar) -> Scalar {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: Scalar, b: Scalar) -> Scalar {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: Scalar) -> Scalar {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: Scalar, b: Scalar) -> Scalar {
        ((a as u64 * b as u64) % self.p as u64) as Scalar
    }

    pub fn pow(&self, a: Scalar, mut e: u64) -> Scalar {
        let mut base = a;
        let mut acc = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self, a: Scalar) -> Option<Scalar> {
        if a == 0 {
            return None;
        }
        // extended Euclid on (a, p)
        let (mut r0, mut r1) = (self.p as i64, a as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        Some(self.from_i64(t0))
    }

    pub fn div(&self, a: Scalar, b: Scalar) -> Option<Scalar> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    /// `n!` reduced mod p (zero once `n >= p`).
    pub fn factorial(&self, n: u64) -> Scalar {
        if n >= self.p as u64 {
            return 0;
        }
        (1..=n).fold(1 % self.p, |acc, k| self.mul(acc, k as Scalar))
    }

    /// Binomial coefficient `C(n, k)` mod p via Lucas' theorem.
    pub fn binomial(&self, mut n: u64, mut k: u64) -> Scalar {
        if k > n {
            return 0;
        }
        let p = self.p as u64;
        let mut acc = 1 % self.p;
        while k > 0 || n > 0 {
            let (nd, kd) = (n % p, k % p);
            if kd > nd {
                return 0;
            }
            acc = self.mul(acc, self.small_binomial(nd, kd));
            n /= p;
            k /= p;
        }
        acc
    }

    // C(n, k) for 0 <= k <= n < p, where all factorials are units.
    fn small_binomial(&self, n: u64, k: u64) -> Scalar {
        let num = self.factorial(n);
        let den = self.mul(self.factorial(k), self.factorial(n - k));
        self.div(num, den).expect("factorials below p are invertible")
    }

    /// Base-p digits of `1/2` viewed as a p-adic integer, least significant
    /// first, truncated to `len` digits. Requires odd p.
    pub fn half_padic_digits(&self, len: usize) -> Vec<u64> {
        debug_assert!(self.p % 2 == 1);
        let p = self.p as u64;
        (0..len)
            .map(|k| if k == 0 { p.div_ceil(2) } else { (p - 1) / 2 })
            .collect()
    }

    /// `binom(1/2, i)` mod p, computed as the integer binomial
    /// `C((p^M + 1)/2, i)` with `M = i + 1`. The integer `(p^M+1)/2` agrees
    /// with `1/2` to p-adic precision `M`, which exceeds `v_p(i!) + 1`.
    pub fn binomial_half(&self, i: u64) -> Result<Scalar> {
        if self.p == 2 {
            return Err(Error::unsupported("binom(1/2, i) is not p-integral at p = 2"));
        }
        let precision = (i + 1) as usize;
        let digits = self.half_padic_digits(precision);
        // Lucas on the digit expansion of c = (p^M + 1)/2.
        let p = self.p as u64;
        let mut k = i;
        let mut acc = 1 % self.p;
        for &cd in &digits {
            let kd = k % p;
            if kd > cd {
                return Ok(0);
            }
            acc = self.mul(acc, self.small_binomial(cd, kd));
            k /= p;
        }
        debug_assert_eq!(k, 0, "i < p^(i+1) always");
        Ok(acc)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}
