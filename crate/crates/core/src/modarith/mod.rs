//! Exact arithmetic in `F_N` for 64-bit primes N.
//!
//! Everything here works on canonical representatives in `[0, N)`. The one
//! hot loop in the crate (the factorial pass) goes through [`Montgomery`];
//! everything else uses plain 128-bit products.

mod montgomery;
pub mod poly;
mod prime;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use montgomery::Montgomery;
pub use poly::{poly_roots_mod, poly_roots_scan, PolyRoots};
pub use prime::is_prime;

#[inline]
pub fn mul_mod(a: u64, b: u64, n: u64) -> u64 {
    (a as u128 * b as u128 % n as u128) as u64
}

/// `base^exp mod n`; overflow-free for every 64-bit modulus.
pub fn pow_mod(base: u64, mut exp: u64, n: u64) -> u64 {
    if n == 1 {
        return 0;
    }
    let mut b = base % n;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, b, n);
        }
        b = mul_mod(b, b, n);
        exp >>= 1;
    }
    acc
}

/// Inverse of a nonzero element modulo a prime.
pub fn inv_mod(a: u64, n: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(n));
    pow_mod(a, n - 2, n)
}

/// Reduces a signed integer into `[0, n)`.
pub fn reduce_signed(x: i64, n: u64) -> u64 {
    (x as i128).rem_euclid(n as i128) as u64
}

/// The pair (p, N) with N ≡ 1 mod p, both prime, p odd.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimePair {
    p: u64,
    n: u64,
    m: u64,
}

impl PrimePair {
    pub fn new(p: u64, n: u64) -> Result<Self> {
        if p < 3 || p.is_multiple_of(2) || !is_prime(p) {
            return Err(Error::BadP(p));
        }
        if !is_prime(n) {
            return Err(Error::NotPrime(n));
        }
        if n % p != 1 {
            return Err(Error::NotCongruent { p, n });
        }
        Ok(PrimePair {
            p,
            n,
            m: (n - 1) / p,
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// The prime modulus N.
    pub fn n(&self) -> u64 {
        self.n
    }

    /// M = (N-1)/p.
    pub fn m(&self) -> u64 {
        self.m
    }
}

/// An element of exact multiplicative order p in `F_N^×`.
///
/// Also caches its powers so that class labels are a table lookup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PthRootOfUnity {
    zeta: u64,
    powers: Vec<u64>,
}

impl PthRootOfUnity {
    /// Wraps a candidate, checking `zeta^p = 1` and `zeta != 1`.
    pub fn from_value(pair: &PrimePair, zeta: u64) -> Option<Self> {
        let n = pair.n();
        let zeta = zeta % n;
        if zeta == 1 || zeta == 0 || pow_mod(zeta, pair.p(), n) != 1 {
            return None;
        }
        let mut powers = Vec::with_capacity(pair.p() as usize);
        let mut x = 1u64;
        for _ in 0..pair.p() {
            powers.push(x);
            x = mul_mod(x, zeta, n);
        }
        Some(PthRootOfUnity { zeta, powers })
    }

    pub fn value(&self) -> u64 {
        self.zeta
    }

    /// `zeta^e` for `e` taken mod p.
    pub fn pow(&self, e: u64) -> u64 {
        self.powers[(e % self.powers.len() as u64) as usize]
    }

    fn log(&self, character: u64) -> Option<u32> {
        self.powers
            .iter()
            .position(|&z| z == character)
            .map(|e| e as u32)
    }
}

/// `g^((N-1)/p)` for the smallest `g >= 2` for which this is not 1.
pub fn element_of_order_p(pair: &PrimePair) -> PthRootOfUnity {
    let (n, m) = (pair.n(), pair.m());
    (2..n)
        .map(|g| pow_mod(g, m, n))
        .find(|&z| z != 1)
        .and_then(|z| PthRootOfUnity::from_value(pair, z))
        .expect("N ≡ 1 mod p guarantees an element of order p")
}

/// The pth-power residue character `x^((N-1)/p)`.
pub fn residue_character(x: u64, pair: &PrimePair) -> Result<u64> {
    let x = x % pair.n();
    if x == 0 {
        return Err(Error::ZeroInput);
    }
    Ok(pow_mod(x, pair.m(), pair.n()))
}

pub fn is_pth_power(x: u64, pair: &PrimePair) -> Result<bool> {
    residue_character(x, pair).map(|c| c == 1)
}

/// The exponent `e` in `[0, p)` with `residue_character(x) = zeta^e`.
pub fn class_label(x: u64, pair: &PrimePair, zeta: &PthRootOfUnity) -> Result<u32> {
    let c = residue_character(x, pair)?;
    Ok(zeta
        .log(c)
        .expect("residue character always lies in <zeta>"))
}

/// An element of `F_N^×` with its coordinates in `F_N^×/F_N^×p ≅ Z/p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidueClass {
    pub value: u64,
    pub character: u64,
    pub label: u32,
}

impl ResidueClass {
    pub fn new(value: u64, pair: &PrimePair, zeta: &PthRootOfUnity) -> Result<Self> {
        let value = value % pair.n();
        let character = residue_character(value, pair)?;
        let label = zeta.log(character).expect("character lies in <zeta>");
        Ok(ResidueClass {
            value,
            character,
            label,
        })
    }

    pub fn is_pth_power(&self) -> bool {
        self.label == 0
    }
}

/// Square root modulo an odd prime by Tonelli–Shanks.
///
/// The quadratic non-residue is the first one found scanning 2, 3, 4, …,
/// so the returned root is the same on every run.
pub fn sqrt_mod(a: u64, n: u64) -> Option<u64> {
    let a = a % n;
    if a == 0 || n == 2 {
        return Some(a);
    }
    if pow_mod(a, (n - 1) / 2, n) != 1 {
        return None;
    }
    if n % 4 == 3 {
        return Some(pow_mod(a, (n + 1) / 4, n));
    }
    let mut q = n - 1;
    let mut s = 0u32;
    while q & 1 == 0 {
        q >>= 1;
        s += 1;
    }
    let z = (2..n)
        .find(|&z| pow_mod(z, (n - 1) / 2, n) == n - 1)
        .expect("odd prime has a non-residue");
    let mut m = s;
    let mut c = pow_mod(z, q, n);
    let mut t = pow_mod(a, q, n);
    let mut r = pow_mod(a, q.div_ceil(2), n);
    while t != 1 {
        // least i with t^(2^i) = 1
        let mut i = 0;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mul_mod(t2, t2, n);
            i += 1;
        }
        let mut b = c;
        for _ in 0..(m - i - 1) {
            b = mul_mod(b, b, n);
        }
        m = i;
        c = mul_mod(b, b, n);
        t = mul_mod(t, c, n);
        r = mul_mod(r, b, n);
    }
    Some(r)
}
