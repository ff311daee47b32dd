//! Montgomery multiplication for a fixed odd 64-bit modulus.
//!
//! Elements are held as `a·R mod n` with `R = 2^64`. The reduction subtracts
//! the high word of `m·n` instead of adding it, so it is exact for every odd
//! `n < 2^64` without a 129-bit intermediate.

#[derive(Clone, Copy, Debug)]
pub struct Montgomery {
    n: u64,
    /// n^{-1} mod 2^64
    n_inv: u64,
    /// R^2 mod n
    r2: u64,
    /// R mod n, i.e. 1 in Montgomery form
    one: u64,
}

impl Montgomery {
    /// Panics if `n` is even or `n < 3`.
    pub fn new(n: u64) -> Self {
        assert!(
            n & 1 == 1 && n >= 3,
            "Montgomery modulus must be odd and >= 3"
        );
        // Newton iteration: each step doubles the number of correct low bits.
        let mut inv: u64 = n;
        for _ in 0..5 {
            inv = inv.wrapping_mul(2u64.wrapping_sub(n.wrapping_mul(inv)));
        }
        debug_assert_eq!(n.wrapping_mul(inv), 1);
        let one = ((1u128 << 64) % n as u128) as u64;
        let r2 = ((one as u128 * one as u128) % n as u128) as u64;
        Montgomery {
            n,
            n_inv: inv,
            r2,
            one,
        }
    }

    #[inline]
    pub fn modulus(&self) -> u64 {
        self.n
    }

    #[inline]
    pub fn one(&self) -> u64 {
        self.one
    }

    #[inline(always)]
    fn redc(&self, t: u128) -> u64 {
        let lo = t as u64;
        let hi = (t >> 64) as u64;
        let m = lo.wrapping_mul(self.n_inv);
        let mn_hi = ((m as u128 * self.n as u128) >> 64) as u64;
        let (r, borrow) = hi.overflowing_sub(mn_hi);
        if borrow {
            r.wrapping_add(self.n)
        } else {
            r
        }
    }

    #[inline(always)]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        self.redc(a as u128 * b as u128)
    }

    #[inline]
    pub fn to_mont(&self, a: u64) -> u64 {
        self.mul(a % self.n, self.r2)
    }

    #[inline]
    pub fn from_mont(&self, a: u64) -> u64 {
        self.redc(a as u128)
    }

    /// Modular addition of two reduced residues (either representation).
    #[inline(always)]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let (s, carry) = a.overflowing_add(b);
        if carry || s >= self.n {
            s.wrapping_sub(self.n)
        } else {
            s
        }
    }

    /// `base^exp` with `base` and the result in Montgomery form.
    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = self.one;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Products of `lanes` disjoint runs of consecutive integers.
    ///
    /// Run `j` covers `starts[j] .. starts[j] + len` (as plain integers, all
    /// nonzero mod n). The runs advance in lockstep so the multiplier
    /// pipelines overlap; the returned products are in Montgomery form.
    ///
    /// When every product of `k` consecutive run members fits in a word,
    /// those products are stepped with `k` additions over a forward
    /// difference table and folded in with one reduction each.
    pub fn consecutive_products(&self, starts: &[u64], len: u64) -> Vec<u64> {
        let hi = starts.iter().map(|&s| s + len).max().unwrap_or(0) as u128;
        let mut k = 1;
        while k < MAX_PACK && hi.pow(k as u32 + 1) < 1u128 << 64 {
            k += 1;
        }
        if k == 1 || len < k as u64 {
            return self.consecutive_products_serial(starts, len);
        }
        let steps = len / k as u64;
        let rem = len % k as u64;

        // diffs[j*(k+1) + i]: i-th forward difference of x(x+1)...(x+k-1)
        // along the lattice start_j, start_j + k, ... (mod 2^64; every value
        // actually folded in is below 2^64, so it is exact).
        let w = k + 1;
        let mut diffs = vec![0u64; starts.len() * w];
        for (j, &s) in starts.iter().enumerate() {
            let row = &mut diffs[j * w..(j + 1) * w];
            for (t, slot) in row.iter_mut().enumerate() {
                let x = s.wrapping_add((t * k) as u64);
                *slot = (0..k as u64).fold(1u64, |a, d| a.wrapping_mul(x.wrapping_add(d)));
            }
            for order in 1..w {
                for t in (order..w).rev() {
                    row[t] = row[t].wrapping_sub(row[t - 1]);
                }
            }
        }

        let mut acc = vec![self.one; starts.len()];
        for _ in 0..steps {
            for (a, row) in acc.iter_mut().zip(diffs.chunks_exact_mut(w)) {
                *a = self.redc(*a as u128 * row[0] as u128);
                for i in 0..k {
                    row[i] = row[i].wrapping_add(row[i + 1]);
                }
            }
        }
        // Each plain factor dropped one power of R.
        let fix = self.from_mont(self.pow(self.to_mont(self.one), steps + 1));
        let tails: Vec<u64> = starts.iter().map(|&s| s + steps * k as u64).collect();
        let tail = self.consecutive_products_serial(&tails, rem);
        acc.iter()
            .zip(&tail)
            .map(|(&a, &t)| self.mul(self.redc(a as u128 * fix as u128), t))
            .collect()
    }

    fn consecutive_products_serial(&self, starts: &[u64], len: u64) -> Vec<u64> {
        let mut acc = vec![self.one; starts.len()];
        let mut cur: Vec<u64> = starts.iter().map(|&s| self.to_mont(s)).collect();
        let one = self.one;
        for _ in 0..len {
            for (a, x) in acc.iter_mut().zip(cur.iter_mut()) {
                *a = self.mul(*a, *x);
                *x = self.add(*x, one);
            }
        }
        acc
    }
}

/// Largest number of consecutive integers packed into one word.
const MAX_PACK: usize = 4;

#[cfg(test)]
mod tests {
    use super::*;

    fn plain_mul(a: u64, b: u64, n: u64) -> u64 {
        (a as u128 * b as u128 % n as u128) as u64
    }

    #[test]
    fn round_trip_and_mul_small() {
        let m = Montgomery::new(11);
        for a in 0..11 {
            assert_eq!(m.from_mont(m.to_mont(a)), a);
            for b in 0..11 {
                let c = m.from_mont(m.mul(m.to_mont(a), m.to_mont(b)));
                assert_eq!(c, a * b % 11);
            }
        }
    }

    #[test]
    fn mul_near_u64_max() {
        // Largest 64-bit prime; exercises the borrow branch of redc.
        let n = 18_446_744_073_709_551_557u64;
        let m = Montgomery::new(n);
        let xs = [1, 2, n - 1, n - 2, n / 2, 0xdead_beef_cafe_f00d % n];
        for &a in &xs {
            for &b in &xs {
                let c = m.from_mont(m.mul(m.to_mont(a), m.to_mont(b)));
                assert_eq!(c, plain_mul(a, b, n));
            }
        }
    }

    #[test]
    fn consecutive_products_match_serial() {
        let n = 1_000_003;
        let m = Montgomery::new(n);
        let starts = [1, 101, 5000, 999_000];
        let got = m.consecutive_products(&starts, 37);
        for (j, &s) in starts.iter().enumerate() {
            let mut want = 1u64;
            for x in s..s + 37 {
                want = plain_mul(want, x % n, n);
            }
            assert_eq!(m.from_mont(got[j]), want);
        }
    }

    #[test]
    fn packed_products_match_serial() {
        // hi below 2^16, 2^21, 2^32 and above: packing widths 4, 3, 2, 1.
        for (n, base) in [
            (1_000_003u64, 60_000u64),
            (1_000_003, 1_000_000),
            (4_294_967_291, 4_000_000_000),
            (18_446_744_073_709_551_557, 1 << 40),
        ] {
            let m = Montgomery::new(n);
            let starts = [base, base + 1000, base + 2001];
            for len in [0, 1, 3, 4, 5, 11, 500] {
                let got = m.consecutive_products(&starts, len);
                for (j, &s) in starts.iter().enumerate() {
                    let mut want = 1u64;
                    for x in s..s + len {
                        want = plain_mul(want, x % n, n);
                    }
                    assert_eq!(m.from_mont(got[j]), want, "n={n} s={s} len={len}");
                }
            }
        }
    }
}
