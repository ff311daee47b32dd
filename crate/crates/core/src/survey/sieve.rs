//! Segmented sieve over the progression `N = 1 + p·t`.

use crate::error::{Error, Result};
use crate::modarith::{inv_mod, is_prime};

const SEGMENT: u64 = 1 << 18;
/// Sieving primes stop here; survivors beyond `SMALL_LIMIT²` are confirmed by Miller–Rabin.
const SMALL_LIMIT: u64 = 1 << 22;

fn small_primes(limit: u64) -> Vec<u64> {
    let limit = limit as usize;
    let mut composite = vec![false; limit + 1];
    let mut out = Vec::new();
    for q in 2..=limit {
        if !composite[q] {
            out.push(q as u64);
            for m in (q * q..=limit).step_by(q) {
                composite[m] = true;
            }
        }
    }
    out
}

/// Yields the primes `N ≡ 1 mod p` in `[lo, hi]` one segment at a time.
pub struct ProgressionSieve {
    p: u64,
    /// `(q, t mod q with q | 1 + p·t)`
    residues: Vec<(u64, u64)>,
    confirm: bool,
    t_next: u64,
    t_end: u64,
}

impl ProgressionSieve {
    pub fn new(p: u64, lo: u64, hi: u64) -> Result<Self> {
        if p < 3 || !is_prime(p) {
            return Err(Error::BadP(p));
        }
        if lo < 2 || lo > hi || hi >= 1 << 63 {
            return Err(Error::BadRange { lo, hi });
        }
        let root = hi.isqrt();
        let residues = small_primes(root.min(SMALL_LIMIT))
            .into_iter()
            .filter(|&q| q != p)
            .map(|q| (q, (q - inv_mod(p % q, q)) % q))
            .collect();
        Ok(ProgressionSieve {
            p,
            residues,
            confirm: root > SMALL_LIMIT,
            t_next: (lo - 1).div_ceil(p).max(1),
            t_end: (hi - 1) / p + 1,
        })
    }

    pub fn next_segment(&mut self) -> Option<Vec<u64>> {
        if self.t_next >= self.t_end {
            return None;
        }
        let t0 = self.t_next;
        let len = SEGMENT.min(self.t_end - t0);
        self.t_next += len;
        let mut composite = vec![false; len as usize];
        for &(q, r) in &self.residues {
            let mut t = t0 + (r + q - t0 % q) % q;
            // 1 + p·t == q is prime, not a multiple of q
            if (q - 1) % self.p == 0 && t == (q - 1) / self.p {
                t += q;
            }
            while t < t0 + len {
                composite[(t - t0) as usize] = true;
                t += q;
            }
        }
        Some(
            composite
                .iter()
                .enumerate()
                .filter(|(_, &c)| !c)
                .map(|(k, _)| 1 + self.p * (t0 + k as u64))
                .filter(|&n| !self.confirm || is_prime(n))
                .collect(),
        )
    }
}

impl Iterator for ProgressionSieve {
    type Item = Vec<u64>;

    fn next(&mut self) -> Option<Vec<u64>> {
        self.next_segment()
    }
}

/// Ascending primes `N` in `[lo, hi]` with `N ≡ 1 mod p`.
pub fn sieve(p: u64, lo: u64, hi: u64) -> Result<Vec<u64>> {
    Ok(ProgressionSieve::new(p, lo, hi)?.flatten().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_ranges() {
        assert_eq!(sieve(5, 2, 100).unwrap(), vec![11, 31, 41, 61, 71]);
        assert_eq!(sieve(7, 2, 100).unwrap(), vec![29, 43, 71]);
        assert_eq!(sieve(5, 11, 11).unwrap(), vec![11]);
        assert_eq!(sieve(5, 12, 30).unwrap(), Vec::<u64>::new());
        assert!(matches!(sieve(5, 50, 40), Err(Error::BadRange { .. })));
        assert!(matches!(sieve(5, 1, 40), Err(Error::BadRange { .. })));
        assert!(matches!(sieve(9, 2, 40), Err(Error::BadP(9))));
    }

    #[test]
    fn matches_trial_division() {
        for p in [3, 5, 7, 11, 13, 101] {
            let want: Vec<u64> = (2..300_000)
                .filter(|&n| n % p == 1 && is_prime(n))
                .collect();
            assert_eq!(sieve(p, 2, 299_999).unwrap(), want, "p = {p}");
        }
    }

    #[test]
    fn window_far_out() {
        let lo = 1_000_000_000_000;
        let want: Vec<u64> = (lo..lo + 200_000)
            .filter(|&n| n % 7 == 1 && is_prime(n))
            .collect();
        assert_eq!(sieve(7, lo, lo + 199_999).unwrap(), want);
    }

    #[test]
    fn small_prime_in_progression_survives() {
        // 11 ≡ 1 mod 5 and 11 < sqrt(hi)
        assert!(sieve(5, 2, 10_000).unwrap().contains(&11));
        assert!(sieve(5, 2, 10_000).unwrap().contains(&31));
    }

    #[test]
    fn paper_count_p5_small() {
        // primes ≡ 1 mod 5 below 10^6: π(10^6; 5, 1)
        assert_eq!(sieve(5, 2, 1_000_000).unwrap().len(), 19_617);
    }
}
