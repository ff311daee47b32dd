//! The factorial invariants `S_i`, Lecouturier's `M_i`, the products `A_m`,
//! and Merel's number `C`, all as classes in `F_N^×/F_N^×p`.
//!
//! Every production invariant is read off one ascending factorial pass
//! ([`FactorialCheckpoints`]) that records `(Mk)!` for `k = 1..p-1`. The
//! direct products (`m_direct`, `a_invariant`, `merel_c`) are independent
//! routes kept for cross-checking; they never touch the checkpoints.
//!
//! Exponents are reduced mod `N - 1` throughout. Raw values of two routes to
//! the same class may differ by a pth power, so comparisons go through labels.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::modarith::{
    inv_mod, mul_mod, pow_mod, Montgomery, PrimePair, PthRootOfUnity, ResidueClass,
};

/// Largest N accepted by the direct double-product oracle for `M_i`.
pub const M_DIRECT_BOUND: u64 = 5000;

/// Independent multiplier chains kept in flight during the factorial pass.
const TARGET_LANES: u64 = 8;

/// `(Mk)! mod N` for `k = 1..p-1`, from a single ascending pass over `[1, (N-1)/2]`.
#[derive(Clone, Debug)]
pub struct FactorialCheckpoints {
    pair: PrimePair,
    values: Vec<u64>,
}

impl FactorialCheckpoints {
    pub fn compute(pair: &PrimePair) -> Self {
        let (p, n, m) = (pair.p(), pair.n(), pair.m());
        let mont = Montgomery::new(n);
        // Only (Mk)! for k <= (p-1)/2 is multiplied out; Wilson's pairing
        // a!(N-1-a)! = (-1)^(a+1) supplies the upper half.
        let segments = (p - 1) / 2;
        // Split every segment (jM, (j+1)M] into q equal lanes plus a short tail.
        let q = TARGET_LANES.div_ceil(segments).min(m).max(1);
        let sub = m / q;
        let starts: Vec<u64> = (0..segments)
            .flat_map(|j| (0..q).map(move |t| j * m + 1 + t * sub))
            .collect();
        let lanes = mont.consecutive_products(&starts, sub);

        let mut values = vec![0u64; (p - 1) as usize];
        let mut acc = mont.one();
        for j in 0..segments {
            for t in 0..q {
                acc = mont.mul(acc, lanes[(j * q + t) as usize]);
            }
            let tail_start = j * m + 1 + q * sub;
            let tail_end = (j + 1) * m;
            if tail_start <= tail_end {
                let mut x_tail = mont.to_mont(tail_start);
                for _ in tail_start..=tail_end {
                    acc = mont.mul(acc, x_tail);
                    x_tail = mont.add(x_tail, mont.one());
                }
            }
            values[j as usize] = mont.from_mont(acc);
        }
        for k in segments + 1..p {
            let a = m * (p - k);
            let inv = inv_mod(values[(p - k - 1) as usize], n);
            values[(k - 1) as usize] = if a % 2 == 1 { inv } else { n - inv };
        }
        FactorialCheckpoints {
            pair: *pair,
            values,
        }
    }

    pub fn pair(&self) -> &PrimePair {
        &self.pair
    }

    /// `(Mk)! mod N` for `1 <= k <= p-1`.
    pub fn get(&self, k: u64) -> u64 {
        self.values[(k - 1) as usize]
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    /// `Γ_N(k/p)` for `1 <= k <= p-1`.
    ///
    /// `k/p ≡ M(p-k) + 1 (mod N)`, so `Γ_N(k/p) = (-1)^(M(p-k)+1) · (M(p-k))!`.
    pub fn gamma_at_fraction(&self, k: u64) -> u64 {
        let (p, n, m) = (self.pair.p(), self.pair.n(), self.pair.m());
        let x = m * (p - k) + 1;
        let f = self.get(p - k);
        if x % 2 == 1 {
            (n - f) % n
        } else {
            f
        }
    }
}

pub fn factorial_checkpoints(pair: &PrimePair) -> FactorialCheckpoints {
    FactorialCheckpoints::compute(pair)
}

/// `k^i mod (N-1)`, the reduced exponent used by every product here.
fn reduced_power(k: u64, i: u64, n: u64) -> u64 {
    pow_mod(k, i, n - 1)
}

/// Raw value of `S_i = ∏_{k=1}^{p-1} ((Mk)!)^(k^i)`.
pub fn s_value(i: u64, cp: &FactorialCheckpoints) -> u64 {
    let (p, n) = (cp.pair.p(), cp.pair.n());
    (1..p).fold(1u64, |acc, k| {
        mul_mod(acc, pow_mod(cp.get(k), reduced_power(k, i, n), n), n)
    })
}

/// `S_i` for `1 <= i <= p-2` as a residue class.
pub fn s_invariant(
    i: u64,
    cp: &FactorialCheckpoints,
    zeta: &PthRootOfUnity,
) -> Result<ResidueClass> {
    let p = cp.pair.p();
    if i < 1 || i > p - 2 {
        return Err(Error::IndexOutOfRange {
            index: i as i64,
            lo: 1,
            hi: p as i64 - 2,
        });
    }
    ResidueClass::new(s_value(i, cp), &cp.pair, zeta)
}

/// All of `S_1 .. S_{p-2}` from one checkpoint pass.
pub fn s_invariants(cp: &FactorialCheckpoints, zeta: &PthRootOfUnity) -> Vec<ResidueClass> {
    (1..=cp.pair.p() - 2)
        .map(|i| s_invariant(i, cp, zeta).expect("index in range"))
        .collect()
}

/// `M_i = ∏_{k=1}^{N-1} ∏_{a=1}^{k-1} k^(a^i)` evaluated literally.
///
/// The inner exponent sum is carried along mod `N - 1`. Only an oracle: it
/// refuses `N > 5000`.
pub fn m_direct(i: u64, pair: &PrimePair, zeta: &PthRootOfUnity) -> Result<ResidueClass> {
    let n = pair.n();
    if n > M_DIRECT_BOUND {
        return Err(Error::OracleBoundExceeded {
            n,
            bound: M_DIRECT_BOUND,
        });
    }
    let order = n - 1;
    let mut exp = 0u64; // Σ_{a<k} a^i mod (N-1)
    let mut acc = 1u64;
    for k in 1..n {
        acc = mul_mod(acc, pow_mod(k, exp, n), n);
        exp = (exp + pow_mod(k, i, order)) % order;
    }
    ResidueClass::new(acc, pair, zeta)
}

/// `Γ_N(x) = (-1)^x (x-1)!` for an integer `0 < x < N`.
pub fn gamma_n(x: u64, n: u64) -> Result<u64> {
    if x == 0 || x >= n {
        return Err(Error::OutOfDomain(x as i64));
    }
    let f = (1..x).fold(1u64, |acc, j| mul_mod(acc, j, n));
    Ok(if x % 2 == 1 { (n - f) % n } else { f })
}

/// `M_i` through `∏_{k=1}^{p-1} Γ_N(k/p)^(k^i)`; O(p log N) given checkpoints.
pub fn m_gamma(i: u64, cp: &FactorialCheckpoints, zeta: &PthRootOfUnity) -> Result<ResidueClass> {
    let (p, n) = (cp.pair.p(), cp.pair.n());
    let v = (1..p).fold(1u64, |acc, k| {
        mul_mod(
            acc,
            pow_mod(cp.gamma_at_fraction(k), reduced_power(k, i, n), n),
            n,
        )
    });
    ResidueClass::new(v, &cp.pair, zeta)
}

/// `A_m = ∏_{k=1}^{N-1} k^(k^m)` for `0 < m < p-1`.
pub fn a_invariant(m: u64, pair: &PrimePair, zeta: &PthRootOfUnity) -> Result<ResidueClass> {
    let (p, n) = (pair.p(), pair.n());
    if m == 0 || m >= p - 1 {
        return Err(Error::OutOfDomain(m as i64));
    }
    let mont = Montgomery::new(n);
    let mut acc = mont.one();
    let mut k_mont = mont.one();
    for k in 1..n {
        acc = mont.mul(acc, mont.pow(k_mont, reduced_power(k, m, n)));
        k_mont = mont.add(k_mont, mont.one());
    }
    ResidueClass::new(mont.from_mont(acc), pair, zeta)
}

/// Merel's number `C = ∏_{k=1}^{(N-1)/2} k^k`.
pub fn merel_c(pair: &PrimePair, zeta: &PthRootOfUnity) -> Result<ResidueClass> {
    let n = pair.n();
    let mont = Montgomery::new(n);
    let mut acc = mont.one();
    let mut k_mont = mont.one();
    for k in 1..=(n - 1) / 2 {
        acc = mont.mul(acc, mont.pow(k_mont, k));
        k_mont = mont.add(k_mont, mont.one());
    }
    ResidueClass::new(mont.from_mont(acc), pair, zeta)
}

/// `(a! (N-1-a)!)^2 ≡ 1` for every `a` in `[1, N-2]`.
///
/// Builds the full factorial table, so it is meant for verification sweeps.
pub fn wilson_pairing_holds(n: u64) -> bool {
    let mut fact = Vec::with_capacity(n as usize);
    let mut acc = 1u64;
    fact.push(1);
    for j in 1..n {
        acc = mul_mod(acc, j, n);
        fact.push(acc);
    }
    (1..n - 1).all(|a| {
        let t = mul_mod(fact[a as usize], fact[(n - 1 - a) as usize], n);
        mul_mod(t, t, n) == 1
    })
}

/// Every invariant for one (p, N).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct InvariantSet {
    pub pair: PrimePair,
    pub zeta: u64,
    /// `S_1 .. S_{p-2}`; entry `i-1` holds `S_i`.
    pub s: Vec<ResidueClass>,
    /// `M_i` for odd `i` in `[1, p-4]` via the Gamma route.
    pub m_gamma: Vec<(u64, ResidueClass)>,
    /// `A_2`, defined when `p >= 5`.
    pub a2: Option<ResidueClass>,
    pub c: ResidueClass,
    /// Direct double products, present when `N <= 5000` and requested.
    pub m_direct: Option<Vec<(u64, ResidueClass)>>,
}

impl InvariantSet {
    pub fn compute(pair: &PrimePair, with_direct: bool) -> Result<Self> {
        let zeta = crate::modarith::element_of_order_p(pair);
        let cp = FactorialCheckpoints::compute(pair);
        let p = pair.p();
        let odd: Vec<u64> = (1..=p.saturating_sub(4)).step_by(2).collect();
        let s = s_invariants(&cp, &zeta);
        let m_gamma = odd
            .iter()
            .map(|&i| Ok((i, m_gamma(i, &cp, &zeta)?)))
            .collect::<Result<Vec<_>>>()?;
        let a2 = if p >= 5 {
            Some(a_invariant(2, pair, &zeta)?)
        } else {
            None
        };
        let c = merel_c(pair, &zeta)?;
        let m_direct = if with_direct && pair.n() <= M_DIRECT_BOUND {
            Some(
                odd.iter()
                    .map(|&i| Ok((i, m_direct(i, pair, &zeta)?)))
                    .collect::<Result<Vec<_>>>()?,
            )
        } else {
            None
        };
        Ok(InvariantSet {
            pair: *pair,
            zeta: zeta.value(),
            s,
            m_gamma,
            a2,
            c,
            m_direct,
        })
    }

    pub fn s(&self, i: u64) -> &ResidueClass {
        &self.s[(i - 1) as usize]
    }
}
