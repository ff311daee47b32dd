//! Regular pairs `(p, e)` via Bernoulli numbers mod p.
//!
//! For odd `e`, the `χ^e`-eigenspace of the class group of `Q(ζ_p)` is
//! trivial iff `p ∤ B_{p-e}` (Herbrand–Ribet). The generalized Bernoulli
//! number `B_{1,ω^j}`, computed from Teichmüller lifts mod `p^2`, gives a
//! second, independent route to the same bit.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::modarith::{inv_mod, is_prime};

/// Largest p for which a Bernoulli table is built.
pub const BERNOULLI_TABLE_BOUND: u64 = 2000;

/// Exact `B_0, B_1, …, B_max` (with `B_1 = -1/2`).
///
/// Even-index values come from the tangent numbers `T_k`:
/// `B_2k = (-1)^(k-1) · 2k · T_k / (4^k (4^k - 1))`, which needs only integer
/// arithmetic until the final reduction.
pub fn bernoulli_numbers(max: usize) -> Vec<BigRational> {
    let half = max / 2;
    let mut t: Vec<BigInt> = Vec::with_capacity(half + 1);
    t.push(BigInt::zero());
    let mut fact = BigInt::one();
    for k in 1..=half {
        t.push(fact.clone());
        fact *= BigInt::from(k);
    }
    for k in 2..=half {
        for j in k..=half {
            let a = BigInt::from(j - k) * &t[j - 1];
            let b = BigInt::from(j - k + 2) * &t[j];
            t[j] = a + b;
        }
    }
    let mut out = vec![BigRational::zero(); max + 1];
    out[0] = BigRational::one();
    if max >= 1 {
        out[1] = BigRational::new(BigInt::from(-1), BigInt::from(2));
    }
    for k in 1..=half {
        let four_k = BigInt::one() << (2 * k);
        let den = &four_k * (&four_k - BigInt::one());
        let mut num = BigInt::from(2 * k) * &t[k];
        if k % 2 == 0 {
            num = -num;
        }
        out[2 * k] = BigRational::new(num, den);
    }
    out
}

fn residue_mod(x: &BigRational, p: u64) -> u64 {
    let pb = BigInt::from(p);
    let num = x.numer().mod_floor(&pb).to_u64().unwrap();
    let den = x.denom().mod_floor(&pb).to_u64().unwrap();
    assert!(den != 0, "denominator divisible by p");
    (num as u128 * inv_mod(den, p) as u128 % p as u128) as u64
}

/// `B_k mod p` for even `k` in `[2, p-3]`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BernoulliTable {
    p: u64,
    residues: BTreeMap<u64, u64>,
}

impl BernoulliTable {
    pub fn new(p: u64) -> Result<Self> {
        if p < 3 || p.is_multiple_of(2) || !is_prime(p) {
            return Err(Error::BadP(p));
        }
        if p > BERNOULLI_TABLE_BOUND {
            return Err(Error::OutOfRange {
                p,
                bound: BERNOULLI_TABLE_BOUND,
            });
        }
        let max = (p as usize).saturating_sub(3);
        let b = bernoulli_numbers(max);
        let residues = (2..=max as u64)
            .step_by(2)
            .map(|k| (k, residue_mod(&b[k as usize], p)))
            .collect();
        Ok(BernoulliTable { p, residues })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// `B_k mod p`; `None` outside the tabulated even range (`B_0` is 1).
    pub fn get(&self, k: u64) -> Option<u64> {
        if k == 0 {
            return Some(1);
        }
        self.residues.get(&k).copied()
    }

    pub fn residues(&self) -> &BTreeMap<u64, u64> {
        &self.residues
    }

    /// Indices k with `p | B_k`; empty iff p is regular.
    pub fn irregular_indices(&self) -> Vec<u64> {
        self.residues
            .iter()
            .filter(|(_, &r)| r == 0)
            .map(|(&k, _)| k)
            .collect()
    }
}

pub fn bernoulli_table(p: u64) -> Result<BernoulliTable> {
    BernoulliTable::new(p)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BernoulliWitness {
    pub index: u64,
    pub residue: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegularityVerdict {
    /// Representative of the exponent class in `[0, p-2]`.
    pub pair_exponent: u64,
    pub regular: bool,
    /// The Bernoulli number consulted; absent for the classes 0 and 1.
    pub witness: Option<BernoulliWitness>,
}

/// Decides whether `(p, e)` is a regular pair.
///
/// `e` is read mod `p - 1`. Classes 0 and 1 are always regular; other even
/// classes are rejected with [`Error::EvenExponent`].
pub fn regular_pair(table: &BernoulliTable, e: i64) -> Result<RegularityVerdict> {
    let p = table.p();
    let rep = e.rem_euclid(p as i64 - 1) as u64;
    if rep == 0 || rep == 1 {
        return Ok(RegularityVerdict {
            pair_exponent: rep,
            regular: true,
            witness: None,
        });
    }
    if rep.is_multiple_of(2) {
        return Err(Error::EvenExponent(e));
    }
    let index = p - rep;
    let residue = table.get(index).expect("p - e is even and in [2, p-3]");
    Ok(RegularityVerdict {
        pair_exponent: rep,
        regular: residue != 0,
        witness: Some(BernoulliWitness { index, residue }),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenBernoulli {
    pub p: u64,
    /// Representative of the exponent class in `[0, p-2]`.
    pub exponent: u64,
    /// `B_{1,ω^exponent} mod p`.
    pub residue: u64,
}

/// `B_{1,ω^i} = (1/p) Σ_{r=1}^{p-1} r·τ(r^i) mod p`, with `τ(x) = x^p mod p^2`
/// the Teichmüller lift.
///
/// Requires `i` odd and `i ≢ -1 (mod p-1)`; otherwise the sum is not
/// divisible by p.
pub fn gen_bernoulli_mod_p(p: u64, i: i64) -> Result<GenBernoulli> {
    if p < 3 || p.is_multiple_of(2) || !is_prime(p) {
        return Err(Error::BadP(p));
    }
    let j = i.rem_euclid(p as i64 - 1) as u64;
    if j.is_multiple_of(2) || j == p - 2 {
        return Err(Error::BadExponent(i));
    }
    let p2 = p as u128 * p as u128;
    let pow = |b: u128, mut e: u64| {
        let mut acc = 1u128;
        let mut b = b % p2;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b % p2;
            }
            b = b * b % p2;
            e >>= 1;
        }
        acc
    };
    let mut sum = 0u128;
    for r in 1..p {
        let ri = pow(r as u128, j) % p as u128;
        let teich = pow(ri, p);
        sum = (sum + r as u128 * teich) % p2;
    }
    assert_eq!(
        sum % p as u128,
        0,
        "sum must vanish mod p for admissible exponents"
    );
    Ok(GenBernoulli {
        p,
        exponent: j,
        residue: (sum / p as u128) as u64,
    })
}

/// Regularity data for one p, shared read-only across evaluations.
#[derive(Clone, Debug)]
pub struct Regularity {
    table: BernoulliTable,
}

impl Regularity {
    pub fn new(p: u64) -> Result<Self> {
        Ok(Regularity {
            table: BernoulliTable::new(p)?,
        })
    }

    pub fn p(&self) -> u64 {
        self.table.p()
    }

    pub fn table(&self) -> &BernoulliTable {
        &self.table
    }

    pub fn pair(&self, e: i64) -> Result<RegularityVerdict> {
        regular_pair(&self.table, e)
    }

    pub fn is_regular_prime(&self) -> bool {
        self.table.irregular_indices().is_empty()
    }
}
