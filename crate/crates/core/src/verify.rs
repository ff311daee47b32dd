//! Identities that tie the independent invariant routes together.
//!
//! Each identity is checked per prime and tallied over a range, so a sweep
//! reports how many primes passed each check rather than stopping at the
//! first failure.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::invariants::{
    a_invariant, m_direct, m_gamma, merel_c, s_invariants, wilson_pairing_holds,
    FactorialCheckpoints, M_DIRECT_BOUND,
};
use crate::modarith::{element_of_order_p, PrimePair};
use crate::selmer::{eigenunit_status, polynomial_status, EvenUnitSpec, UnitSource, UnitStatus};
use crate::survey::sieve;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Identity {
    /// `(a! (N-1-a)!)^2 = 1`
    WilsonPairing,
    /// `S_i` is a pth power for even i.
    SEvenTrivial,
    /// `M_i` direct, `M_i` via Gamma and `S_i^{-1}` share a class.
    MThreeWay,
    /// `A_m = ∏_{j<m} S_j^{(-1)^j C(m,j)}`
    ARelation,
    /// `C^4 A_2^3` is a pth power.
    CRelation,
    /// Cyclotomic eigenunit and hardcoded polynomial agree.
    EigenunitAgreement,
}

impl Identity {
    pub const ALL: [Identity; 6] = [
        Identity::WilsonPairing,
        Identity::SEvenTrivial,
        Identity::MThreeWay,
        Identity::ARelation,
        Identity::CRelation,
        Identity::EigenunitAgreement,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Identity::WilsonPairing => "wilson-pairing",
            Identity::SEvenTrivial => "s-even-trivial",
            Identity::MThreeWay => "m-three-way",
            Identity::ARelation => "a-relation",
            Identity::CRelation => "c-relation",
            Identity::EigenunitAgreement => "eigenunit-agreement",
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub identity: Identity,
    pub passed: bool,
    pub detail: String,
}

fn check(identity: Identity, passed: bool, detail: impl FnOnce() -> String) -> Check {
    Check {
        identity,
        passed,
        detail: if passed { String::new() } else { detail() },
    }
}

fn binom(m: u64, j: u64) -> i64 {
    (0..j).fold(1i64, |acc, t| acc * (m - t) as i64 / (t + 1) as i64)
}

/// Runs every identity applicable to one prime.
pub fn verify_prime(pair: &PrimePair) -> Result<Vec<Check>> {
    let (p, n) = (pair.p(), pair.n());
    let pi = p as i64;
    let zeta = element_of_order_p(pair);
    let cp = FactorialCheckpoints::compute(pair);
    let s = s_invariants(&cp, &zeta);
    let s_label = |i: u64| s[(i - 1) as usize].label as i64;
    let mut out = Vec::new();

    out.push(check(
        Identity::WilsonPairing,
        wilson_pairing_holds(n),
        || "some (a!(N-1-a)!)^2 != 1".into(),
    ));

    for i in (2..=p - 2).step_by(2) {
        out.push(check(Identity::SEvenTrivial, s_label(i) == 0, || {
            format!("label(S_{i}) = {}", s_label(i))
        }));
    }

    for i in (1..=p.saturating_sub(4)).step_by(2) {
        let g = m_gamma(i, &cp, &zeta)?.label as i64;
        let mut ok = (g + s_label(i)).rem_euclid(pi) == 0;
        let mut d = None;
        if n <= M_DIRECT_BOUND {
            d = Some(m_direct(i, pair, &zeta)?.label as i64);
            ok &= d == Some(g);
        }
        out.push(check(Identity::MThreeWay, ok, || {
            format!("i = {i}: direct {d:?}, gamma {g}, S {}", s_label(i))
        }));
    }

    let mut a2 = None;
    for m in 1..=p.saturating_sub(2) {
        let a = a_invariant(m, pair, &zeta)?;
        if m == 2 {
            a2 = Some(a.label as i64);
        }
        let want = (1..m)
            .map(|j| if j % 2 == 1 { -1 } else { 1 } * binom(m, j) * s_label(j))
            .sum::<i64>()
            .rem_euclid(pi);
        out.push(check(Identity::ARelation, a.label as i64 == want, || {
            format!("m = {m}: label(A_m) = {}, expected {want}", a.label)
        }));
    }

    if let Some(a2) = a2 {
        let c = merel_c(pair, &zeta)?.label as i64;
        out.push(check(
            Identity::CRelation,
            (4 * c + 3 * a2).rem_euclid(pi) == 0,
            || format!("label(C) = {c}, label(A_2) = {a2}"),
        ));
    }

    for i in (2..=p.saturating_sub(3)).step_by(2) {
        let spec = EvenUnitSpec::for_index(p, i);
        let UnitSource::HardcodedPolynomial(coeffs) = &spec.source else {
            continue;
        };
        let poly = polynomial_status(coeffs, pair)?;
        if poly == UnitStatus::Degenerate {
            continue;
        }
        let eig = eigenunit_status(i, pair, &zeta);
        out.push(check(Identity::EigenunitAgreement, poly == eig, || {
            format!("i = {i}: polynomial {poly:?}, eigenunit {eig:?}")
        }));
    }
    Ok(out)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tally {
    pub checked: u64,
    pub failed: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub n: u64,
    pub identity: Identity,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub p: u64,
    pub max_n: u64,
    pub primes: u64,
    pub tallies: Vec<(Identity, Tally)>,
    pub failures: Vec<Failure>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn tally(&self, id: Identity) -> &Tally {
        &self.tallies.iter().find(|(i, _)| *i == id).unwrap().1
    }
}

/// Checks every identity for every prime `N ≡ 1 mod p` with `N <= max_n`.
pub fn verify_range(p: u64, max_n: u64) -> Result<VerifyReport> {
    let primes = if max_n < 2 {
        Vec::new()
    } else {
        sieve(p, 2, max_n)?
    };
    let results = primes
        .par_iter()
        .map(|&n| verify_prime(&PrimePair::new(p, n)?).map(|c| (n, c)))
        .collect::<Result<Vec<_>>>()?;
    let mut tallies: Vec<(Identity, Tally)> = Identity::ALL
        .iter()
        .map(|&i| (i, Tally::default()))
        .collect();
    let mut failures = Vec::new();
    for (n, checks) in results {
        for c in checks {
            let t = &mut tallies
                .iter_mut()
                .find(|(i, _)| *i == c.identity)
                .unwrap()
                .1;
            t.checked += 1;
            if !c.passed {
                t.failed += 1;
                failures.push(Failure {
                    n,
                    identity: c.identity,
                    detail: c.detail,
                });
            }
        }
    }
    Ok(VerifyReport {
        p,
        max_n,
        primes: primes.len() as u64,
        tallies,
        failures,
    })
}
