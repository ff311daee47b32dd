//! Selmer dimensions `h(-i) = h¹_Σ(F_p(-i))` and rank bounds for `r_K`.
//!
//! Odd entries are decided by whether `S_i` is a pth power. An even entry
//! `i` is One iff its odd partner `p-2-i` is One and a fixed Kummer
//! generator of the `χ^{-i}`-eigenspace of the p-units of `Q(ζ_p)` is a pth
//! power mod N. Both need the relevant pair to be regular; otherwise the
//! entry is reported as Unknown instead of guessed.
//!
//! The rank logic is case-by-case: `p = 3` is always 1, `p = 5` is exactly
//! `1 + h(-1) + h(-2)`, `p = 7` has `r_K >= 2` iff `h(-1)` or `h(-3)` is
//! nonzero, and every p obeys `r_K <= 1 + Σ h(-i)` and
//! `r_K <= r_cyc + p - 2 - 2μ`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::invariants::{s_invariants, FactorialCheckpoints};
use crate::modarith::{
    element_of_order_p, mul_mod, poly_roots_mod, pow_mod, PrimePair, PthRootOfUnity, ResidueClass,
};
use crate::regularity::Regularity;

/// Everything derived from the single factorial pass for one (p, N).
#[derive(Clone, Debug)]
pub struct PrimeContext {
    pub pair: PrimePair,
    pub zeta: PthRootOfUnity,
    pub checkpoints: FactorialCheckpoints,
    /// `S_1 .. S_{p-2}`
    pub s: Vec<ResidueClass>,
}

impl PrimeContext {
    pub fn new(pair: PrimePair) -> Self {
        let zeta = element_of_order_p(&pair);
        let checkpoints = FactorialCheckpoints::compute(&pair);
        let s = s_invariants(&checkpoints, &zeta);
        PrimeContext {
            pair,
            zeta,
            checkpoints,
            s,
        }
    }

    pub fn s(&self, i: u64) -> &ResidueClass {
        &self.s[(i - 1) as usize]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Dimension {
    Zero,
    One,
    Unknown(String),
}

impl Dimension {
    pub fn symbol(&self) -> char {
        match self {
            Dimension::Zero => '0',
            Dimension::One => '1',
            Dimension::Unknown(_) => '?',
        }
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Dimension::One)
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, Dimension::Unknown(_))
    }

    fn from_bit(bit: bool) -> Self {
        if bit {
            Dimension::One
        } else {
            Dimension::Zero
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum UnitStatus {
    IsPthPower,
    NotPthPower,
    /// N divides the discriminant of the unit polynomial.
    Degenerate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum UnitSource {
    /// Monic integer polynomial, highest degree first, whose roots are the generator.
    HardcodedPolynomial(Vec<i64>),
    /// `∏_{a=1}^{p-1} (1 - ζ^a)^{e_a}` with `e_a = a^i mod p`; entry `a-1` holds `e_a`.
    CyclotomicEigenunit(Vec<u64>),
}

/// The Kummer generator used for the even entry `i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvenUnitSpec {
    pub p: u64,
    pub i: u64,
    pub source: UnitSource,
}

impl EvenUnitSpec {
    /// The known polynomials for (5,2), (7,2), (7,4); the eigenunit otherwise.
    pub fn for_index(p: u64, i: u64) -> Self {
        let source = match (p, i) {
            (5, 2) => UnitSource::HardcodedPolynomial(vec![1, 1, -1]),
            (7, 2) => UnitSource::HardcodedPolynomial(vec![1, 41, 54, 1]),
            (7, 4) => UnitSource::HardcodedPolynomial(vec![1, -25, 31, 1]),
            _ => Self::eigenunit(p, i).source,
        };
        EvenUnitSpec { p, i, source }
    }

    pub fn eigenunit(p: u64, i: u64) -> Self {
        let exps = (1..p).map(|a| pow_mod(a, i, p)).collect();
        EvenUnitSpec {
            p,
            i,
            source: UnitSource::CyclotomicEigenunit(exps),
        }
    }
}

/// pth-power status of the roots of a unit polynomial mod N.
pub fn polynomial_status(coeffs: &[i64], pair: &PrimePair) -> Result<UnitStatus> {
    let roots = poly_roots_mod(coeffs, pair.n())?;
    if roots.repeated_root || roots.roots.is_empty() {
        return Ok(UnitStatus::Degenerate);
    }
    let mut status = None;
    for &r in &roots.roots {
        let is_pow = pow_mod(r, pair.m(), pair.n()) == 1;
        match status {
            None => status = Some(is_pow),
            Some(s) if s != is_pow => {
                return Err(Error::RootStatusMismatch {
                    p: pair.p(),
                    i: 0,
                    n: pair.n(),
                })
            }
            _ => {}
        }
    }
    Ok(if status.unwrap() {
        UnitStatus::IsPthPower
    } else {
        UnitStatus::NotPthPower
    })
}

/// pth-power status of the cyclotomic eigenunit evaluated at `zeta`.
pub fn eigenunit_status(i: u64, pair: &PrimePair, zeta: &PthRootOfUnity) -> UnitStatus {
    let n = pair.n();
    let p = pair.p();
    let mut u = 1u64;
    for a in 1..p {
        let base = (1 + n - zeta.pow(a)) % n;
        u = mul_mod(u, pow_mod(base, pow_mod(a, i, p), n), n);
    }
    if pow_mod(u, pair.m(), n) == 1 {
        UnitStatus::IsPthPower
    } else {
        UnitStatus::NotPthPower
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum UnitRoute {
    Polynomial,
    Eigenunit,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvenUnitOutcome {
    /// Never `Degenerate`: a degenerate polynomial falls back to the eigenunit.
    pub status: UnitStatus,
    pub route: UnitRoute,
    /// The hardcoded polynomial had a repeated root mod N.
    pub degenerate: bool,
    /// Decided by the eigenunit for a p without a certified polynomial.
    pub best_effort: bool,
}

/// Whether the Kummer generator for the even entry `i` is a pth power mod N.
pub fn even_unit_status(ctx: &PrimeContext, i: u64) -> Result<EvenUnitOutcome> {
    let p = ctx.pair.p();
    if !i.is_multiple_of(2) || i < 2 || i + 3 > p {
        return Err(Error::BadIndex(i));
    }
    let spec = EvenUnitSpec::for_index(p, i);
    let mut degenerate = false;
    if let UnitSource::HardcodedPolynomial(coeffs) = &spec.source {
        match polynomial_status(coeffs, &ctx.pair) {
            Ok(UnitStatus::Degenerate) => degenerate = true,
            Ok(status) => {
                return Ok(EvenUnitOutcome {
                    status,
                    route: UnitRoute::Polynomial,
                    degenerate: false,
                    best_effort: false,
                })
            }
            Err(Error::RootStatusMismatch { p, n, .. }) => {
                return Err(Error::RootStatusMismatch { p, i, n })
            }
            Err(e) => return Err(e),
        }
    }
    Ok(EvenUnitOutcome {
        status: eigenunit_status(i, &ctx.pair, &ctx.zeta),
        route: UnitRoute::Eigenunit,
        degenerate,
        best_effort: !matches!(p, 5 | 7),
    })
}

/// What decided one entry of the dimension string.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Provenance {
    /// Odd entry: pth-power test of `S_i`.
    SInvariant { i: u64, label: u32 },
    /// Even entry: the odd partner and, when consulted, the unit.
    EvenCriterion {
        partner: u64,
        partner_one: bool,
        unit: Option<EvenUnitOutcome>,
    },
    /// The governing pair is irregular.
    Irregular {
        pair_exponent: u64,
        bernoulli_index: u64,
    },
    /// Built from a literal string.
    Given,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimensionEntry {
    pub index: u64,
    pub value: Dimension,
    pub provenance: Provenance,
}

fn irregular_entry(index: u64, reg: &Regularity, e: i64) -> Result<Option<DimensionEntry>> {
    let v = reg.pair(e)?;
    if v.regular {
        return Ok(None);
    }
    let w = v.witness.expect("irregular verdicts carry a witness");
    Ok(Some(DimensionEntry {
        index,
        value: Dimension::Unknown(format!(
            "irregular pair (p, {}): p divides B_{}",
            v.pair_exponent, w.index
        )),
        provenance: Provenance::Irregular {
            pair_exponent: v.pair_exponent,
            bernoulli_index: w.index,
        },
    }))
}

/// `h(-i)` for odd `i` in `[1, p-4]`.
pub fn h_sigma_odd(ctx: &PrimeContext, reg: &Regularity, i: u64) -> Result<DimensionEntry> {
    let p = ctx.pair.p();
    if i % 2 != 1 || i + 4 > p {
        return Err(Error::BadIndex(i));
    }
    if let Some(e) = irregular_entry(i, reg, -(i as i64))? {
        return Ok(e);
    }
    let s = ctx.s(i);
    Ok(DimensionEntry {
        index: i,
        value: Dimension::from_bit(s.is_pth_power()),
        provenance: Provenance::SInvariant { i, label: s.label },
    })
}

/// `h(-i)` for even `i` in `[2, p-3]`.
///
/// `χ^{1+i} = χ^{-(p-2-i)}`, so the first condition is the odd entry `p-2-i`.
pub fn h_sigma_even(ctx: &PrimeContext, reg: &Regularity, i: u64) -> Result<DimensionEntry> {
    let p = ctx.pair.p();
    if !i.is_multiple_of(2) || i < 2 || i + 3 > p {
        return Err(Error::BadIndex(i));
    }
    if let Some(e) = irregular_entry(i, reg, 1 + i as i64)? {
        return Ok(e);
    }
    let partner = p - 2 - i;
    let partner_one = h_sigma_odd(ctx, reg, partner)?.value.is_one();
    if !partner_one {
        return Ok(DimensionEntry {
            index: i,
            value: Dimension::Zero,
            provenance: Provenance::EvenCriterion {
                partner,
                partner_one,
                unit: None,
            },
        });
    }
    let unit = even_unit_status(ctx, i)?;
    Ok(DimensionEntry {
        index: i,
        value: Dimension::from_bit(unit.status == UnitStatus::IsPthPower),
        provenance: Provenance::EvenCriterion {
            partner,
            partner_one,
            unit: Some(unit),
        },
    })
}

/// The vector `(h(-1), …, h(-(p-3)))`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimensionString {
    pub pair: PrimePair,
    pub entries: Vec<DimensionEntry>,
    /// Every pair `(p, e)` with odd e is regular.
    pub regular_prime: bool,
}

impl DimensionString {
    /// Builds a string from symbols `0`, `1`, `?`, checking the even⇒odd rule.
    pub fn from_symbols(pair: PrimePair, symbols: &str) -> Result<Self> {
        let p = pair.p();
        if symbols.len() as u64 != p.saturating_sub(3) {
            return Err(Error::Parse(format!(
                "dimension string {symbols:?} must have length {}",
                p.saturating_sub(3)
            )));
        }
        let entries = symbols
            .chars()
            .enumerate()
            .map(|(k, c)| {
                let value = match c {
                    '0' => Dimension::Zero,
                    '1' => Dimension::One,
                    '?' => Dimension::Unknown("given".into()),
                    _ => return Err(Error::Parse(format!("bad symbol {c:?}"))),
                };
                Ok(DimensionEntry {
                    index: k as u64 + 1,
                    value,
                    provenance: Provenance::Given,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let ds = DimensionString {
            pair,
            regular_prime: true,
            entries,
        };
        ds.validate()?;
        Ok(ds)
    }

    pub fn get(&self, i: u64) -> &Dimension {
        &self.entries[(i - 1) as usize].value
    }

    pub fn render(&self) -> String {
        self.entries.iter().map(|e| e.value.symbol()).collect()
    }

    pub fn is_determined(&self) -> bool {
        !self.entries.iter().any(|e| e.value.is_unknown())
    }

    /// A hardcoded unit polynomial had a repeated root and was bypassed.
    pub fn degenerate(&self) -> bool {
        self.entries.iter().any(|e| {
            matches!(
                e.provenance,
                Provenance::EvenCriterion {
                    unit: Some(EvenUnitOutcome {
                        degenerate: true,
                        ..
                    }),
                    ..
                }
            )
        })
    }

    /// Some even entry rests on an uncertified eigenunit.
    pub fn best_effort(&self) -> bool {
        self.entries.iter().any(|e| {
            matches!(
                e.provenance,
                Provenance::EvenCriterion {
                    unit: Some(EvenUnitOutcome {
                        best_effort: true,
                        ..
                    }),
                    ..
                }
            )
        })
    }

    /// Even entry One forces the odd partner `p-2-i` to be One.
    pub fn validate(&self) -> Result<()> {
        let p = self.pair.p();
        for e in &self.entries {
            if e.index % 2 == 0 && e.value.is_one() {
                let odd = p - 2 - e.index;
                if !self.get(odd).is_one() {
                    return Err(Error::InvalidDimensionString { even: e.index, odd });
                }
            }
        }
        Ok(())
    }

    /// μ: odd `i <= p-4` with a regular pair and `M_i` (equivalently `S_i`)
    /// not a pth power. Irregular entries are Unknown and never counted.
    pub fn mu(&self) -> u32 {
        self.entries
            .iter()
            .filter(|e| e.index % 2 == 1 && e.value == Dimension::Zero)
            .count() as u32
    }
}

impl fmt::Display for DimensionString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

pub fn dimension_string(ctx: &PrimeContext, reg: &Regularity) -> Result<DimensionString> {
    let p = ctx.pair.p();
    let entries = (1..=p.saturating_sub(3))
        .map(|i| {
            if i % 2 == 1 {
                h_sigma_odd(ctx, reg, i)
            } else {
                h_sigma_even(ctx, reg, i)
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let ds = DimensionString {
        pair: ctx.pair,
        entries,
        regular_prime: reg.is_regular_prime(),
    };
    ds.validate()?;
    Ok(ds)
}

/// μ computed straight from the S-invariant labels and the regularity table.
pub fn mu_count(ctx: &PrimeContext, reg: &Regularity) -> Result<u32> {
    let p = ctx.pair.p();
    let mut mu = 0;
    for i in (1..p.saturating_sub(3)).step_by(2) {
        if reg.pair(-(i as i64))?.regular && !ctx.s(i).is_pth_power() {
            mu += 1;
        }
    }
    Ok(mu)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankOptions {
    /// p-rank of the class group of `Q(ζ_p)`. Defaults to 0, which is only
    /// correct for regular p; for irregular p the `p - 2 - 2μ` bound is
    /// skipped unless this is supplied.
    pub assumed_r_cyclotomic: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankEstimate {
    pub pair: PrimePair,
    pub lower: u32,
    pub upper: u32,
    pub exact: bool,
    pub mu: u32,
    pub assumed_r_cyclotomic: u32,
    /// Whether `r_cyc + p - 2 - 2μ` entered the upper bound.
    pub cyclotomic_bound_used: bool,
}

impl fmt::Display for RankEstimate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exact {
            write!(f, "r_K = {} (exact)", self.lower)
        } else {
            write!(f, "{} <= r_K <= {}", self.lower, self.upper)
        }
    }
}

pub fn rank_estimate(dims: &DimensionString, opts: RankOptions) -> RankEstimate {
    let pair = dims.pair;
    let p = pair.p();
    let mu = dims.mu();
    let r_cyc = opts.assumed_r_cyclotomic.unwrap_or(0);
    if p == 3 {
        return RankEstimate {
            pair,
            lower: 1,
            upper: 1,
            exact: true,
            mu,
            assumed_r_cyclotomic: r_cyc,
            cyclotomic_bound_used: false,
        };
    }
    let known_ones = dims.entries.iter().filter(|e| e.value.is_one()).count() as u32;
    let unknowns = dims.entries.iter().filter(|e| e.value.is_unknown()).count() as u32;
    let h = |i: u64| dims.get(i).is_one() as u32;

    let lower = match p {
        5 => 1 + known_ones,
        7 => 1 + h(1).max(h(3)),
        _ => 1 + h(1),
    };
    let mut upper = 1 + known_ones + unknowns;
    let cyclotomic_bound_used = dims.regular_prime || opts.assumed_r_cyclotomic.is_some();
    if cyclotomic_bound_used {
        let bound = (r_cyc + p as u32 - 2).saturating_sub(2 * mu);
        upper = upper.min(bound);
    }
    debug_assert!(
        1 <= lower && lower <= upper,
        "{lower} > {upper} for {pair:?}"
    );
    RankEstimate {
        pair,
        lower,
        upper,
        exact: lower == upper,
        mu,
        assumed_r_cyclotomic: r_cyc,
        cyclotomic_bound_used,
    }
}

/// Dimension string, μ and rank estimate for one prime.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Evaluation {
    pub dims: DimensionString,
    pub rank: RankEstimate,
    pub s: Vec<ResidueClass>,
}

pub fn evaluate(pair: PrimePair, reg: &Regularity, opts: RankOptions) -> Result<Evaluation> {
    let ctx = PrimeContext::new(pair);
    let dims = dimension_string(&ctx, reg)?;
    let rank = rank_estimate(&dims, opts);
    Ok(Evaluation {
        dims,
        rank,
        s: ctx.s,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(p: u64, n: u64) -> (PrimeContext, Regularity) {
        (
            PrimeContext::new(PrimePair::new(p, n).unwrap()),
            Regularity::new(p).unwrap(),
        )
    }

    #[test]
    fn micro_case() {
        let (c, r) = ctx(5, 11);
        assert_eq!(h_sigma_odd(&c, &r, 1).unwrap().value, Dimension::Zero);
        assert_eq!(h_sigma_even(&c, &r, 2).unwrap().value, Dimension::Zero);
        let ds = dimension_string(&c, &r).unwrap();
        assert_eq!(ds.render(), "00");
        assert_eq!(mu_count(&c, &r).unwrap(), 1);
        let est = rank_estimate(&ds, RankOptions::default());
        assert_eq!((est.lower, est.upper, est.exact), (1, 1, true));
        assert_eq!(est.to_string(), "r_K = 1 (exact)");
    }

    #[test]
    fn unit_status_micro_case() {
        let (c, _) = ctx(5, 11);
        let u = even_unit_status(&c, 2).unwrap();
        assert_eq!(u.status, UnitStatus::NotPthPower);
        assert_eq!(u.route, UnitRoute::Polynomial);
    }

    #[test]
    fn counterexample_337() {
        let (c, r) = ctx(7, 337);
        assert_eq!(h_sigma_odd(&c, &r, 1).unwrap().value, Dimension::Zero);
        assert_eq!(h_sigma_odd(&c, &r, 3).unwrap().value, Dimension::One);
        let ds = dimension_string(&c, &r).unwrap();
        assert_eq!(mu_count(&c, &r).unwrap(), 1);
        let est = rank_estimate(&ds, RankOptions::default());
        assert_eq!(est.lower, 2);
        assert_eq!(est.mu, 1);
    }

    #[test]
    fn counterexample_353() {
        let (c, r) = ctx(11, 353);
        let ds = dimension_string(&c, &r).unwrap();
        assert_eq!(*ds.get(1), Dimension::Zero);
        assert_eq!(*ds.get(3), Dimension::One);
        let est = rank_estimate(&ds, RankOptions::default());
        assert_eq!(est.lower, 1);
        assert!(est.upper >= 2);
        assert!(!est.exact);
    }

    #[test]
    fn partner_index_translation() {
        // (5,2) -> S_1, (7,2) -> S_3, (7,4) -> S_1
        for (p, n, i, partner) in [(5, 11, 2, 1), (7, 29, 2, 3), (7, 29, 4, 1)] {
            let (c, r) = ctx(p, n);
            match h_sigma_even(&c, &r, i).unwrap().provenance {
                Provenance::EvenCriterion { partner: got, .. } => assert_eq!(got, partner),
                other => panic!("{other:?}"),
            }
        }
    }

    #[test]
    fn bad_indices() {
        let (c, r) = ctx(7, 29);
        assert!(matches!(h_sigma_odd(&c, &r, 2), Err(Error::BadIndex(2))));
        assert!(matches!(h_sigma_odd(&c, &r, 5), Err(Error::BadIndex(5))));
        assert!(matches!(h_sigma_even(&c, &r, 3), Err(Error::BadIndex(3))));
        assert!(matches!(h_sigma_even(&c, &r, 6), Err(Error::BadIndex(6))));
        assert!(matches!(even_unit_status(&c, 1), Err(Error::BadIndex(1))));
    }

    #[test]
    fn p3_is_rank_one() {
        let (c, r) = ctx(3, 7);
        let ds = dimension_string(&c, &r).unwrap();
        assert_eq!(ds.render(), "");
        let est = rank_estimate(&ds, RankOptions::default());
        assert_eq!((est.lower, est.upper, est.exact), (1, 1, true));
    }

    #[test]
    fn from_symbols_rejects_even_without_partner() {
        let pair = PrimePair::new(5, 11).unwrap();
        assert!(matches!(
            DimensionString::from_symbols(pair, "01"),
            Err(Error::InvalidDimensionString { even: 2, odd: 1 })
        ));
        assert!(DimensionString::from_symbols(pair, "0").is_err());
        assert!(DimensionString::from_symbols(pair, "0x").is_err());
    }

    #[test]
    fn p7_bounds_by_string() {
        let pair = PrimePair::new(7, 29).unwrap();
        let expect = [
            ("0000", 1, 1),
            ("1000", 2, 2),
            ("0010", 2, 2),
            ("1010", 2, 3),
            ("1001", 2, 3),
            ("0110", 2, 3),
            ("1011", 2, 4),
            ("1110", 2, 4),
            ("1111", 2, 5),
        ];
        for (s, lo, hi) in expect {
            let ds = DimensionString::from_symbols(pair, s).unwrap();
            let est = rank_estimate(&ds, RankOptions::default());
            assert_eq!((est.lower, est.upper), (lo, hi), "{s}");
        }
    }

    #[test]
    fn unknown_entries_widen_upper_only() {
        let pair = PrimePair::new(11, 23).unwrap();
        let ds = DimensionString::from_symbols(pair, "0?1?0000").unwrap();
        let est = rank_estimate(&ds, RankOptions::default());
        assert_eq!(est.lower, 1);
        // min(1 + 1 + 2, 9 - 2·3)
        assert_eq!(est.upper, 3);
        assert!(!est.exact);
    }

    #[test]
    fn irregular_p_reports_unknown() {
        // 37 | B_32: odd entry 31 and its even partner 4 depend on (37, 5).
        let n = (1..)
            .map(|t| 1 + 37 * t)
            .find(|&n| crate::modarith::is_prime(n))
            .unwrap();
        let (c, r) = ctx(37, n);
        let ds = dimension_string(&c, &r).unwrap();
        assert!(ds.get(31).is_unknown());
        assert!(ds.get(4).is_unknown());
        assert_eq!(ds.render().matches('?').count(), 2);
        let est = rank_estimate(&ds, RankOptions::default());
        assert!(!est.cyclotomic_bound_used);
        let est = rank_estimate(
            &ds,
            RankOptions {
                assumed_r_cyclotomic: Some(1),
            },
        );
        assert!(est.cyclotomic_bound_used);
    }
}
