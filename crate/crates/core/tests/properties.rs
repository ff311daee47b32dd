use kummer_core::invariants::{m_gamma, FactorialCheckpoints};
use kummer_core::modarith::is_prime;
use kummer_core::selmer::{dimension_string, mu_count, rank_estimate, RankOptions};
use kummer_core::survey::{sieve, PrimeRecord};
use kummer_core::{PrimeContext, PrimePair, Regularity};
use proptest::prelude::*;

fn prime_pair() -> impl Strategy<Value = PrimePair> {
    (
        prop::sample::select(vec![3u64, 5, 7, 11, 13, 17]),
        1u64..20_000,
    )
        .prop_filter_map("N prime", |(p, t)| PrimePair::new(p, 1 + 2 * p * t).ok())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn dimension_strings_are_consistent(pair in prime_pair()) {
        let p = pair.p();
        let reg = Regularity::new(p).unwrap();
        let ctx = PrimeContext::new(pair);
        let dims = dimension_string(&ctx, &reg).unwrap();
        prop_assert_eq!(dims.render().len() as u64, p - 3);
        prop_assert!(dims.validate().is_ok());
        prop_assert_eq!(mu_count(&ctx, &reg).unwrap(), dims.mu());

        let est = rank_estimate(&dims, RankOptions::default());
        prop_assert!(1 <= est.lower && est.lower <= est.upper);
        prop_assert!(est.upper <= (p - 2).max(1) as u32);
        if p == 5 {
            prop_assert!(est.exact);
            prop_assert_ne!(dims.render(), "01");
        }
    }

    #[test]
    fn gamma_route_inverts_s(pair in prime_pair()) {
        let ctx = PrimeContext::new(pair);
        let cp = FactorialCheckpoints::compute(&pair);
        let p = pair.p() as u32;
        for i in (1..=pair.p().saturating_sub(4)).step_by(2) {
            let g = m_gamma(i, &cp, &ctx.zeta).unwrap().label;
            prop_assert_eq!((g + ctx.s(i).label) % p, 0);
        }
        for i in (2..=pair.p() - 2).step_by(2) {
            prop_assert!(ctx.s(i).is_pth_power());
        }
    }

    #[test]
    fn records_round_trip(
        n in any::<u64>(),
        dims in "[01?]{0,8}",
        lower in 0u32..10,
        upper in 0u32..10,
        exact: bool,
        degenerate: bool,
        labels in prop::collection::vec(0u32..100, 0..12),
        error in "\\PC{0,20}",
        elapsed in any::<u64>(),
    ) {
        let rec = PrimeRecord {
            p: 7,
            n,
            dim_string: dims,
            rank_lower: lower,
            rank_upper: upper,
            rank_exact: exact,
            mu: 0,
            s_labels: labels.iter().map(u32::to_string).collect::<Vec<_>>().join(";"),
            degenerate_flag: degenerate,
            error,
            elapsed_us: elapsed,
        };
        let mut w = csv::Writer::from_writer(vec![]);
        w.serialize(&rec).unwrap();
        let bytes = w.into_inner().unwrap();
        let back: PrimeRecord = csv::Reader::from_reader(&bytes[..]).deserialize().next().unwrap().unwrap();
        prop_assert_eq!(&back, &rec);
        prop_assert_eq!(back.labels(), labels);
        let json = serde_json::to_string(&rec).unwrap();
        prop_assert_eq!(serde_json::from_str::<PrimeRecord>(&json).unwrap(), rec);
    }

    #[test]
    fn sieve_windows(p in prop::sample::select(vec![3u64, 5, 7, 11, 101]), lo in 2u64..1u64 << 40, width in 0u64..5000) {
        let got = sieve(p, lo, lo + width).unwrap();
        let want: Vec<u64> = (lo..=lo + width).filter(|&n| n % p == 1 && is_prime(n)).collect();
        prop_assert_eq!(got, want);
    }
}
