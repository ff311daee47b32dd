use std::fmt::Write;

use kummer_core::selmer::{EvenUnitSpec, Provenance, UnitRoute, UnitSource, UnitStatus};
use kummer_core::verify::VerifyReport;
use kummer_core::{DimensionString, InvariantSet, RankEstimate, ResidueClass, TableAggregate};
use serde::Serialize;

use crate::Format;

fn json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("plain data serializes");
    s.push('\n');
    s
}

fn csv_rows(header: &str, rows: impl IntoIterator<Item = String>) -> String {
    let mut s = format!("{header}\n");
    for r in rows {
        s.push_str(&r);
        s.push('\n');
    }
    s
}

pub fn rank(est: &RankEstimate, fmt: Format) -> String {
    match fmt {
        Format::Text => format!("{est}\n"),
        Format::Json => json(est),
        Format::Csv => csv_rows(
            "p,N,rank_lower,rank_upper,rank_exact,mu",
            [format!(
                "{},{},{},{},{},{}",
                est.pair.p(),
                est.pair.n(),
                est.lower,
                est.upper,
                est.exact as u8,
                est.mu
            )],
        ),
    }
}

fn polynomial(coeffs: &[i64]) -> String {
    let deg = coeffs.len() - 1;
    let mut s = String::new();
    for (k, &c) in coeffs.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let power = deg - k;
        let sign = if c < 0 { "-" } else { "+" };
        if s.is_empty() {
            if c < 0 {
                s.push('-');
            }
        } else {
            write!(s, " {sign} ").unwrap();
        }
        let a = c.unsigned_abs();
        if a != 1 || power == 0 {
            write!(s, "{a}").unwrap();
        }
        match power {
            0 => {}
            1 => s.push('x'),
            _ => write!(s, "x^{power}").unwrap(),
        }
    }
    s
}

fn provenance(p: u64, index: u64, prov: &Provenance) -> String {
    match prov {
        Provenance::SInvariant { i, label: 0 } => format!("S_{i} is a {p}th power"),
        Provenance::SInvariant { i, label } => {
            format!("S_{i} has class {label}, not a {p}th power")
        }
        Provenance::EvenCriterion {
            partner,
            partner_one: false,
            ..
        } => format!("partner h(-{partner}) = 0"),
        Provenance::EvenCriterion {
            partner,
            unit: Some(u),
            ..
        } => {
            let is_pow = u.status == UnitStatus::IsPthPower;
            let mut s = format!("partner h(-{partner}) = 1; ");
            match (u.route, EvenUnitSpec::for_index(p, index).source) {
                (UnitRoute::Polynomial, UnitSource::HardcodedPolynomial(c)) => write!(
                    s,
                    "roots of {} are {}{p}th powers",
                    polynomial(&c),
                    if is_pow { "" } else { "not " }
                ),
                _ => write!(
                    s,
                    "cyclotomic eigenunit is {}a {p}th power",
                    if is_pow { "" } else { "not " }
                ),
            }
            .unwrap();
            if u.degenerate {
                s.push_str(" (unit polynomial has a repeated root mod N)");
            }
            if u.best_effort {
                s.push_str(" (best effort)");
            }
            s
        }
        Provenance::EvenCriterion { partner, .. } => format!("partner h(-{partner}) = 1"),
        Provenance::Irregular {
            pair_exponent,
            bernoulli_index,
        } => format!("irregular pair ({p}, {pair_exponent}): {p} divides B_{bernoulli_index}"),
        Provenance::Given => "given".into(),
    }
}

pub fn dims(ds: &DimensionString, fmt: Format) -> String {
    let p = ds.pair.p();
    match fmt {
        Format::Text => {
            let mut s = format!("p = {p}, N = {}\ndims {}\n", ds.pair.n(), ds.render());
            for e in &ds.entries {
                writeln!(
                    s,
                    "h(-{}) = {}  {}",
                    e.index,
                    e.value.symbol(),
                    provenance(p, e.index, &e.provenance)
                )
                .unwrap();
            }
            s
        }
        Format::Json => {
            let mut v = serde_json::to_value(ds).expect("plain data serializes");
            v["dim_string"] = ds.render().into();
            json(&v)
        }
        Format::Csv => csv_rows(
            "p,N,index,value,provenance",
            ds.entries.iter().map(|e| {
                format!(
                    "{p},{},{},{},\"{}\"",
                    ds.pair.n(),
                    e.index,
                    e.value.symbol(),
                    provenance(p, e.index, &e.provenance)
                )
            }),
        ),
    }
}

pub fn invariants(set: &InvariantSet, fmt: Format) -> String {
    let mut rows: Vec<(String, &ResidueClass)> = Vec::new();
    for (k, c) in set.s.iter().enumerate() {
        rows.push((format!("S_{}", k + 1), c));
    }
    for (i, c) in &set.m_gamma {
        rows.push((format!("M_{i} (gamma)"), c));
    }
    for (i, c) in set.m_direct.iter().flatten() {
        rows.push((format!("M_{i} (direct)"), c));
    }
    if let Some(a2) = &set.a2 {
        rows.push(("A_2".into(), a2));
    }
    rows.push(("C".into(), &set.c));
    match fmt {
        Format::Text => {
            let mut s = format!(
                "p = {}, N = {}, M = {}, zeta = {}\n",
                set.pair.p(),
                set.pair.n(),
                set.pair.m(),
                set.zeta
            );
            for (name, c) in rows {
                writeln!(s, "{name:<14} value {:<12} class {}", c.value, c.label).unwrap();
            }
            s
        }
        Format::Json => json(set),
        Format::Csv => csv_rows(
            "name,value,character,label",
            rows.into_iter()
                .map(|(name, c)| format!("{name},{},{},{}", c.value, c.character, c.label)),
        ),
    }
}

pub fn verify(report: &VerifyReport, fmt: Format) -> String {
    match fmt {
        Format::Text => {
            let mut s = format!(
                "p = {}, N <= {}: {} primes\n",
                report.p, report.max_n, report.primes
            );
            for (id, t) in &report.tallies {
                writeln!(
                    s,
                    "{:<20} checked {:<8} failed {}",
                    id.name(),
                    t.checked,
                    t.failed
                )
                .unwrap();
            }
            for f in report.failures.iter().take(20) {
                writeln!(s, "FAIL N = {} {}: {}", f.n, f.identity, f.detail).unwrap();
            }
            s.push_str(if report.passed() { "PASS\n" } else { "FAIL\n" });
            s
        }
        Format::Json => json(report),
        Format::Csv => csv_rows(
            "identity,checked,failed",
            report
                .tallies
                .iter()
                .map(|(id, t)| format!("{},{},{}", id.name(), t.checked, t.failed)),
        ),
    }
}

pub fn tables(agg: &TableAggregate, fmt: Format) -> String {
    match fmt {
        Format::Text => {
            let mut s = format!(
                "p = {}: {} primes, {} errors\n",
                agg.p.map_or("-".to_string(), |p| p.to_string()),
                agg.total,
                agg.errors
            );
            writeln!(
                s,
                "{:<12} {:>10} {:>9}  exact r_K",
                "dims", "count", "fraction"
            )
            .unwrap();
            for (dims, count) in &agg.strings {
                let ranks = agg
                    .exact_ranks
                    .get(dims)
                    .map(|m| {
                        m.iter()
                            .map(|(r, c)| format!("{r}:{c}"))
                            .collect::<Vec<_>>()
                            .join(" ")
                    })
                    .unwrap_or_default();
                let label = if dims.is_empty() { "(empty)" } else { dims };
                writeln!(
                    s,
                    "{label:<12} {count:>10} {:>9.4}  {ranks}",
                    agg.fraction(dims)
                )
                .unwrap();
            }
            for i in 1..=agg.entry_ones.len() as u64 {
                writeln!(s, "h(-{i}) = 1: {:.4}", agg.entry_one_fraction(i)).unwrap();
            }
            writeln!(s, "r_K >= 2: {:.4}", agg.rank_ge2_fraction()).unwrap();
            s
        }
        Format::Json => json(agg),
        Format::Csv => csv_rows(
            "dim_string,count,fraction",
            agg.strings
                .iter()
                .map(|(d, c)| format!("{d},{c},{}", agg.fraction(d))),
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::polynomial;

    #[test]
    fn polynomials_print_like_math() {
        assert_eq!(polynomial(&[1, 1, -1]), "x^2 + x - 1");
        assert_eq!(polynomial(&[1, 41, 54, 1]), "x^3 + 41x^2 + 54x + 1");
        assert_eq!(polynomial(&[1, -25, 31, 1]), "x^3 - 25x^2 + 31x + 1");
        assert_eq!(polynomial(&[-1, 0, 0]), "-x^2");
    }
}
