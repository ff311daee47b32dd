use std::process::{Command, Output};

fn kummer(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kummer"))
        .args(args)
        .env_remove("KUMMER_THREADS")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn rank_micro_case() {
    let o = kummer(&["rank", "--p", "5", "--N", "11"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "r_K = 1 (exact)\n");
}

#[test]
fn dims_counterexample() {
    let o = kummer(&["dims", "--p", "7", "--N", "337"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("dims 0010"), "{out}");
    assert!(out.contains("h(-3) = 1  S_3 is a 7th power"), "{out}");
    assert!(out.contains("x^3 + 41x^2 + 54x + 1"), "{out}");
}

#[test]
fn dims_is_deterministic() {
    let a = kummer(&["dims", "--p", "11", "--N", "353", "--format", "json"]);
    let b = kummer(&["dims", "--p", "11", "--N", "353", "--format", "json"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn validation_errors_exit_2() {
    for args in [
        &["rank", "--p", "5", "--N", "13"][..],
        &["rank", "--p", "4", "--N", "13"],
        &["rank", "--p", "5", "--N", "21"],
        &["dims", "--p", "5"],
        &["frobnicate"],
    ] {
        let o = kummer(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        let err = stderr(&o);
        assert_eq!(err.lines().count(), 1, "{args:?}: {err}");
        assert!(err.starts_with("error:"), "{err}");
    }
}

#[test]
fn missing_survey_dir_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let o = kummer(&["tables", "--out", dir.path().join("nope").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(stderr(&o).lines().count(), 1);
}

#[test]
fn json_output_parses_for_every_subcommand() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let runs: [&[&str]; 6] = [
        &["rank", "--p", "7", "--N", "337"],
        &["dims", "--p", "7", "--N", "337"],
        &["invariants", "--p", "5", "--N", "11", "--direct"],
        &["verify", "--p", "5", "--max", "500"],
        &["survey", "--p", "5", "--max", "2000", "--out", out],
        &["tables", "--out", out],
    ];
    for args in runs {
        let mut full = args.to_vec();
        full.extend(["--format", "json"]);
        let o = kummer(&full);
        assert_eq!(o.status.code(), Some(0), "{args:?}: {}", stderr(&o));
        let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        assert!(v.is_object(), "{args:?}");
    }
    let o = kummer(&["invariants", "--p", "5", "--N", "11", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["s"][0]["value"], 2);
    assert_eq!(v["m_gamma"][0][1]["value"], 6);
    assert_eq!(v["c"]["value"], 5);
}

#[test]
fn rank_json_round_trips_numbers() {
    let o = kummer(&["rank", "--p", "11", "--N", "353", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["lower"], 1);
    assert_eq!(v["pair"]["n"], 353);
    assert_eq!(v["exact"], false);
}

#[test]
fn csv_formats_have_headers() {
    let o = kummer(&["rank", "--p", "5", "--N", "11", "--format", "csv"]);
    assert_eq!(
        stdout(&o),
        "p,N,rank_lower,rank_upper,rank_exact,mu\n5,11,1,1,1,1\n"
    );
    let o = kummer(&["verify", "--p", "7", "--max", "1000", "--format", "csv"]);
    assert!(stdout(&o).starts_with("identity,checked,failed\n"));
}

#[test]
fn survey_then_tables_agree() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let s = kummer(&[
        "survey",
        "--p",
        "5",
        "--max",
        "100",
        "--out",
        out,
        "--workers",
        "1",
    ]);
    assert_eq!(s.status.code(), Some(0), "{}", stderr(&s));
    let t = kummer(&["tables", "--out", out]);
    assert_eq!(stdout(&s), stdout(&t));
    assert!(stdout(&t).starts_with("p = 5: 5 primes, 0 errors\n"));
    let csv = std::fs::read_to_string(dir.path().join("records.csv")).unwrap();
    assert_eq!(csv.lines().count(), 6);
    assert!(!csv.contains('\r'));
}

#[test]
fn irregular_entries_are_explained() {
    let o = kummer(&["dims", "--p", "37", "--N", "149"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(
        out.contains("h(-31) = ?  irregular pair (37, 5): 37 divides B_32"),
        "{out}"
    );
    let r = kummer(&["rank", "--p", "37", "--N", "149", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&r.stdout).unwrap();
    assert_eq!(v["cyclotomic_bound_used"], false);
    let r = kummer(&[
        "rank",
        "--p",
        "37",
        "--N",
        "149",
        "--r-cyclotomic",
        "1",
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&r.stdout).unwrap();
    assert_eq!(v["cyclotomic_bound_used"], true);
}

#[test]
fn workers_env_var_is_read() {
    let dir = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_kummer"))
        .args(["survey", "--p", "7", "--max", "500", "--out"])
        .arg(dir.path())
        .env("KUMMER_THREADS", "2")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    let bad = Command::new(env!("CARGO_BIN_EXE_kummer"))
        .args(["survey", "--p", "7", "--max", "500", "--out"])
        .arg(dir.path())
        .env("KUMMER_THREADS", "lots")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}
