use std::process::{Command, Output};

use derivpoly::{PolyRecord, Series, Rational, Table, Triangle};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_derivpoly"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn ok(args: &[&str]) -> String {
    let out = run(args);
    assert_eq!(code(&out), 0, "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    stdout(&out)
}

#[test]
fn table_examples() {
    assert_eq!(ok(&["table", "eulerian", "--n", "3"]).lines().last(), Some("1 4 1"));
    assert_eq!(ok(&["table", "macmahon", "--n", "4"]).lines().last(), Some("1 23 23 1"));
    let b = ok(&["table", "bernoulli", "--n", "4"]);
    assert_eq!(b.lines().collect::<Vec<_>>(), ["1", "-1/2", "1/6", "0", "-1/30"]);
    assert_eq!(ok(&["--format", "csv", "table", "eulerian", "--n", "4"]).lines().last(), Some("1,11,11,1"));
}

#[test]
fn poly_examples() {
    assert_eq!(ok(&["poly", "P", "--n", "2", "--a", "0", "--b", "1"]), "[0, -1, 1]\n");
    assert_eq!(ok(&["poly", "E", "--n", "3"]), "[0, 1, 4, 1]\n");
    assert_eq!(ok(&["poly", "Q", "--n", "2", "--a", "0", "--b", "1"]), "[1, -8, 8]\n");
    assert_eq!(ok(&["poly", "A", "--n", "4"]), "[1, 11, 11, 1]\n");
    assert_eq!(ok(&["poly", "M", "--n", "2"]), "[1, 6, 1]\n");
}

#[test]
fn series_examples() {
    let args = ["series", "riccati", "--r", "1", "--a", "0", "--b", "1", "--u0", "0", "--order", "5"];
    assert_eq!(ok(&args), "[0, 0, 0, 0, 0, 0]\n");
    let args = ["series", "riccati", "--r", "1", "--a", "0", "--b", "1", "--u0", "1/2", "--order", "2"];
    assert_eq!(ok(&args), "[1/2, -1/4, 0]\n");
}

#[test]
fn logistic_flags_match_explicit_parameters() {
    // q = 2, p = 3, s = 1  ->  r = -1/2, a = 2, b = 0, u0 = 1/2
    let logistic = ok(&["series", "riccati", "--q", "2", "--p", "3", "--s", "1", "--order", "6"]);
    let explicit = ok(&["series", "riccati", "--r", "-1/2", "--a", "2", "--b", "0", "--u0", "1/2", "--order", "6"]);
    assert_eq!(logistic, explicit);
    let out = run(&["series", "riccati", "--q", "2", "--p", "3", "--s", "1", "--r", "1", "--order", "3"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn usage_errors_exit_2() {
    let cases: &[&[&str]] = &[
        &["table", "eulerian", "--n", "0"],
        &["table", "eulerian", "--n", "-3"],
        &["table", "pascal", "--n", "3"],
        &["table", "eulerian", "--n", "3", "--bogus"],
        &["poly", "Q", "--n", "2", "--a", "1", "--b", "1"],
        &["poly", "Q", "--n", "2", "--a", "1"],
        &["poly", "S", "--n", "2", "--a", "0", "--b", "1"],
        &["poly", "P", "--n", "0", "--a", "0", "--b", "1"],
        &["poly", "X", "--n", "2"],
        &["poly", "Q", "--n", "2", "--a", "0.5", "--b", "1"],
        &["series", "riccati", "--r", "0", "--a", "0", "--b", "1", "--u0", "0", "--order", "3"],
        &["series", "riccati", "--r", "1", "--a", "1", "--b", "1", "--u0", "0", "--order", "3"],
        &["series", "riccati", "--r", "1", "--a", "0", "--b", "1", "--u0", "0", "--order", "0"],
        &["series", "v", "--r", "1", "--a", "0", "--b", "1", "--u0", "0", "--v0", "0", "--order", "3"],
        &["series", "riccati", "--r", "1", "--a", "0", "--b", "1", "--u0", "1/0", "--order", "3"],
        &["verify", "bogus"],
        &["verify", "lemma1", "--n-max", "41"],
        &["verify", "grosset-veselov", "--m-max", "17"],
        &["verify", "integrals", "--a", "1", "--b", "1"],
        &["verify", "integrals", "--a", "1"],
        &[],
    ];
    for args in cases {
        assert_eq!(code(&run(args)), 2, "{args:?}");
    }
}

#[test]
fn table_json_round_trips() {
    for kind in ["eulerian", "macmahon"] {
        let text = ok(&["--format", "json", "table", kind, "--n", "9"]);
        let table: Table = serde_json::from_str(&text).unwrap();
        assert_eq!(serde_json::to_string(&table).unwrap() + "\n", text);
        let tri = Triangle::try_from(table.clone()).unwrap();
        assert_eq!(tri.to_table(), table);
    }
    for kind in ["bernoulli", "bernoulli-poly"] {
        let text = ok(&["--format", "json", "table", kind, "--n", "10"]);
        let table: Table = serde_json::from_str(&text).unwrap();
        assert_eq!(serde_json::to_string(&table).unwrap() + "\n", text);
    }
}

#[test]
fn poly_json_round_trips() {
    let cases: &[&[&str]] = &[
        &["poly", "P", "--n", "5", "--a", "-1/2", "--b", "3"],
        &["poly", "Q", "--n", "4", "--r", "2", "--a", "0", "--b", "1"],
        &["poly", "S", "--n", "3", "--a", "0", "--b", "1", "--d", "-1/2"],
        &["poly", "E", "--n", "6"],
        &["poly", "A", "--n", "0"],
        &["poly", "M", "--n", "5"],
    ];
    for args in cases {
        let mut full = vec!["--format", "json"];
        full.extend_from_slice(args);
        let text = ok(&full);
        let record: PolyRecord = serde_json::from_str(&text).unwrap();
        assert_eq!(serde_json::to_string(&record).unwrap() + "\n", text);
        let plain: Vec<String> = record.coefficients.coeffs().iter().map(Rational::to_string).collect();
        assert_eq!(ok(args), format!("[{}]\n", plain.join(", ")));
    }
}

#[test]
fn series_json_round_trips() {
    let args = ["--format", "json", "series", "v", "--r", "-1", "--a", "-1", "--b", "1", "--u0", "0", "--d", "1/4", "--order", "7"];
    let text = ok(&args);
    let s: Series<Rational> = serde_json::from_str(&text).unwrap();
    assert_eq!(s.order(), 7);
    assert_eq!(serde_json::to_string(&s).unwrap() + "\n", text);
}

#[test]
fn verify_examples() {
    let out = ok(&["verify", "integrals", "--n-max", "12", "--a", "0", "--b", "1"]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 37);
    assert!(lines.iter().all(|l| l.starts_with("PASS ")));
    assert_eq!(lines.iter().filter(|l| l.contains(" integral_p ")).count(), 12);
    assert_eq!(lines.iter().filter(|l| l.contains(" integral_q ")).count(), 13);
    assert_eq!(lines.iter().filter(|l| l.contains(" integral_s ")).count(), 12);

    let out = ok(&["--format", "json", "verify", "grosset-veselov", "--m-max", "8"]);
    let verdicts: Vec<serde_json::Value> = out.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    let count = |id: &str| verdicts.iter().filter(|v| v["identity"] == id).count();
    assert_eq!(count("grosset_veselov_exact"), 8);
    assert_eq!(count("grosset_veselov_numeric"), 3);
    assert!(verdicts.iter().all(|v| v["pass"] == true && v["witness"].is_null()));
}

#[test]
fn verify_all_is_deterministic() {
    let first = run(&["--format", "json", "verify", "all"]);
    assert_eq!(code(&first), 0);
    let single = Command::new(env!("CARGO_BIN_EXE_derivpoly"))
        .env("DERIVPOLY_THREADS", "1")
        .args(["--format", "json", "verify", "all"])
        .output()
        .unwrap();
    assert_eq!(code(&single), 0);
    assert_eq!(first.stdout, single.stdout);
    let again = run(&["--format", "json", "verify", "all"]);
    assert_eq!(first.stdout, again.stdout);
}

#[test]
fn bad_thread_count_is_a_usage_error() {
    let out = Command::new(env!("CARGO_BIN_EXE_derivpoly"))
        .env("DERIVPOLY_THREADS", "zero")
        .args(["table", "eulerian", "--n", "2"])
        .output()
        .unwrap();
    assert_eq!(code(&out), 2);
}

#[test]
fn verify_csv_has_header_and_rows() {
    let out = ok(&["--format", "csv", "verify", "classical", "--n-max", "3"]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "identity,outcome,params,first_failure,lhs,rhs");
    assert_eq!(lines.len(), 4);
    assert!(lines[1..].iter().all(|l| l.starts_with("classical,pass,n=")));
}
