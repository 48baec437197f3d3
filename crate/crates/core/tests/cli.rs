use std::fs;
use std::process::{Command, Output};

use bohr::cli::{parse_csv, CSV_HEADER};
use bohr::upper::SignedHomPoly;

fn bohr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bohr"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn bounds_csv_is_ordered_and_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for path in [&a, &b] {
        let o = bohr(&[
            "bounds",
            "--n-max",
            "8",
            "--search-m",
            "2",
            "--trials",
            "4",
            "--out",
            path.to_str().unwrap(),
        ]);
        assert_eq!(
            o.status.code(),
            Some(0),
            "{}",
            String::from_utf8_lossy(&o.stderr)
        );
    }
    let text = fs::read_to_string(&a).unwrap();
    assert_eq!(text, fs::read_to_string(&b).unwrap());
    assert_eq!(text.lines().next(), Some(CSV_HEADER));

    let rows = parse_csv(&text).unwrap();
    assert_eq!(
        rows.iter().map(|r| r.n).collect::<Vec<_>>(),
        (1..=8).collect::<Vec<_>>()
    );
    for r in &rows {
        assert!(r.invariant_holds(), "{r:?}");
        assert_eq!(r.upper_search.is_some(), r.n <= 4);
        assert!(r.upper_theory.is_none());
    }
}

#[test]
fn bounds_theory_column_and_gnuplot() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("t.csv");
    let o = bohr(&[
        "bounds",
        "--n-min",
        "188",
        "--n-max",
        "190",
        "--gnuplot",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let rows = parse_csv(&fs::read_to_string(&out).unwrap()).unwrap();
    assert!(rows[0].upper_theory.is_none());
    assert!((rows[1].upper_theory.unwrap() - 0.304_875_904_813_145_25).abs() < 1e-12);
    assert!(rows.iter().all(|r| r.invariant_holds()));
    let script = fs::read_to_string(dir.path().join("t.gp")).unwrap();
    assert!(script.contains("'t.csv'"));
}

#[test]
fn bounds_usage_and_io_errors() {
    let o = bohr(&[
        "bounds",
        "--n-min",
        "5",
        "--n-max",
        "2",
        "--out",
        "/tmp/unused.csv",
    ]);
    assert_eq!(o.status.code(), Some(2));
    let o = bohr(&["bounds", "--n-max", "2", "--out", "/nonexistent-dir/x.csv"]);
    assert_eq!(o.status.code(), Some(3));
    let o = bohr(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_suites_pass() {
    for suite in ["combinatorics", "wiener", "lower", "upper"] {
        let o = bohr(&["verify", suite]);
        assert_eq!(o.status.code(), Some(0), "{suite}: {}", stdout(&o));
        let text = stdout(&o);
        assert!(text.lines().filter(|l| l.starts_with("[PASS]")).count() >= 3);
        assert!(!text.contains("[FAIL]"));
    }
    assert_eq!(bohr(&["verify", "bogus"]).status.code(), Some(2));
}

#[test]
fn verify_series_file() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("good.txt");
    // |c0| = 1/2 and first-order block (0.6, 0.1): 0.608 <= 0.75
    fs::write(&good, "# n = 2\n0 0 0.5 0\n1 0 0.6 0\n0 1 0.1 0\n").unwrap();
    let o = bohr(&[
        "verify",
        "combinatorics",
        "--series-file",
        good.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = bohr(&[
        "verify",
        "combinatorics",
        "--series-file",
        good.to_str().unwrap(),
        "--radius",
        "0.9,0.9",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("truncated Bohr sum"));

    let bad = dir.path().join("bad.txt");
    fs::write(&bad, "0 0 0.9 0\n1 0 0.9 0\n").unwrap();
    let o = bohr(&[
        "verify",
        "combinatorics",
        "--series-file",
        bad.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("[FAIL]"));

    let missing = dir.path().join("missing.txt");
    let o = bohr(&[
        "verify",
        "lower",
        "--series-file",
        missing.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn search_upper_certified_with_witness() {
    let dir = tempfile::tempdir().unwrap();
    let w = dir.path().join("w.txt");
    let args = [
        "search-upper",
        "--n",
        "3",
        "--degree",
        "2",
        "--trials",
        "6",
        "--seed",
        "9",
    ];
    let first = bohr(&[&args[..], &["--witness", w.to_str().unwrap()]].concat());
    assert_eq!(first.status.code(), Some(0));
    let again = bohr(&[&args[..], &["--witness", w.to_str().unwrap()]].concat());
    assert_eq!(stdout(&first), stdout(&again));
    let text = stdout(&first);
    assert!(text.contains("status: certified"));

    let poly = SignedHomPoly::from_witness(&fs::read_to_string(&w).unwrap()).unwrap();
    assert_eq!((poly.dim(), poly.degree()), (3, 2));
    let seed_line = text
        .lines()
        .find(|l| l.starts_with("witness: trial"))
        .unwrap();
    assert!(seed_line.ends_with(&format!("seed {}", poly.seed())));
}

#[test]
fn search_upper_high_dimension_is_uncertified() {
    let o = bohr(&["search-upper", "--n", "5", "--degree", "2", "--trials", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("status: uncertified"));
    assert!(!text.contains("best upper bound"));
}

#[test]
fn search_upper_rejects_coarse_grid() {
    let o = bohr(&[
        "search-upper",
        "--n",
        "2",
        "--degree",
        "2",
        "--grid-divisor",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn extremal_reports_radius() {
    let o = bohr(&["extremal", "--a", "0.5"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("5.0000000000000000e-1"));
    let o = bohr(&["extremal", "--a", "0.999"]);
    let text = stdout(&o);
    let gap: f64 = text
        .lines()
        .find_map(|l| l.strip_prefix("gap to 1/3: "))
        .unwrap()
        .parse()
        .unwrap();
    assert!(gap > 0.0 && gap < 1e-3);
    for bad in ["0", "1", "-0.5"] {
        assert_eq!(
            bohr(&["extremal", "--a", bad]).status.code(),
            Some(2),
            "a = {bad}"
        );
    }
}
