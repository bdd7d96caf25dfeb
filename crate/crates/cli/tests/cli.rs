use std::collections::HashSet;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fracjump"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn report(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("json report")
}

fn check<'a>(r: &'a Value, name: &str) -> &'a Value {
    r["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == name)
        .unwrap_or_else(|| panic!("no check {name} in {r}"))
}

fn csv_points(text: &str) -> Vec<Vec<u32>> {
    text.lines()
        .map(|l| l.split(',').map(|v| v.parse().unwrap()).collect())
        .collect()
}

/// Jump of the companion of `T^p - T - c` by iterating the projective map.
fn naive_artin_schreier(p: u32, c: u32, x: &[u32]) -> Vec<u32> {
    let n = p as usize;
    let apply = |v: &[u32]| -> Vec<u32> {
        // subdiagonal ones, last column (c, 1, 0, ..., 0)
        (0..n)
            .map(|r| {
                let mut s = if r > 0 { v[r - 1] } else { 0 };
                if r == 0 {
                    s += c * v[n - 1];
                } else if r == 1 {
                    s += v[n - 1];
                }
                s % p
            })
            .collect()
    };
    let mut v: Vec<u32> = x.iter().copied().chain([1]).collect();
    loop {
        v = apply(&v);
        let last = v[n - 1];
        if last != 0 {
            let inv = (1..p).find(|t| t * last % p == 1).unwrap();
            return v[..n - 1].iter().map(|a| a * inv % p).collect();
        }
    }
}

#[test]
fn gen_full_orbit_p3() {
    let o = run(&["gen", "--as", "--p", "3", "--c", "1", "--count", "9", "--format", "csv"]);
    assert_eq!(code(&o), 0);
    let pts = csv_points(&stdout(&o));
    assert_eq!(pts.len(), 9);
    let distinct: HashSet<_> = pts.iter().cloned().collect();
    assert_eq!(distinct.len(), 9);
    assert_eq!(pts[8], vec![0, 0]);
    let mut x = vec![0, 0];
    for y in &pts {
        x = naive_artin_schreier(3, 1, &x);
        assert_eq!(&x, y);
    }
}

#[test]
fn gen_worked_example() {
    let o = run(&["gen", "--matrix", "3,2,1;3,3,1;0,3,4", "--p", "5", "--count", "2", "--seed", "0,0"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "4,4\n1,0\n");
}

#[test]
fn gen_count_zero_is_empty() {
    let o = run(&["gen", "--as", "--p", "3", "--c", "1", "--count", "0"]);
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
}

#[test]
fn gen_seed_shifts_phase() {
    let all = csv_points(&stdout(&run(&["gen", "--as", "--p", "5", "--c", "2", "--count", "20"])));
    let seed = all[9].iter().map(u32::to_string).collect::<Vec<_>>().join(",");
    let rest = csv_points(&stdout(&run(&[
        "gen", "--as", "--p", "5", "--c", "2", "--count", "10", "--seed", &seed,
    ])));
    assert_eq!(rest, all[10..]);
}

#[test]
fn gen_is_deterministic() {
    let args = ["gen", "--as", "--p", "5", "--c", "2", "--count", "625", "--format", "hex"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn raw_and_hex_round_trip_to_csv() {
    let base = ["gen", "--as", "--p", "7", "--c", "3", "--count", "500", "--format"];
    let csv = csv_points(&stdout(&run(&[&base[..], &["csv"]].concat())));
    let raw = run(&[&base[..], &["raw"]].concat()).stdout;
    assert_eq!(raw.len(), 500 * 6);
    let from_raw: Vec<Vec<u32>> = raw.chunks(6).map(|c| c.iter().map(|&b| b as u32).collect()).collect();
    assert_eq!(from_raw, csv);
    let hex = stdout(&run(&[&base[..], &["hex"]].concat()));
    let from_hex: Vec<Vec<u32>> = hex
        .lines()
        .map(|l| {
            assert_eq!(l.len(), 12);
            (0..6).map(|k| u32::from_str_radix(&l[2 * k..2 * k + 2], 16).unwrap()).collect()
        })
        .collect();
    assert_eq!(from_hex, csv);
}

#[test]
fn byte_formats_need_small_p() {
    let o = run(&["gen", "--as", "--p", "257", "--c", "1", "--count", "1", "--format", "raw"]);
    assert_eq!(code(&o), 2);
    let o = run(&["gen", "--as", "--p", "257", "--c", "1", "--count", "1", "--format", "hex"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        vec!["gen", "--as", "--p", "3", "--c", "3", "--count", "1"],
        vec!["gen", "--as", "--p", "4", "--c", "1", "--count", "1"],
        vec!["gen", "--as", "--p", "3", "--count", "1"],
        vec!["gen", "--as", "--p", "3", "--c", "1"],
        vec!["gen", "--as", "--p", "3", "--c", "1", "--count", "1", "--seed", "1,2,3"],
        vec!["gen", "--matrix", "1,2;3", "--p", "5", "--count", "1"],
        vec!["gen", "--matrix", "1,2;2,4", "--p", "5", "--count", "1"],
        vec!["primitive", "--p", "5", "--poly", "1,x"],
        vec!["primitive", "--p", "5", "--poly", "3"],
        vec!["bogus"],
    ] {
        assert_eq!(code(&run(&args)), 2, "{args:?}");
    }
}

#[test]
fn gate_failure_exits_3() {
    let o = run(&["gen", "--matrix", "1,0,0;0,1,0;0,0,1", "--p", "3", "--count", "1"]);
    assert_eq!(code(&o), 3);
    let o = run(&["verify", "oracle", "--p", "5", "--matrix", "1,1;0,1"]);
    assert_eq!(code(&o), 3);
    assert_eq!(report(&o)["exit"], 3);
}

#[test]
fn budget_exits_4_with_partial_report() {
    let o = run(&["verify", "full-orbit", "--as", "--p", "7", "--c", "1", "--max-points", "100"]);
    assert_eq!(code(&o), 4);
    let r = report(&o);
    assert_eq!(r["exit"], 4);
    assert_eq!(check(&r, "budget")["pass"], false);
    let o = run(&["search", "--p", "5", "--degree", "4", "--max-points", "10"]);
    assert_eq!(code(&o), 4);
    let o = run(&["verify", "classify", "--p", "3", "--n", "2", "--exhaustive", "--max-points", "1000"]);
    assert_eq!(code(&o), 4);
}

#[test]
fn verify_full_orbit() {
    let o = run(&["verify", "full-orbit", "--as", "--p", "5", "--c", "2"]);
    assert_eq!(code(&o), 0);
    let r = report(&o);
    assert_eq!(r["command"], "verify");
    assert_eq!(r["params"]["suite"], "full-orbit");
    assert_eq!(check(&r, "distinct")["pass"], true);
    assert!(check(&r, "period")["detail"].as_str().unwrap().contains("625"));
    let o = run(&["verify", "full-orbit", "--p", "5", "--matrix", "3,2,1;3,3,1;0,3,4"]);
    assert_eq!(code(&o), 0);
}

#[test]
fn verify_oracle() {
    let o = run(&["verify", "oracle", "--as", "--p", "5", "--c", "4"]);
    assert_eq!(code(&o), 0);
    let r = report(&o);
    assert_eq!(check(&r, "closed_form_vs_piecewise")["pass"], true);
    assert_eq!(check(&r, "piecewise_vs_direct")["pass"], true);
    let o = run(&["verify", "oracle", "--p", "5", "--matrix", "3,2,1;3,3,1;0,3,4"]);
    assert_eq!(code(&o), 0);
}

#[test]
fn verify_classify() {
    let o = run(&["verify", "classify", "--p", "3", "--n", "2", "--exhaustive"]);
    assert_eq!(code(&o), 0);
    let r = report(&o);
    assert_eq!(check(&r, "agreement")["detail"], "5616 classes, 0 exceptions");
    let o = run(&["verify", "classify", "--p", "5", "--n", "1", "--exhaustive"]);
    assert_eq!(code(&o), 0);
    assert_eq!(report(&o)["params"]["degenerate"], true);
    let args = ["verify", "classify", "--p", "5", "--n", "2", "--samples", "50"];
    let a = run(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, run(&args).stdout);
    assert!(report(&a)["params"]["rng_seed"].is_u64());
}

#[test]
fn verify_cost() {
    let o = run(&["verify", "cost", "--as", "--p", "3", "--c", "1"]);
    assert_eq!(code(&o), 0);
    let r = report(&o);
    assert_eq!(check(&r, "expected_cost")["detail"], "empirical 5 = formula 5");
    assert_eq!(check(&r, "census")["detail"], "[6, 2, 1]");
    let o = run(&["verify", "cost", "--as", "--p", "2", "--c", "1"]);
    assert_eq!(code(&o), 0);
}

#[test]
fn classify_reports_degenerate_translation() {
    let o = run(&["classify", "--p", "5", "--matrix", "1,1;0,1"]);
    assert_eq!(code(&o), 0);
    let r: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(r["n"], 1);
    assert_eq!(r["proj_transitive"], false);
    assert_eq!(r["affine_transitive"], true);
    assert_eq!(r["degenerate"], true);
    let o = run(&["classify", "--p", "5", "--matrix", "3,2,1;3,3,1;0,3,4"]);
    let r: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(r["proj_transitive"], true);
    assert_eq!(r["affine_transitive"], true);
}

#[test]
fn primitive_examples() {
    let o = run(&["primitive", "--p", "5", "--poly", "3,4,0,1"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("projective order: 31 of 31"));
    assert!(stdout(&o).contains("projectively primitive: yes"));
    let o = run(&["primitive", "--p", "5", "--poly", "3,0,1"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("projective order: 2 of 6"));
    assert!(stdout(&o).contains("irreducible: yes"));
    // T^7 - T - 3
    let o = run(&["primitive", "--p", "7", "--poly", "4,6,0,0,0,0,0,1"]);
    assert_eq!(code(&o), 0);
    let o = run(&["primitive", "--p", "5", "--poly", "0,1,1"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("irreducible: no"));
}

#[test]
fn search_examples() {
    let o = run(&["search", "--p", "5", "--degree", "3"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.lines().any(|l| l.starts_with("3,4,0,1\t")));
    assert_eq!(out.lines().count(), 40);
    let out = stdout(&run(&["search", "--p", "3", "--degree", "3"]));
    assert!(out.lines().any(|l| l == "2,2,0,1\tT^3 + 2T + 2"));
    let out = stdout(&run(&["search", "--p", "5", "--degree", "1"]));
    let got: Vec<&str> = out.lines().map(|l| l.split('\t').next().unwrap()).collect();
    assert_eq!(got, ["1,1", "2,1", "3,1", "4,1"]);
    let out = stdout(&run(&["search", "--p", "3", "--degree", "3", "--max-terms", "3"]));
    assert!(out.lines().all(|l| l.split('\t').next().unwrap().split(',').filter(|c| *c != "0").count() <= 3));
    assert!(out.lines().any(|l| l.starts_with("2,2,0,1\t")));
}

#[test]
fn bench_examples() {
    let out = stdout(&run(&["bench", "--as", "--p", "3", "--c", "1"]));
    assert!(out.contains("census: [6, 2, 1]"));
    assert!(out.contains("costs: [4, 6, 9]"));
    assert!(out.contains("E empirical: 5\n"));
    assert!(out.contains("E formula: 5\n"));
    let out = stdout(&run(&["bench", "--as", "--p", "5", "--c", "1"]));
    assert!(out.contains("costs: [6, 8, 10, 12, 15]"));
    let o = run(&["bench", "--as", "--p", "2", "--c", "1"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("census: [1, 1]"));
}
