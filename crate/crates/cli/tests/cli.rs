mod common;

use common::{eix, eix_env, stderr_str, stdout_str, write_file};
use eix_core::{estimate, simulate, EstimatorVariant, ModelKind, ModelSpec, Series};
use serde_json::Value;

#[test]
fn estimate_hand_example() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("hand.csv");
    write_file(&input, "1\n2\n3\n4\n");
    let out = eix(&[
        "estimate",
        "--input",
        input.to_str().unwrap(),
        "--block-length",
        "2",
        "--estimator",
        "b-dj",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr_str(&out));
    let v: Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    assert_eq!(v["theta"], 1.0);
    assert_eq!(v["theta_raw"], 2.0);
    assert_eq!(v["b"], 2);
    assert_eq!(v["k"], 2);
    assert_eq!(v["n"], 4);
}

#[test]
fn roundtrip_simulate_then_estimate_is_exact() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sim.csv");
    let out = eix(&[
        "simulate", "--model", "armax", "--alpha", "0.5", "-n", "4096", "--seed", "11", "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));

    let out = eix(&["estimate", "--input", path.to_str().unwrap(), "-b", "64"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout_str(&out)).unwrap();

    let spec = ModelSpec::new(ModelKind::Armax { alpha: 0.5 }, 4096, 11).unwrap();
    let series = simulate(&spec).unwrap();
    let report = estimate(&series, 64, EstimatorVariant::B_SL).unwrap();
    assert_eq!(v["theta_raw"].as_f64().unwrap(), report.theta_raw);
}

#[test]
fn ingest_by_header_name_with_transform() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("prices.csv");
    let spec = ModelSpec::new(ModelKind::Clayton { vartheta: 0.5 }, 256, 4).unwrap();
    let uniforms = simulate(&spec).unwrap();
    let mut prices = vec![100.0];
    for u in uniforms.values() {
        prices.push(prices.last().unwrap() * (u - 0.5).exp());
    }
    let mut text = String::from("date,close\n");
    for (i, p) in prices.iter().enumerate() {
        text.push_str(&format!("2024-{:02}-{:02},{p}\n", 1 + i / 28, 1 + i % 28));
    }
    write_file(&input, &text);

    let out = eix(&[
        "estimate",
        "--input",
        input.to_str().unwrap(),
        "--column",
        "close",
        "--header",
        "--transform",
        "neg-log-returns",
        "-b",
        "8",
        "--estimator",
        "b-dj",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr_str(&out));
    let v: Value = serde_json::from_str(&stdout_str(&out)).unwrap();

    let returns: Vec<f64> = prices.windows(2).map(|w| (w[0] / w[1]).ln()).collect();
    let series = Series::new(returns).unwrap();
    let report = estimate(&series, 8, EstimatorVariant::B_DJ).unwrap();
    assert_eq!(v["theta_raw"].as_f64().unwrap(), report.theta_raw);
    assert_eq!(v["n"].as_u64().unwrap() as usize, 256);
}

#[test]
fn missing_column_names_it_and_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("prices.csv");
    write_file(&input, "date,open\n2024-01-01,100\n2024-01-02,90\n");
    let out = eix(&[
        "estimate", "--input", input.to_str().unwrap(), "--column", "close", "--header", "-b", "2",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_str(&out).contains("close"));

    // name without --header is also a data error naming the column
    let out = eix(&["estimate", "--input", input.to_str().unwrap(), "--column", "close", "-b", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_str(&out).contains("close"));
}

#[test]
fn blank_lines_and_date_column_tolerated() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("dated.csv");
    write_file(&input, "2024-01-01,1\n\n2024-01-02,2\n2024-01-03,3\n\n2024-01-04,4\n");
    let out = eix(&[
        "estimate", "--input", input.to_str().unwrap(), "--column", "1", "-b", "2", "--estimator",
        "b-dj",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr_str(&out));
    let v: Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    assert_eq!(v["theta_raw"], 2.0);
}

#[test]
fn nonpositive_prices_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("bad.csv");
    write_file(&input, "100\n-3\n90\n80\n");
    let out = eix(&[
        "estimate", "--input", input.to_str().unwrap(), "--transform", "neg-log-returns", "-b", "2",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_str(&out).contains("positive"));
}

#[test]
fn constant_series_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("const.csv");
    write_file(&input, "5\n5\n5\n5\n5\n5\n5\n5\n");
    let out = eix(&["estimate", "--input", input.to_str().unwrap(), "-b", "2"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn sweep_emits_valid_rows_and_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sim.csv");
    eix(&[
        "simulate", "--model", "armax", "--alpha", "0.25", "-n", "1024", "--seed", "21", "--out",
        path.to_str().unwrap(),
    ]);

    let run = || eix(&["sweep", "--input", path.to_str().unwrap(), "--blocks", "16..64"]);
    let first = run();
    assert_eq!(first.status.code(), Some(0));
    let text = stdout_str(&first);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "b,theta_bc,ci_lo,ci_hi,theta_raw");
    assert_eq!(lines.len(), 1 + 49);
    for line in &lines[1..] {
        let theta_bc: f64 = line.split(',').nth(1).unwrap().parse().unwrap();
        assert!((0.0..=1.0).contains(&theta_bc));
    }
    assert_eq!(first.stdout, run().stdout);
}

#[test]
fn sweep_warns_and_skips_oversized_blocks() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sim.csv");
    eix(&[
        "simulate", "--model", "armax", "--alpha", "0.25", "-n", "1024", "--seed", "22", "--out",
        path.to_str().unwrap(),
    ]);
    let out = eix(&["sweep", "--input", path.to_str().unwrap(), "--blocks", "500..600"]);
    assert_eq!(out.status.code(), Some(0));
    // n/2 = 512, so 500..=512 stay and 513..=600 drop
    assert_eq!(stdout_str(&out).lines().count(), 1 + 13);
    assert!(stderr_str(&out).contains("skipped 88"));
}

#[test]
fn simulate_matches_documented_behavior() {
    let a = eix(&["simulate", "--model", "armax", "--alpha", "0.5", "-n", "100", "--seed", "7"]);
    let b = eix(&["simulate", "--model", "armax", "--alpha", "0.5", "-n", "100", "--seed", "7"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(stdout_str(&a).lines().count(), 100);

    let out = eix(&["simulate", "--model", "sq-arch", "--lambda", "0.5", "-n", "8192", "--seed", "1"]);
    let values: Vec<f64> = stdout_str(&out).lines().map(|l| l.parse().unwrap()).collect();
    assert_eq!(values.len(), 8192);
    assert!(values.iter().all(|&v| v > 0.0));

    let out = eix(&["simulate", "--model", "clayton", "--vartheta", "1.06", "-n", "10", "--seed", "1"]);
    let values: Vec<f64> = stdout_str(&out).lines().map(|l| l.parse().unwrap()).collect();
    assert_eq!(values.len(), 10);
    assert!(values.iter().all(|&v| v > 0.0 && v < 1.0));

    // seed is mandatory
    let out = eix(&["simulate", "--model", "armax", "--alpha", "0.5", "-n", "10"]);
    assert_eq!(out.status.code(), Some(2));
}

fn mc_args<'a>(prefix: &'a str, extra: &[&'a str]) -> Vec<&'a str> {
    let mut args = vec![
        "mc",
        "sweep",
        "--model",
        "armax",
        "--alpha",
        "0.75",
        "--reps",
        "200",
        "--master-seed",
        "3",
        "--n",
        "1024",
        "--blocks",
        "8,16,32",
        "--out-prefix",
        prefix,
    ];
    args.extend_from_slice(extra);
    args
}

#[test]
fn mc_smoke_run_has_finite_mse_and_ignores_worker_count() {
    let dir = tempfile::tempdir().unwrap();
    let prefix = dir.path().join("a");
    let prefix = prefix.to_str().unwrap();
    let out = eix(&mc_args(prefix, &[]));
    assert_eq!(out.status.code(), Some(0), "{}", stderr_str(&out));
    assert!(stdout_str(&out).contains("argmin-mse"));

    let json = std::fs::read_to_string(format!("{prefix}.json")).unwrap();
    let v: Value = serde_json::from_str(&json).unwrap();
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 4 * 3);
    assert!(rows.iter().all(|r| r["mse"].as_f64().unwrap().is_finite()));
    assert!(std::fs::metadata(format!("{prefix}.csv")).unwrap().len() > 0);

    // same bytes under --threads and EIX_THREADS overrides
    let prefix_b = dir.path().join("b");
    let prefix_b = prefix_b.to_str().unwrap();
    let out = eix(&mc_args(prefix_b, &["--threads", "2"]));
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        std::fs::read(format!("{prefix}.json")).unwrap(),
        std::fs::read(format!("{prefix_b}.json")).unwrap()
    );

    let prefix_c = dir.path().join("c");
    let prefix_c = prefix_c.to_str().unwrap();
    let out = eix_env(&mc_args(prefix_c, &[]), &[("EIX_THREADS", "3")]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        std::fs::read(format!("{prefix}.csv")).unwrap(),
        std::fs::read(format!("{prefix_c}.csv")).unwrap()
    );

    let out = eix_env(&mc_args(prefix_c, &[]), &[("EIX_THREADS", "many")]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn mc_reproduces_published_min_mse() {
    let dir = tempfile::tempdir().unwrap();
    let prefix = dir.path().join("t1");
    let out = eix(&[
        "mc",
        "sweep",
        "--model",
        "armax",
        "--alpha",
        "0.25",
        "--reps",
        "2000",
        "--master-seed",
        "41",
        "--estimators",
        "n-sl",
        "--out-prefix",
        prefix.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr_str(&out));
    let text = stdout_str(&out);
    let line = text.lines().find(|l| l.starts_with("argmin-mse n-sl:")).unwrap();
    let scaled: f64 = line.rsplit_once('=').unwrap().1.parse().unwrap();
    assert!((0.54..=0.80).contains(&scaled), "min mse*1e3 = {scaled}");
}
