use std::path::Path;
use std::process::Command;

use passreg::cli::{parse_args, read_input, run_select, run_simulate, ColumnRef, Mode, OutputFormat};
use passreg::model::PenaltyKind;
use passreg::selection::Criterion;
use passreg::simbench::{gen_ar1_design, read_summary_csv};
use rand::SeedableRng;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_passreg"))
}

fn write_csv(path: &Path, header: &[&str], rows: &[Vec<f64>]) {
    let mut s = header.join(",") + "\n";
    for r in rows {
        let cells: Vec<String> = r.iter().map(|v| v.to_string()).collect();
        s += &(cells.join(",") + "\n");
    }
    std::fs::write(path, s).unwrap();
}

/// Scenario I design with y = X beta exactly, predictors named x1..x8.
fn noiseless_scenario_one(path: &Path) {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(40);
    let x = gen_ar1_design(40, 8, 0.5, &mut rng);
    let beta = [3.0, 1.5, 0.0, 0.0, 2.0, 0.0, 0.0, 0.0];
    let rows: Vec<Vec<f64>> = (0..40)
        .map(|i| {
            let xi: Vec<f64> = (0..8).map(|j| x[(i, j)]).collect();
            let y: f64 = xi.iter().zip(beta).map(|(a, b)| a * b).sum::<f64>() + 10.0;
            std::iter::once(y).chain(xi).collect()
        })
        .collect();
    write_csv(path, &["y", "x1", "x2", "x3", "x4", "x5", "x6", "x7", "x8"], &rows);
}

#[test]
fn parses_simulate_example() {
    let cfg = parse_args(["passreg", "simulate", "--scenario", "I", "--n", "40", "--seed", "7"]).unwrap();
    assert_eq!(cfg.seed, 7);
    assert_eq!(cfg.b, 20);
    assert_eq!(cfg.criteria, vec![Criterion::Pass]);
    match cfg.mode {
        Mode::Simulate { scenario, n, .. } => {
            assert_eq!(scenario.as_deref(), Some("I"));
            assert_eq!(n, Some(40));
        }
        _ => panic!("wrong mode"),
    }
}

#[test]
fn parses_select_example_with_default_grid() {
    let cfg = parse_args([
        "passreg", "select", "--input", "data.csv", "--response", "y", "--penalty", "lasso", "--criterion", "pass,bic",
    ])
    .unwrap();
    assert_eq!(cfg.criteria, vec![Criterion::Pass, Criterion::Bic]);
    assert_eq!(cfg.penalties, vec![PenaltyKind::Lasso]);
    assert_eq!(cfg.format, OutputFormat::Table);
    let grid = cfg.grid.values();
    assert_eq!(grid.len(), 100);
    assert!((grid[0] - 1e-2).abs() < 1e-15 && (grid[99] - 1e2).abs() < 1e-10);
    assert!((grid[1] - 10f64.powf(-2.0 + 4.0 / 99.0)).abs() < 1e-15);
    match cfg.mode {
        Mode::Select { response, .. } => assert_eq!(response, ColumnRef::Name("y".into())),
        _ => panic!("wrong mode"),
    }
    let d = parse_args(["passreg", "select", "--input", "d.csv", "--response", "0"]).unwrap();
    assert_eq!(d.penalties, vec![PenaltyKind::Scad]);
    assert!(matches!(d.mode, Mode::Select { response: ColumnRef::Index(0), .. }));
}

#[test]
fn usage_errors_name_the_flag() {
    let e = parse_args(["passreg", "select", "--input", "a.csv", "--response", "y", "--frobnicate"]).unwrap_err();
    assert!(e.to_string().contains("--frobnicate"));
    let e = parse_args(["passreg", "select", "--input", "a.csv", "--response", "y", "--b", "many"]).unwrap_err();
    assert!(e.to_string().contains("--b"));
    let e = parse_args(["passreg", "select", "--response", "y"]).unwrap_err();
    assert!(e.to_string().contains("--input"));
    let e = parse_args(["passreg", "select", "--input", "a", "--response", "y", "--grid-count", "0"]).unwrap_err();
    assert!(e.to_string().contains("--grid-count"));
    let e = parse_args(["passreg", "select", "--input", "a", "--response", "y", "--criterion", "aic"]).unwrap_err();
    assert!(e.to_string().contains("--criterion"));
    assert!(parse_args(["passreg", "simulate"]).is_err());
}

#[test]
fn noiseless_select_reports_true_support_names() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("noiseless.csv");
    noiseless_scenario_one(&path);
    let cfg = parse_args([
        "passreg",
        "select",
        "--input",
        path.to_str().unwrap(),
        "--response",
        "y",
        "--criterion",
        "pass,bic",
        "--format",
        "csv",
    ])
    .unwrap();
    let mut out = Vec::new();
    run_select(&cfg, &mut out, &mut Vec::new()).unwrap();
    let text = String::from_utf8(out).unwrap();
    let mut rdr = csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(text.as_bytes());
    for crit in ["PASS", "BIC"] {
        let coefs: Vec<(String, f64)> = rdr
            .records()
            .map(|r| r.unwrap())
            .filter(|r| &r[0] == crit && &r[2] == "coefficient")
            .map(|r| (r[3].to_string(), r[5].parse().unwrap()))
            .collect();
        let names: Vec<&str> = coefs.iter().map(|(n, _)| n.as_str()).collect();
        assert_eq!(names, ["(intercept)", "x1", "x2", "x5"], "{crit}");
        for ((_, v), want) in coefs.iter().zip([10.0, 3.0, 1.5, 2.0]) {
            assert!((v - want).abs() < 1e-8);
        }
        rdr = csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(text.as_bytes());
    }
    assert!(text.contains("centered scale"));
    assert!(text.contains("seed=1"));
}

#[test]
fn table_output_lists_trace() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("noiseless.csv");
    noiseless_scenario_one(&path);
    let out = bin()
        .args(["select", "--input", path.to_str().unwrap(), "--response", "0", "--grid-count", "12"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("support     {x1, x2, x5}"), "{text}");
    assert!(text.contains("kappa_sum"));
    let trace: Vec<&str> = text.lines().skip_while(|l| *l != "trace:").skip(2).collect();
    assert_eq!(trace.len(), 12);
}

#[test]
fn constant_column_is_rejected_by_name() {
    let rows: Vec<Vec<f64>> = (0..10).map(|i| vec![i as f64, 2.0, (i * i) as f64 % 7.0]).collect();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.csv");
    write_csv(&path, &["y", "flat", "z"], &rows);
    let out = bin().args(["select", "--input", path.to_str().unwrap(), "--response", "y"]).output().unwrap();
    assert!(!out.status.success());
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("'flat'") && err.contains("constant"), "{err}");
}

#[test]
fn malformed_inputs_fail() {
    let bad = "y,a,b\n1,2,3\n4,oops,6\n7,8,9\n1,5,2\n3,3,1\n";
    let err = read_input(bad.as_bytes(), &ColumnRef::Name("y".into())).unwrap_err();
    assert!(format!("{err:#}").contains("oops"));
    let short = "y,a\n1,2\n2,1\n3,5\n";
    let err = read_input(short.as_bytes(), &ColumnRef::Index(0)).unwrap_err();
    assert!(format!("{err:#}").contains("at least 4"));
    let err = read_input(short.as_bytes(), &ColumnRef::Name("w".into())).unwrap_err();
    assert!(format!("{err:#}").contains("'w'"));

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.csv");
    std::fs::write(&path, bad).unwrap();
    let out = bin().args(["select", "--input", path.to_str().unwrap(), "--response", "y"]).output().unwrap();
    assert!(!out.status.success());
}

#[test]
fn same_seed_gives_identical_files() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("in.csv");
    noiseless_scenario_one(&input);
    let run = |name: &str, args: &[&str]| {
        let out = dir.path().join(name);
        let status = bin().args(args).args(["--output", out.to_str().unwrap()]).status().unwrap();
        assert!(status.success());
        std::fs::read(out).unwrap()
    };
    let sel = ["select", "--input", input.to_str().unwrap(), "--response", "y", "--criterion", "all", "--format", "csv"];
    assert_eq!(run("a.csv", &sel), run("b.csv", &sel));
    let sim = ["simulate", "--scenario", "I-40", "--replicates", "3", "--b", "5", "--seed", "9", "--format", "csv"];
    assert_eq!(run("c.csv", &sim), run("d.csv", &sim));
}

#[test]
fn simulate_csv_round_trips_and_echoes_config() {
    let cfg = parse_args([
        "passreg", "simulate", "--scenario", "I", "--n", "40", "--replicates", "1", "--seed", "1", "--criterion",
        "all", "--format", "csv",
    ])
    .unwrap();
    let mut out = Vec::new();
    let ok = run_simulate(&cfg, &mut out, &mut Vec::new()).unwrap();
    assert!(ok);
    let text = String::from_utf8(out.clone()).unwrap();
    assert!(text.starts_with("# passreg simulate scenario=I-40"));
    assert!(text.contains("seed=1") && text.contains("replicates=1") && text.contains("b=20"));
    let records = read_summary_csv(&out[..]).unwrap();
    assert_eq!(records.len(), 15);
    assert!(records.iter().all(|r| r.completed == 1 && r.failed == 0));
}

#[test]
fn custom_model_and_replicate_records() {
    let dir = tempfile::tempdir().unwrap();
    let reps = dir.path().join("reps.csv");
    let out = bin()
        .args(["simulate", "--beta", "2,0,0,-1", "--rho", "0.3", "--n", "30", "--replicates", "2"])
        .args(["--b", "4", "--penalty", "lasso,scad", "--replicate-output", reps.to_str().unwrap()])
        .env("PASSREG_THREADS", "2")
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("scenario=custom") && stdout.contains("beta=(2,0,0,-1)"));
    let text = std::fs::read_to_string(reps).unwrap();
    let header = text.lines().find(|l| !l.starts_with('#')).unwrap();
    assert_eq!(header, "scenario,criterion,penalty,replicate,lambda_hat,size,exact_match,c,i,rpe");
    assert_eq!(text.lines().filter(|l| l.starts_with("custom,")).count(), 4);
}

#[test]
fn unknown_preset_fails() {
    let out = bin().args(["simulate", "--scenario", "IV-10", "--replicates", "1"]).output().unwrap();
    assert!(!out.status.success());
    assert!(String::from_utf8(out.stderr).unwrap().contains("IV-10"));
}
