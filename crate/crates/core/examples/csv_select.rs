//! Selection on a CSV file through the command-line layer. Writes a small
//! dataset to a temporary file, then runs the equivalent of
//!
//! ```text
//! passreg select --input data.csv --response y --penalty lasso,scad --criterion pass,bic --format csv
//! ```

use std::io::Write;

use passreg::cli::{parse_args, run_select};
use passreg::seed::rng_from_seed;
use passreg::simbench::gen_ar1_design;
use rand::Rng;
use rand_distr::StandardNormal;

fn main() -> anyhow::Result<()> {
    let mut rng = rng_from_seed(5);
    let x = gen_ar1_design(50, 5, 0.3, &mut rng);
    let path = std::env::temp_dir().join("passreg_example.csv");
    let mut f = std::fs::File::create(&path)?;
    writeln!(f, "age,dose,weight,noise1,noise2,y")?;
    for i in 0..50 {
        let e: f64 = rng.sample(StandardNormal);
        let y = 1.0 + 2.0 * x[(i, 0)] - 1.5 * x[(i, 2)] + 0.5 * e;
        let row: Vec<String> = x.row(i).iter().map(|v| format!("{v:.6}")).collect();
        writeln!(f, "{},{y:.6}", row.join(","))?;
    }
    drop(f);

    let cfg = parse_args([
        "passreg",
        "select",
        "--input",
        path.to_str().unwrap(),
        "--response",
        "y",
        "--penalty",
        "lasso,scad",
        "--criterion",
        "pass,bic",
        "--grid-count",
        "30",
        "--format",
        "csv",
    ])?;
    let mut out = Vec::new();
    run_select(&cfg, &mut out, &mut std::io::stderr())?;
    for line in String::from_utf8(out)?.lines().filter(|l| !l.contains(",trace,") && !l.contains("_sum,")) {
        println!("{line}");
    }
    Ok(())
}
