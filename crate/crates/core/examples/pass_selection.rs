//! PASS on one simulated dataset: per-lambda kappa and split-CV sums, the
//! selected lambda and the OLS refit on its support.
//!
//! ```text
//! cargo run --release --example pass_selection -- scad 20
//! ```

use passreg::model::{center_data, default_grid, Dataset, FitOptions, PenaltyKind, PenaltySpec};
use passreg::seed::rng_from_seed;
use passreg::selection::{pass_score, select_final_model};
use passreg::simbench::{gen_ar1_design, gen_response, TrueModel};

fn main() -> anyhow::Result<()> {
    let mut args = std::env::args().skip(1);
    let kind: PenaltyKind = args.next().as_deref().unwrap_or("scad").parse()?;
    let b: usize = args.next().map(|s| s.parse()).transpose()?.unwrap_or(20);

    let model = TrueModel::new(vec![3.0, 1.5, 0.0, 0.0, 2.0, 0.0, 0.0, 0.0], 0.5, 1.0)?;
    let mut rng = rng_from_seed(2012);
    let x = gen_ar1_design(40, 8, 0.5, &mut rng);
    let y = gen_response(&x, &model, &mut rng)?;
    let (data, centering) = center_data(&Dataset::new(x, y)?)?;

    let penalty = PenaltySpec::from_kind(kind);
    let opts = FitOptions::default();
    let grid = default_grid();
    let res = pass_score(&data, &penalty, &grid, b, &opts, 7)?;

    println!("{kind}, B = {b}");
    println!("{:>10}  {:>9}  {:>9}  {:>8}", "lambda", "sum kappa", "sum CV", "PASS");
    for k in (0..grid.len()).step_by(9) {
        println!(
            "{:>10.4}  {:>9.3}  {:>9.3}  {:>8.4}",
            grid[k], res.kappa_sum[k], res.cv_sum[k], res.score[k]
        );
    }
    let fm = select_final_model(&data, &penalty, res.lambda_hat, &opts)?;
    println!("\nlambda_hat = {:.4}, support {}", res.lambda_hat, fm.support);
    println!("refit: {:?}", fm.refit.beta.iter().map(|b| (b * 1e3).round() / 1e3).collect::<Vec<_>>());
    println!("intercept on the raw scale: {:.4}", centering.intercept(&fm.refit.beta));
    Ok(())
}
