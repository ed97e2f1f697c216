//! LASSO path on a simulated AR(1) design, solved from the largest lambda
//! down with warm starts. Prints the active set as it grows.

use passreg::model::{active_set, center_data, fit_path, log_grid, Dataset, FitOptions, PenaltySpec, Solver};
use passreg::seed::rng_from_seed;
use passreg::simbench::{gen_ar1_design, gen_response, TrueModel};

fn main() -> anyhow::Result<()> {
    let model = TrueModel::new(vec![3.0, 1.5, 0.0, 0.0, 2.0, 0.0, 0.0, 0.0], 0.5, 1.0)?;
    let mut rng = rng_from_seed(3);
    let x = gen_ar1_design(60, 8, 0.5, &mut rng);
    let y = gen_response(&x, &model, &mut rng)?;
    let (data, _) = center_data(&Dataset::new(x, y)?)?;

    let grid = log_grid(-2.0, 1.0, 25);
    let opts = FitOptions::default();
    let path = fit_path(&data, &PenaltySpec::lasso(), &grid, &opts)?;
    let solver = Solver::new(&data, &PenaltySpec::lasso())?;

    println!("{:>10}  {:>5}  {:>10}  support", "lambda", "size", "kkt");
    for fit in path.iter().rev() {
        let support = active_set(fit, opts.zero_tol);
        println!(
            "{:>10.4}  {:>5}  {:>10.2e}  {}",
            fit.lambda,
            support.len(),
            solver.kkt_violation(fit.lambda, &fit.beta),
            support
        );
    }
    Ok(())
}
