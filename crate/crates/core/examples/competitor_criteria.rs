//! BIC, Cp, GCV and 10-fold CV against PASS on the same dataset and path.

use passreg::model::{center_data, default_grid, Dataset, FitOptions, PenaltySpec};
use passreg::seed::rng_from_seed;
use passreg::selection::{
    final_model_from_fit, kfold_cv_select, ols_noise_variance, pass_score, CriterionScore, PathSummary,
};
use passreg::simbench::{gen_ar1_design, gen_response, TrueModel};

fn main() -> anyhow::Result<()> {
    let model = TrueModel::new(vec![3.0, 2.0, 1.5, 0.1, 0.08, 0.06, 0.04, 0.02], 0.5, 1.0)?;
    let mut rng = rng_from_seed(11);
    let x = gen_ar1_design(40, 8, 0.5, &mut rng);
    let y = gen_response(&x, &model, &mut rng)?;
    let (data, _) = center_data(&Dataset::new(x, y)?)?;

    let penalty = PenaltySpec::scad();
    let grid = default_grid();
    let opts = FitOptions::default();
    let path = PathSummary::compute(&data, &penalty, &grid, &opts)?;

    let scores: Vec<CriterionScore> = vec![
        (&pass_score(&data, &penalty, &grid, 20, &opts, 1)?).into(),
        path.bic()?,
        path.cp(ols_noise_variance(&data)?)?,
        path.gcv()?,
        kfold_cv_select(&data, &penalty, &grid, 10, &opts, 2)?,
    ];
    for s in &scores {
        let fm = final_model_from_fit(&data, path.fits[s.index_hat].clone(), opts.zero_tol)?;
        println!("{:<5} lambda {:>8.4}  support {}", s.criterion, s.lambda_hat, fm.support);
    }
    Ok(())
}
