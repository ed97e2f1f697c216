//! Prediction and stability selection (PASS).
//!
//! For each of `B` random half splits, both halves are fit along the whole
//! lambda grid. At every lambda the two supports are compared with Cohen's
//! kappa and the cross-fitted split CV error is recorded. The score is
//!
//! ```text
//! PASS(lambda) = sum_b kappa_b(lambda) / sum_b CV_b(lambda)
//! ```
//!
//! (a ratio of sums, not a mean of ratios) and the selected lambda maximizes it.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::model::{active_set, validate_grid, Dataset, FitOptions, PenaltySpec, Solver};
use crate::seed::{derive_seed, rng_from_seed};
use crate::selection::kappa::cohens_kappa;
use crate::selection::split::{cv_error, random_half_split};

/// Default number of random half splits.
pub const DEFAULT_PARTITIONS: usize = 20;

/// Per-lambda kappa and split CV values from one half split.
#[derive(Debug, Clone, PartialEq)]
pub struct PartitionOutcome {
    pub kappa: Vec<f64>,
    pub cv: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PassResult {
    pub grid: Vec<f64>,
    pub kappa_sum: Vec<f64>,
    pub cv_sum: Vec<f64>,
    /// `kappa_sum / cv_sum`; NaN where `cv_sum` is zero (such lambdas are never selected).
    pub score: Vec<f64>,
    pub lambda_hat: f64,
    /// Position of `lambda_hat` in `grid`.
    pub index_hat: usize,
    pub b_used: usize,
}

/// Runs one half split: fits both halves along `grid` and scores every lambda.
pub fn evaluate_partition(
    data: &Dataset,
    penalty: &PenaltySpec,
    grid: &[f64],
    opts: &FitOptions,
    seed: u64,
) -> Result<PartitionOutcome> {
    let mut rng = rng_from_seed(seed);
    let split = random_half_split(data.n(), &mut rng)?;
    let path1 = Solver::new(&data.subset(&split.first)?, penalty)?.path(grid, opts)?;
    let path2 = Solver::new(&data.subset(&split.second)?, penalty)?.path(grid, opts)?;
    let mut kappa = Vec::with_capacity(grid.len());
    let mut cv = Vec::with_capacity(grid.len());
    for (b1, b2) in path1.iter().zip(&path2) {
        kappa.push(cohens_kappa(
            &active_set(b1, opts.zero_tol),
            &active_set(b2, opts.zero_tol),
        )?);
        cv.push(cv_error(data, &split, b1, b2)?);
    }
    Ok(PartitionOutcome { kappa, cv })
}

/// Sums partition outcomes and selects the maximizing lambda.
///
/// Ties go to the largest lambda. Lambdas whose summed CV error is zero are
/// excluded. Fails when every split is degenerate (kappa = -1) at every
/// lambda, or when no lambda has a usable score.
pub fn aggregate_partitions(grid: &[f64], outcomes: &[PartitionOutcome]) -> Result<PassResult> {
    if outcomes.is_empty() {
        return Err(Error::InvalidInput("PASS needs at least one partition".into()));
    }
    let g = grid.len();
    if let Some(bad) = outcomes.iter().find(|o| o.kappa.len() != g || o.cv.len() != g) {
        return Err(Error::DimensionMismatch {
            expected: g,
            found: bad.kappa.len().min(bad.cv.len()),
        });
    }
    let mut kappa_sum = vec![0.0; g];
    let mut cv_sum = vec![0.0; g];
    for o in outcomes {
        for k in 0..g {
            kappa_sum[k] += o.kappa[k];
            cv_sum[k] += o.cv[k];
        }
    }
    let all_degenerate = outcomes.iter().all(|o| o.kappa.iter().all(|&k| k == -1.0));
    if all_degenerate {
        return Err(Error::SelectionFailed(
            "every split selected an empty or full model at every lambda".into(),
        ));
    }
    let score: Vec<f64> = kappa_sum
        .iter()
        .zip(&cv_sum)
        .map(|(k, c)| if *c > 0.0 { k / c } else { f64::NAN })
        .collect();
    let index_hat = arg_best(grid, &score, |a, b| a > b)
        .ok_or_else(|| Error::SelectionFailed("no lambda has a positive split CV error".into()))?;
    Ok(PassResult {
        grid: grid.to_vec(),
        kappa_sum,
        cv_sum,
        score,
        lambda_hat: grid[index_hat],
        index_hat,
        b_used: outcomes.len(),
    })
}

/// Index of the best finite-or-infinite, non-NaN value under `better`;
/// ties are resolved toward the largest lambda.
pub(crate) fn arg_best(grid: &[f64], values: &[f64], better: impl Fn(f64, f64) -> bool) -> Option<usize> {
    let mut best: Option<usize> = None;
    for (k, &v) in values.iter().enumerate() {
        if v.is_nan() {
            continue;
        }
        best = match best {
            None => Some(k),
            Some(b) => {
                let bv = values[b];
                if better(v, bv) || (v == bv && grid[k] > grid[b]) {
                    Some(k)
                } else {
                    Some(b)
                }
            }
        };
    }
    best
}

/// PASS over `b` random half splits. Split `i` draws from substream `i` of `seed`,
/// so the result does not depend on how the splits are scheduled.
pub fn pass_score(
    data: &Dataset,
    penalty: &PenaltySpec,
    grid: &[f64],
    b: usize,
    opts: &FitOptions,
    seed: u64,
) -> Result<PassResult> {
    if b == 0 {
        return Err(Error::InvalidInput("PASS needs b >= 1".into()));
    }
    validate_grid(grid)?;
    if data.n() < 4 {
        return Err(Error::InvalidInput(format!("PASS needs n >= 4, got {}", data.n())));
    }
    let outcomes: Vec<PartitionOutcome> = (0..b)
        .into_par_iter()
        .map(|i| evaluate_partition(data, penalty, grid, opts, derive_seed(seed, i as u64)))
        .collect::<Result<_>>()?;
    aggregate_partitions(grid, &outcomes)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn outcome(kappa: &[f64], cv: &[f64]) -> PartitionOutcome {
        PartitionOutcome {
            kappa: kappa.to_vec(),
            cv: cv.to_vec(),
        }
    }

    #[test]
    fn ratio_arithmetic() {
        let grid = [0.1, 1.0];
        let r = aggregate_partitions(&grid, &[outcome(&[1.0, 0.0], &[2.0, 1.0]), outcome(&[1.0, 0.0], &[2.0, 1.0])])
            .unwrap();
        assert_eq!(r.score[0], 0.5);
        assert_eq!(r.lambda_hat, 0.1);
        assert_eq!(r.b_used, 2);
    }

    #[test]
    fn ties_prefer_largest_lambda() {
        let grid = [0.1, 1.0, 0.5];
        let r = aggregate_partitions(&grid, &[outcome(&[1.0, 1.0, 1.0], &[2.0, 2.0, 2.0])]).unwrap();
        assert_eq!(r.lambda_hat, 1.0);
        assert_eq!(r.index_hat, 1);
    }

    #[test]
    fn all_degenerate_is_a_failure() {
        let grid = [0.1, 1.0];
        let err = aggregate_partitions(&grid, &[outcome(&[-1.0, -1.0], &[1.0, 1.0])]).unwrap_err();
        assert!(matches!(err, Error::SelectionFailed(_)));
    }

    #[test]
    fn zero_cv_lambda_is_skipped() {
        let grid = [0.1, 1.0];
        let r = aggregate_partitions(&grid, &[outcome(&[1.0, 0.2], &[0.0, 1.0])]).unwrap();
        assert!(r.score[0].is_nan());
        assert_eq!(r.lambda_hat, 1.0);
        let err = aggregate_partitions(&grid, &[outcome(&[1.0, 0.2], &[0.0, 0.0])]).unwrap_err();
        assert!(matches!(err, Error::SelectionFailed(_)));
    }
}
