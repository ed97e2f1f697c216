//! Competitor criteria evaluated on a full-data lambda path.
//!
//! * `BIC(l) = n log(RSS_l / n) + log(n) df_l`
//! * `Cp(l)  = RSS_l / sigma2 - n + 2 df_l`, with `sigma2` from the full OLS fit
//! * `GCV(l) = (RSS_l / n) / (1 - df_l / n)^2`, infinite when `df_l = n`
//! * k-fold CV: mean held-out squared error over seeded folds
//!
//! `df_l` is the number of nonzero coefficients. All criteria are minimized,
//! with ties resolved toward the largest lambda.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;

use crate::error::{Error, Result};
use crate::model::{
    active_set, ols_fit, validate_grid, Coefficients, Dataset, FitOptions, PenaltySpec, Solver, SupportSet,
};
use crate::seed::rng_from_seed;
use crate::selection::pass::{arg_best, PassResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Criterion {
    Pass,
    Bic,
    Cp,
    Cv,
    Gcv,
}

impl Criterion {
    /// Column order used in reports.
    pub const ALL: [Criterion; 5] = [Criterion::Pass, Criterion::Bic, Criterion::Cp, Criterion::Cv, Criterion::Gcv];

    pub fn label(self) -> &'static str {
        match self {
            Criterion::Pass => "PASS",
            Criterion::Bic => "BIC",
            Criterion::Cp => "Cp",
            Criterion::Cv => "CV",
            Criterion::Gcv => "GCV",
        }
    }

    /// Whether larger criterion values are better.
    pub fn maximizes(self) -> bool {
        matches!(self, Criterion::Pass)
    }
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.label())
    }
}

impl FromStr for Criterion {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "pass" => Ok(Criterion::Pass),
            "bic" => Ok(Criterion::Bic),
            "cp" => Ok(Criterion::Cp),
            "cv" | "kfold" | "10-fold" => Ok(Criterion::Cv),
            "gcv" => Ok(Criterion::Gcv),
            other => Err(Error::InvalidInput(format!("unknown criterion '{other}'"))),
        }
    }
}

/// A criterion trace over the grid and its optimum.
#[derive(Debug, Clone, PartialEq)]
pub struct CriterionScore {
    pub criterion: Criterion,
    pub grid: Vec<f64>,
    pub value: Vec<f64>,
    pub lambda_hat: f64,
    pub index_hat: usize,
}

impl CriterionScore {
    fn minimizing(criterion: Criterion, grid: &[f64], value: Vec<f64>) -> Result<Self> {
        let index_hat = arg_best(grid, &value, |a, b| a < b)
            .ok_or_else(|| Error::SelectionFailed(format!("{criterion} is undefined on the whole grid")))?;
        Ok(Self {
            criterion,
            grid: grid.to_vec(),
            value,
            lambda_hat: grid[index_hat],
            index_hat,
        })
    }
}

impl From<&PassResult> for CriterionScore {
    fn from(r: &PassResult) -> Self {
        Self {
            criterion: Criterion::Pass,
            grid: r.grid.clone(),
            value: r.score.clone(),
            lambda_hat: r.lambda_hat,
            index_hat: r.index_hat,
        }
    }
}

/// Full-data fits along the grid with their residual sums of squares and
/// active-set sizes.
#[derive(Debug, Clone)]
pub struct PathSummary {
    pub grid: Vec<f64>,
    pub fits: Vec<Coefficients>,
    pub rss: Vec<f64>,
    pub df: Vec<usize>,
    pub n: usize,
}

impl PathSummary {
    pub fn compute(data: &Dataset, penalty: &PenaltySpec, grid: &[f64], opts: &FitOptions) -> Result<Self> {
        let fits = Solver::new(data, penalty)?.path(grid, opts)?;
        let rss = fits.iter().map(|f| data.rss(&f.beta)).collect();
        let df = fits.iter().map(|f| active_set(f, opts.zero_tol).len()).collect();
        Ok(Self {
            grid: grid.to_vec(),
            fits,
            rss,
            df,
            n: data.n(),
        })
    }

    pub fn bic(&self) -> Result<CriterionScore> {
        let n = self.n as f64;
        let value = self
            .rss
            .iter()
            .zip(&self.df)
            .map(|(rss, df)| n * (rss / n).ln() + n.ln() * *df as f64)
            .collect();
        CriterionScore::minimizing(Criterion::Bic, &self.grid, value)
    }

    pub fn cp(&self, sigma2: f64) -> Result<CriterionScore> {
        if !(sigma2 > 0.0 && sigma2.is_finite()) {
            return Err(Error::InvalidInput(format!("Cp needs a positive noise variance, got {sigma2}")));
        }
        let n = self.n as f64;
        let value = self
            .rss
            .iter()
            .zip(&self.df)
            .map(|(rss, df)| rss / sigma2 - n + 2.0 * *df as f64)
            .collect();
        CriterionScore::minimizing(Criterion::Cp, &self.grid, value)
    }

    pub fn gcv(&self) -> Result<CriterionScore> {
        let n = self.n as f64;
        let value = self
            .rss
            .iter()
            .zip(&self.df)
            .map(|(rss, &df)| {
                if df >= self.n {
                    f64::INFINITY
                } else {
                    (rss / n) / (1.0 - df as f64 / n).powi(2)
                }
            })
            .collect();
        CriterionScore::minimizing(Criterion::Gcv, &self.grid, value)
    }
}

/// `RSS / (n - p)` of the full OLS fit.
pub fn ols_noise_variance(data: &Dataset) -> Result<f64> {
    if data.n() <= data.p() {
        return Err(Error::InvalidInput(format!(
            "Cp needs n > p to estimate the noise variance (n = {}, p = {})",
            data.n(),
            data.p()
        )));
    }
    let ols = ols_fit(data, &SupportSet::full(data.p()))?;
    Ok(data.rss(&ols.beta) / (data.n() - data.p()) as f64)
}

pub fn bic_select(data: &Dataset, penalty: &PenaltySpec, grid: &[f64], opts: &FitOptions) -> Result<CriterionScore> {
    PathSummary::compute(data, penalty, grid, opts)?.bic()
}

pub fn cp_select(data: &Dataset, penalty: &PenaltySpec, grid: &[f64], opts: &FitOptions) -> Result<CriterionScore> {
    let sigma2 = ols_noise_variance(data)?;
    PathSummary::compute(data, penalty, grid, opts)?.cp(sigma2)
}

pub fn gcv_select(data: &Dataset, penalty: &PenaltySpec, grid: &[f64], opts: &FitOptions) -> Result<CriterionScore> {
    PathSummary::compute(data, penalty, grid, opts)?.gcv()
}

/// Row indices of each of `k` near-equal folds drawn from a seeded shuffle.
pub fn kfold_assignment(n: usize, k: usize, seed: u64) -> Result<Vec<Vec<usize>>> {
    if k < 2 || k > n {
        return Err(Error::InvalidInput(format!(
            "k-fold CV needs 2 <= k <= n (k = {k}, n = {n}); some fold would be empty"
        )));
    }
    let mut idx: Vec<usize> = (0..n).collect();
    idx.shuffle(&mut rng_from_seed(seed));
    let mut folds = vec![Vec::new(); k];
    for (pos, i) in idx.into_iter().enumerate() {
        folds[pos % k].push(i);
    }
    for f in &mut folds {
        f.sort_unstable();
    }
    Ok(folds)
}

/// k-fold cross-validation: for each fold, fit the path on the other folds
/// and accumulate held-out squared error; the trace is the total over `n`.
pub fn kfold_cv_select(
    data: &Dataset,
    penalty: &PenaltySpec,
    grid: &[f64],
    k: usize,
    opts: &FitOptions,
    seed: u64,
) -> Result<CriterionScore> {
    validate_grid(grid)?;
    let folds = kfold_assignment(data.n(), k, seed)?;
    let mut sse = vec![0.0; grid.len()];
    for held in &folds {
        let train: Vec<usize> = (0..data.n()).filter(|i| held.binary_search(i).is_err()).collect();
        let path = Solver::new(&data.subset(&train)?, penalty)?.path(grid, opts)?;
        for (acc, fit) in sse.iter_mut().zip(&path) {
            *acc += held
                .iter()
                .map(|&i| {
                    let pred: f64 = data.x().row(i).iter().zip(&fit.beta).map(|(x, b)| x * b).sum();
                    (data.y()[i] - pred).powi(2)
                })
                .sum::<f64>();
        }
    }
    let n = data.n() as f64;
    let value = sse.into_iter().map(|s| s / n).collect();
    CriterionScore::minimizing(Criterion::Cv, grid, value)
}

/// The support of the penalized fit at the selected lambda and the OLS refit on it.
#[derive(Debug, Clone, PartialEq)]
pub struct FinalModel {
    pub fit: Coefficients,
    pub support: SupportSet,
    pub refit: Coefficients,
}

/// Refits OLS on the support of an existing penalized fit.
pub fn final_model_from_fit(data: &Dataset, fit: Coefficients, zero_tol: f64) -> Result<FinalModel> {
    let support = active_set(&fit, zero_tol);
    let mut refit = ols_fit(data, &support)?;
    refit.lambda = fit.lambda;
    Ok(FinalModel { fit, support, refit })
}

/// Fits the full data at `lambda_hat`, extracts the support and refits OLS on it.
pub fn select_final_model(
    data: &Dataset,
    penalty: &PenaltySpec,
    lambda_hat: f64,
    opts: &FitOptions,
) -> Result<FinalModel> {
    let fit = Solver::new(data, penalty)?.fit(lambda_hat, opts, None)?;
    final_model_from_fit(data, fit, opts.zero_tol)
}
