//! Replicated experiments and their aggregation.
//!
//! Replicate `r` draws its data from substream `r` of the master seed. Within
//! a replicate one dataset is shared by every (criterion, penalty) cell, and
//! the PASS splits and CV folds come from fixed substreams of the replicate
//! seed, so every penalty sees the same partitions.

use rayon::prelude::*;

use crate::error::Result;
use crate::model::{center_data, Coefficients, Dataset, PenaltyKind, PenaltySpec, SupportSet};
use crate::seed::{derive_seed, rng_from_seed};
use crate::selection::{final_model_from_fit, kfold_cv_select, ols_noise_variance, pass_score, Criterion, PathSummary};
use crate::simbench::design::{gen_ar1_design, gen_response, rpe, zero_counts};
use crate::simbench::scenario::ScenarioConfig;

const DATA_STREAM: u64 = 0;
const PASS_STREAM: u64 = 1;
const CV_STREAM: u64 = 2;

#[derive(Debug, Clone, PartialEq)]
pub struct CellMetrics {
    pub lambda_hat: f64,
    pub support: SupportSet,
    pub refit: Coefficients,
    pub rpe: f64,
    pub exact_match: bool,
    pub c_zeros: usize,
    pub i_zeros: usize,
    pub size: usize,
}

/// Outcome of one (criterion, penalty) cell in one replicate.
#[derive(Debug, Clone, PartialEq)]
pub struct CellResult {
    pub criterion: Criterion,
    pub penalty: PenaltyKind,
    pub outcome: std::result::Result<CellMetrics, String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReplicateResult {
    pub replicate: usize,
    pub cells: Vec<CellResult>,
}

impl ReplicateResult {
    pub fn cell(&self, criterion: Criterion, penalty: PenaltyKind) -> Option<&CellResult> {
        self.cells
            .iter()
            .find(|c| c.criterion == criterion && c.penalty == penalty)
    }
}

/// The centered dataset used by replicate `replicate_index`.
pub fn replicate_data(cfg: &ScenarioConfig, replicate_index: usize) -> Result<Dataset> {
    let seed = derive_seed(cfg.master_seed, replicate_index as u64);
    let mut rng = rng_from_seed(derive_seed(seed, DATA_STREAM));
    let x = gen_ar1_design(cfg.n, cfg.p(), cfg.true_model.rho(), &mut rng);
    let y = gen_response(&x, &cfg.true_model, &mut rng)?;
    let (centered, _) = center_data(&Dataset::new(x, y)?)?;
    Ok(centered)
}

fn metrics(
    data: &Dataset,
    cfg: &ScenarioConfig,
    fit: Coefficients,
) -> Result<CellMetrics> {
    let lambda_hat = fit.lambda;
    let model = final_model_from_fit(data, fit, cfg.opts.zero_tol)?;
    let truth = cfg.true_model.true_support();
    let (c_zeros, i_zeros) = zero_counts(&model.support, truth)?;
    Ok(CellMetrics {
        lambda_hat,
        rpe: rpe(&model.refit, &cfg.true_model)?,
        exact_match: &model.support == truth,
        c_zeros,
        i_zeros,
        size: model.support.len(),
        support: model.support,
        refit: model.refit,
    })
}

fn penalty_cells(data: &Dataset, cfg: &ScenarioConfig, kind: PenaltyKind, seed: u64) -> Vec<CellResult> {
    let penalty = PenaltySpec::from_kind(kind);
    let path = PathSummary::compute(data, &penalty, &cfg.grid, &cfg.opts);
    cfg.criteria
        .iter()
        .map(|&criterion| {
            let outcome = (|| -> Result<CellMetrics> {
                let path = path.as_ref().map_err(Clone::clone)?;
                let index = match criterion {
                    Criterion::Pass => {
                        pass_score(data, &penalty, &cfg.grid, cfg.b, &cfg.opts, derive_seed(seed, PASS_STREAM))?
                            .index_hat
                    }
                    Criterion::Bic => path.bic()?.index_hat,
                    Criterion::Cp => path.cp(ols_noise_variance(data)?)?.index_hat,
                    Criterion::Gcv => path.gcv()?.index_hat,
                    Criterion::Cv => {
                        kfold_cv_select(
                            data,
                            &penalty,
                            &cfg.grid,
                            cfg.cv_folds,
                            &cfg.opts,
                            derive_seed(seed, CV_STREAM),
                        )?
                        .index_hat
                    }
                };
                metrics(data, cfg, path.fits[index].clone())
            })()
            .map_err(|e| e.to_string());
            CellResult {
                criterion,
                penalty: kind,
                outcome,
            }
        })
        .collect()
}

/// Runs every configured (criterion, penalty) cell on one simulated dataset.
/// Cell failures are recorded, never propagated.
pub fn run_replicate(cfg: &ScenarioConfig, replicate_index: usize) -> ReplicateResult {
    let seed = derive_seed(cfg.master_seed, replicate_index as u64);
    let cells = match replicate_data(cfg, replicate_index) {
        Ok(data) => cfg
            .penalties
            .iter()
            .flat_map(|&kind| penalty_cells(&data, cfg, kind, seed))
            .collect(),
        Err(e) => {
            let msg = e.to_string();
            cfg.penalties
                .iter()
                .flat_map(|&penalty| cfg.criteria.iter().map(move |&criterion| (criterion, penalty)))
                .map(|(criterion, penalty)| CellResult {
                    criterion,
                    penalty,
                    outcome: Err(msg.clone()),
                })
                .collect()
        }
    };
    ReplicateResult {
        replicate: replicate_index,
        cells,
    }
}

/// All replicates, in replicate order, executed in parallel.
pub fn simulate(cfg: &ScenarioConfig) -> Result<Vec<ReplicateResult>> {
    cfg.validate()?;
    Ok((0..cfg.replicates)
        .into_par_iter()
        .map(|r| run_replicate(cfg, r))
        .collect())
}

/// Aggregated metrics for one (criterion, penalty) cell.
#[derive(Debug, Clone, PartialEq)]
pub struct CellSummary {
    pub criterion: Criterion,
    pub penalty: PenaltyKind,
    /// Replicates that produced metrics.
    pub completed: usize,
    pub failed: usize,
    pub pct: f64,
    pub mean_rpe: f64,
    pub mean_c: f64,
    pub mean_i: f64,
    pub mean_size: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SummaryTable {
    pub scenario: String,
    pub n: usize,
    pub p: usize,
    pub true_size: usize,
    pub replicates: usize,
    pub master_seed: u64,
    pub cells: Vec<CellSummary>,
}

impl SummaryTable {
    pub fn cell(&self, criterion: Criterion, penalty: PenaltyKind) -> Option<&CellSummary> {
        self.cells
            .iter()
            .find(|c| c.criterion == criterion && c.penalty == penalty)
    }

    pub fn failed_cells(&self) -> usize {
        self.cells.iter().map(|c| c.failed).sum()
    }
}

/// Averages replicate metrics per cell. Failed replicates are excluded from
/// the means and counted. The input order does not matter.
pub fn summarize(cfg: &ScenarioConfig, results: &[ReplicateResult]) -> SummaryTable {
    let mut ordered: Vec<&ReplicateResult> = results.iter().collect();
    ordered.sort_by_key(|r| r.replicate);
    let mut cells = Vec::new();
    for &penalty in &cfg.penalties {
        for &criterion in &cfg.criteria {
            let mut ok: Vec<&CellMetrics> = Vec::new();
            let mut failed = 0;
            for r in &ordered {
                match r.cell(criterion, penalty).map(|c| &c.outcome) {
                    Some(Ok(m)) => ok.push(m),
                    _ => failed += 1,
                }
            }
            let k = ok.len() as f64;
            let mean = |f: &dyn Fn(&CellMetrics) -> f64| {
                if ok.is_empty() {
                    f64::NAN
                } else {
                    ok.iter().map(|m| f(m)).sum::<f64>() / k
                }
            };
            cells.push(CellSummary {
                criterion,
                penalty,
                completed: ok.len(),
                failed,
                pct: mean(&|m| if m.exact_match { 1.0 } else { 0.0 }),
                mean_rpe: mean(&|m| m.rpe),
                mean_c: mean(&|m| m.c_zeros as f64),
                mean_i: mean(&|m| m.i_zeros as f64),
                mean_size: mean(&|m| m.size as f64),
            });
        }
    }
    SummaryTable {
        scenario: cfg.name.clone(),
        n: cfg.n,
        p: cfg.p(),
        true_size: cfg.true_model.true_support().len(),
        replicates: results.len(),
        master_seed: cfg.master_seed,
        cells,
    }
}

/// Simulates and summarizes a scenario.
pub fn run_scenario(cfg: &ScenarioConfig) -> Result<SummaryTable> {
    Ok(summarize(cfg, &simulate(cfg)?))
}
