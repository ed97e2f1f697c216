//! Cyclic coordinate descent for the penalized least-squares objective
//!
//! ```text
//! (1/n) * sum_i (y_i - x_i' beta)^2 + sum_j p_lambda(s_j * |beta_j|)
//! ```
//!
//! where `s_j` is the root-mean-square of column `j`. The solver works on
//! standardized columns `x_j / s_j` and reports coefficients on the original
//! (centered) scale. Under this loss scaling the univariate LASSO threshold is
//! `lambda / 2`.
//!
//! Coordinates are updated against a cached Gram matrix (covariance updates),
//! so each sweep costs `O(p^2)` regardless of `n`.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::model::ols::ols_fit;
use crate::model::penalty::{scad_derivative, scad_univariate, soft_threshold, PenaltyKind, PenaltySpec};
use crate::model::{Dataset, SupportSet};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitOptions {
    /// Convergence tolerance on the largest standardized coefficient change in a sweep.
    pub tol: f64,
    /// Maximum number of full coordinate sweeps.
    pub max_iter: usize,
    /// Coefficients with magnitude at or below this count as zero.
    pub zero_tol: f64,
}

impl Default for FitOptions {
    fn default() -> Self {
        Self {
            tol: 1e-7,
            max_iter: 10_000,
            zero_tol: 1e-8,
        }
    }
}

impl FitOptions {
    pub fn validate(&self) -> Result<()> {
        if !(self.tol > 0.0) || self.max_iter == 0 || !(self.zero_tol >= 0.0) {
            return Err(Error::InvalidInput(format!("invalid fit options {self:?}")));
        }
        Ok(())
    }
}

/// A fitted coefficient vector and the lambda it was fit at.
#[derive(Debug, Clone, PartialEq)]
pub struct Coefficients {
    pub beta: Vec<f64>,
    pub lambda: f64,
}

impl Coefficients {
    pub fn zeros(p: usize, lambda: f64) -> Self {
        Self {
            beta: vec![0.0; p],
            lambda,
        }
    }
}

/// Per-dataset state shared by every lambda on a path.
#[derive(Debug, Clone)]
pub struct Solver {
    penalty: PenaltySpec,
    scales: Vec<f64>,
    /// Gram matrix of standardized columns divided by n; unit diagonal.
    gram: DMatrix<f64>,
    /// Standardized `X'y / n`.
    xty: DVector<f64>,
    /// Adaptive weights on the standardized scale (`inf` forces zero).
    weights: Vec<f64>,
}

impl Solver {
    /// Precomputes column scales, the Gram matrix and, for the adaptive
    /// LASSO without explicit weights, `1 / |ols|` from a full OLS fit.
    pub fn new(data: &Dataset, penalty: &PenaltySpec) -> Result<Self> {
        if !data.is_finite() {
            return Err(Error::NonFinite("dataset".into()));
        }
        let n = data.n() as f64;
        let p = data.p();
        let raw_scales: Vec<f64> = data
            .x()
            .column_iter()
            .map(|c| (c.norm_squared() / n).sqrt())
            .collect();
        let floor = 1e-13 * raw_scales.iter().fold(1.0f64, |m, s| m.max(*s));
        if let Some(j) = raw_scales.iter().position(|s| *s <= floor) {
            return Err(Error::ConstantColumn(j));
        }
        let mut z = data.x().clone();
        for (mut col, s) in z.column_iter_mut().zip(&raw_scales) {
            col /= *s;
        }
        let mut gram = z.tr_mul(&z) / n;
        for j in 0..p {
            gram[(j, j)] = 1.0;
        }
        let xty = z.tr_mul(data.y()) / n;

        let weights = match penalty.kind() {
            PenaltyKind::AdaptiveLasso => {
                let orig: Vec<f64> = match penalty.weights() {
                    Some(w) => {
                        if w.len() != p {
                            return Err(Error::DimensionMismatch {
                                expected: p,
                                found: w.len(),
                            });
                        }
                        w.to_vec()
                    }
                    None => adaptive_weights(data)?,
                };
                orig.iter().zip(&raw_scales).map(|(w, s)| w / s).collect()
            }
            _ => vec![1.0; p],
        };

        Ok(Self {
            penalty: penalty.clone(),
            scales: raw_scales,
            gram,
            xty,
            weights,
        })
    }

    pub fn p(&self) -> usize {
        self.scales.len()
    }

    pub fn penalty(&self) -> &PenaltySpec {
        &self.penalty
    }

    /// Column root-mean-square scales used for standardization.
    pub fn scales(&self) -> &[f64] {
        &self.scales
    }

    /// Adaptive weights on the centered coefficient scale (ones for other penalties).
    pub fn weights(&self) -> Vec<f64> {
        self.weights.iter().zip(&self.scales).map(|(w, s)| w * s).collect()
    }

    fn update(&self, j: usize, u: f64, lambda: f64) -> f64 {
        match self.penalty.kind() {
            PenaltyKind::Lasso => soft_threshold(u, 0.5 * lambda),
            PenaltyKind::AdaptiveLasso => {
                let w = self.weights[j];
                if w.is_infinite() {
                    0.0
                } else {
                    soft_threshold(u, 0.5 * lambda * w)
                }
            }
            PenaltyKind::Scad => scad_univariate(u, lambda, self.penalty.a()),
        }
    }

    /// Solves at a single `lambda`, optionally starting from `warm`.
    pub fn fit(&self, lambda: f64, opts: &FitOptions, warm: Option<&Coefficients>) -> Result<Coefficients> {
        opts.validate()?;
        if !(lambda >= 0.0 && lambda.is_finite()) {
            return Err(Error::InvalidInput(format!("lambda must be finite and >= 0, got {lambda}")));
        }
        let p = self.p();
        let mut b: Vec<f64> = match warm {
            Some(w) => {
                if w.beta.len() != p {
                    return Err(Error::DimensionMismatch {
                        expected: p,
                        found: w.beta.len(),
                    });
                }
                w.beta.iter().zip(&self.scales).map(|(v, s)| v * s).collect()
            }
            None => vec![0.0; p],
        };
        // grad = X'y/n - G b
        let mut grad = &self.xty - &self.gram * DVector::from_column_slice(&b);

        let mut last_change = f64::INFINITY;
        let mut prev_step: Option<DVector<f64>> = None;
        for _ in 0..opts.max_iter {
            let start = DVector::from_column_slice(&b);
            let mut max_change = 0.0f64;
            for j in 0..p {
                let old = b[j];
                let new = self.update(j, grad[j] + old, lambda);
                let delta = new - old;
                if delta != 0.0 {
                    b[j] = new;
                    grad.axpy(-delta, &self.gram.column(j), 1.0);
                    max_change = max_change.max(delta.abs());
                }
            }
            if !max_change.is_finite() || grad.iter().any(|g| !g.is_finite()) {
                return Err(Error::NonFinite(format!("coordinate descent at lambda = {lambda}")));
            }
            last_change = max_change;
            if max_change < opts.tol {
                return Ok(Coefficients {
                    beta: self.unscale(&b),
                    lambda,
                });
            }
            // Successive sweeps pointing the same way mean a narrow valley:
            // jump along it with a line search that never increases the objective.
            let step = DVector::from_column_slice(&b) - start;
            if let Some(prev) = &prev_step {
                let cos = step.dot(prev) / (step.norm() * prev.norm());
                if cos > 0.999 {
                    let t = self.extrapolate(&b, &grad, &step, lambda);
                    if t > 0.0 {
                        for (bj, dj) in b.iter_mut().zip(step.iter()) {
                            *bj += t * dj;
                        }
                        grad -= &self.gram * &step * t;
                    }
                }
            }
            prev_step = Some(step);
        }
        Err(Error::NotConverged {
            lambda,
            iterations: opts.max_iter,
            last_change,
            last_iterate: self.unscale(&b),
        })
    }

    fn coordinate_penalty(&self, j: usize, bj: f64, lambda: f64) -> f64 {
        if bj == 0.0 {
            0.0
        } else if self.weights[j].is_infinite() {
            f64::INFINITY
        } else {
            self.penalty.value(bj, lambda, self.weights[j])
        }
    }

    /// Best doubling step `t` along `dir` from `b`, or 0 if none improves.
    fn extrapolate(&self, b: &[f64], grad: &DVector<f64>, dir: &DVector<f64>, lambda: f64) -> f64 {
        let lin = -2.0 * dir.dot(grad);
        let quad = dir.dot(&(&self.gram * dir));
        let change = |t: f64| -> f64 {
            let pen: f64 = (0..b.len())
                .map(|j| {
                    self.coordinate_penalty(j, b[j] + t * dir[j], lambda) - self.coordinate_penalty(j, b[j], lambda)
                })
                .sum();
            lin * t + quad * t * t + pen
        };
        let (mut best_t, mut best) = (0.0, 0.0);
        let mut t = 1.0;
        for _ in 0..30 {
            let v = change(t);
            if v < best {
                best = v;
                best_t = t;
                t *= 2.0;
            } else {
                break;
            }
        }
        best_t
    }

    fn unscale(&self, b: &[f64]) -> Vec<f64> {
        b.iter().zip(&self.scales).map(|(v, s)| v / s).collect()
    }

    /// Solves along `grid`, from the largest lambda down, warm starting each
    /// point from the previous solution. Results follow the order of `grid`.
    pub fn path(&self, grid: &[f64], opts: &FitOptions) -> Result<Vec<Coefficients>> {
        validate_grid(grid)?;
        let mut order: Vec<usize> = (0..grid.len()).collect();
        order.sort_by(|&a, &b| grid[b].total_cmp(&grid[a]));
        let mut out: Vec<Option<Coefficients>> = vec![None; grid.len()];
        let mut warm: Option<Coefficients> = None;
        for k in order {
            let fit = self
                .fit(grid[k], opts, warm.as_ref())
                .map_err(|e| Error::AtLambda {
                    lambda: grid[k],
                    source: Box::new(e),
                })?;
            warm = Some(fit.clone());
            out[k] = Some(fit);
        }
        Ok(out.into_iter().map(|c| c.expect("every grid point solved")).collect())
    }

    /// Penalized objective at `beta` (centered scale).
    pub fn objective(&self, data: &Dataset, lambda: f64, beta: &[f64]) -> f64 {
        let loss = data.rss(beta) / data.n() as f64;
        let pen: f64 = beta
            .iter()
            .zip(&self.scales)
            .zip(&self.weights)
            .map(|((b, s), w)| {
                if *b == 0.0 {
                    0.0
                } else if w.is_infinite() {
                    f64::INFINITY
                } else {
                    self.penalty.value(b * s, lambda, *w)
                }
            })
            .sum();
        loss + pen
    }

    /// Largest violation of the first-order optimality conditions on the
    /// standardized scale. For the LASSO and adaptive LASSO this certifies
    /// global optimality; for SCAD it certifies stationarity.
    pub fn kkt_violation(&self, lambda: f64, beta: &[f64]) -> f64 {
        let b: Vec<f64> = beta.iter().zip(&self.scales).map(|(v, s)| v * s).collect();
        // (2/n) z_j' r = 2 (xty - G b)_j
        let grad = (&self.xty - &self.gram * DVector::from_column_slice(&b)) * 2.0;
        let a = self.penalty.a();
        (0..self.p())
            .map(|j| {
                let w = self.weights[j];
                let g = grad[j];
                if w.is_infinite() {
                    return if b[j] == 0.0 { 0.0 } else { f64::INFINITY };
                }
                let t = b[j].abs();
                match self.penalty.kind() {
                    PenaltyKind::Lasso | PenaltyKind::AdaptiveLasso => {
                        let lw = lambda * w;
                        if b[j] == 0.0 {
                            (g.abs() - lw).max(0.0)
                        } else {
                            (g - lw * b[j].signum()).abs()
                        }
                    }
                    PenaltyKind::Scad => {
                        if b[j] == 0.0 {
                            (g.abs() - lambda).max(0.0)
                        } else {
                            (g - scad_derivative(t, lambda, a) * b[j].signum()).abs()
                        }
                    }
                }
            })
            .fold(0.0, f64::max)
    }
}

/// `1 / |ols_j|` from a full OLS fit; an exactly zero estimate gets an infinite weight.
pub fn adaptive_weights(data: &Dataset) -> Result<Vec<f64>> {
    let ols = ols_fit(data, &SupportSet::full(data.p()))?;
    Ok(ols
        .beta
        .iter()
        .map(|b| if *b == 0.0 { f64::INFINITY } else { 1.0 / b.abs() })
        .collect())
}

pub(crate) fn validate_grid(grid: &[f64]) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::InvalidInput("lambda grid is empty".into()));
    }
    if let Some(bad) = grid.iter().find(|l| !(l.is_finite() && **l >= 0.0)) {
        return Err(Error::InvalidInput(format!("invalid lambda {bad} in grid")));
    }
    let increasing = grid.windows(2).all(|w| w[0] < w[1]);
    let decreasing = grid.windows(2).all(|w| w[0] > w[1]);
    if !(increasing || decreasing) {
        return Err(Error::InvalidInput("lambda grid must be strictly monotone".into()));
    }
    Ok(())
}

/// Solves the penalized problem at one `lambda`.
pub fn fit_penalized(
    data: &Dataset,
    penalty: &PenaltySpec,
    lambda: f64,
    opts: &FitOptions,
    warm: Option<&Coefficients>,
) -> Result<Coefficients> {
    Solver::new(data, penalty)?.fit(lambda, opts, warm)
}

/// Solves along a monotone lambda grid with warm starts.
pub fn fit_path(data: &Dataset, penalty: &PenaltySpec, grid: &[f64], opts: &FitOptions) -> Result<Vec<Coefficients>> {
    Solver::new(data, penalty)?.path(grid, opts)
}

/// `{10^(lo + (hi - lo) k / (count - 1))}` for `k = 0..count`, increasing.
pub fn log_grid(lo_exp: f64, hi_exp: f64, count: usize) -> Vec<f64> {
    if count == 1 {
        return vec![10f64.powf(lo_exp)];
    }
    (0..count)
        .map(|k| 10f64.powf(lo_exp + (hi_exp - lo_exp) * k as f64 / (count - 1) as f64))
        .collect()
}

/// The 100-point grid `10^(-2 + 4k/99)`, `k = 0..99`.
pub fn default_grid() -> Vec<f64> {
    log_grid(-2.0, 2.0, 100)
}
