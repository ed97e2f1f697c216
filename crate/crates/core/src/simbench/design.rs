use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::model::{Coefficients, SupportSet};

/// Data-generating model: `y = X beta + sigma * eps` with AR(1)-correlated
/// Gaussian rows, `Corr(x_k, x_l) = rho^|k - l|`.
#[derive(Debug, Clone, PartialEq)]
pub struct TrueModel {
    beta: Vec<f64>,
    rho: f64,
    sigma: f64,
    true_support: SupportSet,
}

impl TrueModel {
    pub fn new(beta: Vec<f64>, rho: f64, sigma: f64) -> Result<Self> {
        if beta.is_empty() {
            return Err(Error::InvalidInput("true model needs p >= 1".into()));
        }
        if !(rho.abs() < 1.0) {
            return Err(Error::InvalidInput(format!("AR(1) correlation must satisfy |rho| < 1, got {rho}")));
        }
        if !(sigma >= 0.0 && sigma.is_finite()) {
            return Err(Error::InvalidInput(format!("noise level must be finite and >= 0, got {sigma}")));
        }
        if beta.iter().any(|b| !b.is_finite()) {
            return Err(Error::NonFinite("true coefficients".into()));
        }
        let idx = beta.iter().enumerate().filter(|(_, b)| **b != 0.0).map(|(j, _)| j).collect();
        let true_support = SupportSet::new(idx, beta.len())?;
        Ok(Self {
            beta,
            rho,
            sigma,
            true_support,
        })
    }

    pub fn beta(&self) -> &[f64] {
        &self.beta
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn p(&self) -> usize {
        self.beta.len()
    }

    pub fn true_support(&self) -> &SupportSet {
        &self.true_support
    }

    /// `Sigma_kl = rho^|k - l|`.
    pub fn covariance(&self) -> DMatrix<f64> {
        ar1_covariance(self.p(), self.rho)
    }
}

pub fn ar1_covariance(p: usize, rho: f64) -> DMatrix<f64> {
    DMatrix::from_fn(p, p, |k, l| rho.powi((k as i32 - l as i32).abs()))
}

/// Rows drawn from `N(0, Sigma)` via `x_1 = z_1`, `x_k = rho x_{k-1} + sqrt(1 - rho^2) z_k`.
pub fn gen_ar1_design<R: Rng + ?Sized>(n: usize, p: usize, rho: f64, rng: &mut R) -> DMatrix<f64> {
    let innov = (1.0 - rho * rho).sqrt();
    let mut x = DMatrix::zeros(n, p);
    for i in 0..n {
        let mut prev = 0.0;
        for k in 0..p {
            let z: f64 = rng.sample(StandardNormal);
            let v = if k == 0 { z } else { rho * prev + innov * z };
            x[(i, k)] = v;
            prev = v;
        }
    }
    x
}

/// `y = X beta + sigma * eps`, `eps` i.i.d. standard normal.
pub fn gen_response<R: Rng + ?Sized>(x: &DMatrix<f64>, model: &TrueModel, rng: &mut R) -> Result<DVector<f64>> {
    if x.ncols() != model.p() {
        return Err(Error::DimensionMismatch {
            expected: model.p(),
            found: x.ncols(),
        });
    }
    let mut y = x * DVector::from_column_slice(model.beta());
    for v in y.iter_mut() {
        let e: f64 = rng.sample(StandardNormal);
        *v += model.sigma() * e;
    }
    Ok(y)
}

/// Relative prediction error `(b - beta)' Sigma (b - beta) / sigma^2`, the
/// expectation over a fresh design row in closed form.
pub fn rpe(refit: &Coefficients, model: &TrueModel) -> Result<f64> {
    if refit.beta.len() != model.p() {
        return Err(Error::DimensionMismatch {
            expected: model.p(),
            found: refit.beta.len(),
        });
    }
    let d = DVector::from_iterator(model.p(), refit.beta.iter().zip(model.beta()).map(|(a, b)| a - b));
    let q = (d.transpose() * model.covariance() * &d)[(0, 0)];
    Ok(q / (model.sigma() * model.sigma()))
}

/// `(c, i)`: true zeros estimated as zero, and true signals estimated as zero.
pub fn zero_counts(support: &SupportSet, true_support: &SupportSet) -> Result<(usize, usize)> {
    if support.p() != true_support.p() {
        return Err(Error::DimensionMismatch {
            expected: true_support.p(),
            found: support.p(),
        });
    }
    let p = support.p();
    let c = (0..p).filter(|&j| !true_support.contains(j) && !support.contains(j)).count();
    let i = true_support.indices().iter().filter(|&&j| !support.contains(j)).count();
    Ok((c, i))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seed::rng_from_seed;

    fn scenario_one() -> TrueModel {
        TrueModel::new(vec![3.0, 1.5, 0.0, 0.0, 2.0, 0.0, 0.0, 0.0], 0.5, 1.0).unwrap()
    }

    #[test]
    fn true_support_from_beta() {
        assert_eq!(scenario_one().true_support().indices(), &[0, 1, 4]);
        assert!(TrueModel::new(vec![1.0], 1.0, 1.0).is_err());
    }

    #[test]
    fn rpe_examples() {
        let m = scenario_one();
        let exact = Coefficients {
            beta: m.beta().to_vec(),
            lambda: 0.0,
        };
        assert_eq!(rpe(&exact, &m).unwrap(), 0.0);
        let mut b = m.beta().to_vec();
        b[0] += 1.0;
        let one = Coefficients { beta: b.clone(), lambda: 0.0 };
        assert!((rpe(&one, &m).unwrap() - 1.0).abs() < 1e-12);
        b[1] += 1.0;
        let two = Coefficients { beta: b, lambda: 0.0 };
        assert!((rpe(&two, &m).unwrap() - 3.0).abs() < 1e-12);
    }

    #[test]
    fn zero_count_examples() {
        let truth = SupportSet::new(vec![0, 1, 4], 8).unwrap();
        assert_eq!(zero_counts(&truth, &truth).unwrap(), (5, 0));
        let s = SupportSet::new(vec![0, 1], 8).unwrap();
        assert_eq!(zero_counts(&s, &truth).unwrap(), (5, 1));
        assert_eq!(zero_counts(&SupportSet::full(8), &truth).unwrap(), (0, 0));
        assert!(zero_counts(&SupportSet::full(7), &truth).is_err());
    }

    #[test]
    fn noiseless_response_is_exact() {
        let m = TrueModel::new(vec![1.0, -2.0], 0.5, 0.0).unwrap();
        let mut rng = rng_from_seed(4);
        let x = gen_ar1_design(10, 2, 0.5, &mut rng);
        let y = gen_response(&x, &m, &mut rng).unwrap();
        for i in 0..10 {
            assert_eq!(y[i], x[(i, 0)] - 2.0 * x[(i, 1)]);
        }
    }

    #[test]
    fn design_is_reproducible() {
        let a = gen_ar1_design(5, 3, 0.5, &mut rng_from_seed(11));
        let b = gen_ar1_design(5, 3, 0.5, &mut rng_from_seed(11));
        assert_eq!(a, b);
    }
}
