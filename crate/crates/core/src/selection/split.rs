use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::model::{Coefficients, Dataset};

/// A random partition of `0..n` into halves of size `floor(n/2)` and `n - floor(n/2)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitPair {
    pub first: Vec<usize>,
    pub second: Vec<usize>,
}

impl SplitPair {
    pub fn n(&self) -> usize {
        self.first.len() + self.second.len()
    }
}

/// Uniformly random half split. Each half is returned in ascending order.
pub fn random_half_split<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<SplitPair> {
    if n < 4 {
        return Err(Error::InvalidInput(format!("half split needs n >= 4, got {n}")));
    }
    let mut idx: Vec<usize> = (0..n).collect();
    idx.shuffle(rng);
    let m = n / 2;
    let mut first = idx[..m].to_vec();
    let mut second = idx[m..].to_vec();
    first.sort_unstable();
    second.sort_unstable();
    Ok(SplitPair { first, second })
}

/// Split cross-validation error: each half is predicted by the coefficients
/// fit on the other half, and the squared errors are averaged over all `n`.
///
/// `beta1` must come from `split.first` and `beta2` from `split.second`.
pub fn cv_error(data: &Dataset, split: &SplitPair, beta1: &Coefficients, beta2: &Coefficients) -> Result<f64> {
    for b in [beta1, beta2] {
        if b.beta.len() != data.p() {
            return Err(Error::DimensionMismatch {
                expected: data.p(),
                found: b.beta.len(),
            });
        }
    }
    if split.n() != data.n() {
        return Err(Error::DimensionMismatch {
            expected: data.n(),
            found: split.n(),
        });
    }
    let sq = |rows: &[usize], beta: &[f64]| -> f64 {
        rows.iter()
            .map(|&i| {
                let pred: f64 = data.x().row(i).iter().zip(beta).map(|(x, b)| x * b).sum();
                (data.y()[i] - pred).powi(2)
            })
            .sum()
    };
    let total = sq(&split.first, &beta2.beta) + sq(&split.second, &beta1.beta);
    let cv = total / data.n() as f64;
    if !cv.is_finite() {
        return Err(Error::NonFinite("split cross-validation error".into()));
    }
    Ok(cv)
}
