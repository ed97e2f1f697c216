use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

/// Response vector and design matrix, `n` rows by `p` columns.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    x: DMatrix<f64>,
    y: DVector<f64>,
}

/// Column means and response mean removed by [`center_data`].
#[derive(Debug, Clone, PartialEq)]
pub struct Centering {
    pub x_means: Vec<f64>,
    pub y_mean: f64,
}

impl Centering {
    /// Prediction on the raw scale for a raw covariate row.
    pub fn predict_raw(&self, row: &[f64], beta: &[f64]) -> f64 {
        self.y_mean
            + row
                .iter()
                .zip(&self.x_means)
                .zip(beta)
                .map(|((x, m), b)| (x - m) * b)
                .sum::<f64>()
    }

    /// Intercept implied on the raw scale by centered-scale coefficients.
    pub fn intercept(&self, beta: &[f64]) -> f64 {
        self.y_mean - self.x_means.iter().zip(beta).map(|(m, b)| m * b).sum::<f64>()
    }
}

impl Dataset {
    pub fn new(x: DMatrix<f64>, y: DVector<f64>) -> Result<Self> {
        if x.nrows() != y.len() {
            return Err(Error::DimensionMismatch {
                expected: x.nrows(),
                found: y.len(),
            });
        }
        if x.nrows() < 2 {
            return Err(Error::InvalidInput(format!(
                "need at least 2 observations, got {}",
                x.nrows()
            )));
        }
        if x.ncols() < 1 {
            return Err(Error::InvalidInput("need at least 1 covariate".into()));
        }
        Ok(Self { x, y })
    }

    /// Builds a dataset from row-major covariate rows.
    pub fn from_rows(rows: &[Vec<f64>], y: Vec<f64>) -> Result<Self> {
        let n = rows.len();
        let p = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != p) {
            return Err(Error::DimensionMismatch {
                expected: p,
                found: bad.len(),
            });
        }
        let x = DMatrix::from_fn(n, p, |i, j| rows[i][j]);
        Self::new(x, DVector::from_vec(y))
    }

    pub fn n(&self) -> usize {
        self.x.nrows()
    }

    pub fn p(&self) -> usize {
        self.x.ncols()
    }

    pub fn x(&self) -> &DMatrix<f64> {
        &self.x
    }

    pub fn y(&self) -> &DVector<f64> {
        &self.y
    }

    /// Rows selected by `rows`, in the given order. Not re-centered.
    pub fn subset(&self, rows: &[usize]) -> Result<Self> {
        if let Some(&bad) = rows.iter().find(|&&i| i >= self.n()) {
            return Err(Error::InvalidInput(format!(
                "row index {bad} out of range for n = {}",
                self.n()
            )));
        }
        let x = self.x.select_rows(rows);
        let y = DVector::from_iterator(rows.len(), rows.iter().map(|&i| self.y[i]));
        Self::new(x, y)
    }

    /// `y - X beta`.
    pub fn residuals(&self, beta: &[f64]) -> DVector<f64> {
        &self.y - &self.x * DVector::from_column_slice(beta)
    }

    pub fn rss(&self, beta: &[f64]) -> f64 {
        self.residuals(beta).norm_squared()
    }

    /// True when every column and the response sum to zero within `1e-8 * n`.
    pub fn is_centered(&self) -> bool {
        let tol = 1e-8 * self.n() as f64;
        self.y.sum().abs() <= tol && self.x.column_iter().all(|c| c.sum().abs() <= tol)
    }

    pub fn is_finite(&self) -> bool {
        self.x.iter().chain(self.y.iter()).all(|v| v.is_finite())
    }
}

/// Removes column means from `x` and the mean from `y`.
pub fn center_data(raw: &Dataset) -> Result<(Dataset, Centering)> {
    if !raw.is_finite() {
        return Err(Error::NonFinite("dataset".into()));
    }
    let n = raw.n() as f64;
    let x_means: Vec<f64> = raw.x.column_iter().map(|c| c.sum() / n).collect();
    let y_mean = raw.y.sum() / n;
    let mut x = raw.x.clone();
    for (mut col, m) in x.column_iter_mut().zip(&x_means) {
        col.add_scalar_mut(-m);
    }
    let y = raw.y.add_scalar(-y_mean);
    Ok((Dataset { x, y }, Centering { x_means, y_mean }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn centers_simple_column() {
        let raw = Dataset::from_rows(&[vec![1.0], vec![2.0], vec![3.0]], vec![1.0, 1.0, 4.0]).unwrap();
        let (c, info) = center_data(&raw).unwrap();
        assert_eq!(c.x().as_slice(), &[-1.0, 0.0, 1.0]);
        assert_eq!(info.x_means, vec![2.0]);
        assert_eq!(info.y_mean, 2.0);
        assert!(c.is_centered());
    }

    #[test]
    fn centered_input_is_unchanged() {
        let raw = Dataset::from_rows(&[vec![-1.0], vec![0.0], vec![1.0]], vec![2.0, 0.0, -2.0]).unwrap();
        let (c, info) = center_data(&raw).unwrap();
        assert_eq!(c, raw);
        assert_eq!(info.x_means, vec![0.0]);
    }

    #[test]
    fn constant_response_centers_to_zero() {
        let raw = Dataset::from_rows(&[vec![1.0], vec![2.0]], vec![5.0, 5.0]).unwrap();
        let (c, info) = center_data(&raw).unwrap();
        assert_eq!(c.y().as_slice(), &[0.0, 0.0]);
        assert_eq!(info.y_mean, 5.0);
    }

    #[test]
    fn rejects_non_finite() {
        let raw = Dataset::from_rows(&[vec![1.0], vec![f64::NAN]], vec![0.0, 1.0]).unwrap();
        assert!(matches!(center_data(&raw), Err(Error::NonFinite(_))));
    }

    #[test]
    fn rejects_tiny_or_ragged_input() {
        assert!(Dataset::from_rows(&[vec![1.0]], vec![0.0]).is_err());
        assert!(Dataset::from_rows(&[vec![1.0], vec![1.0, 2.0]], vec![0.0, 1.0]).is_err());
    }

    #[test]
    fn raw_scale_prediction_round_trips() {
        let raw = Dataset::from_rows(
            &[vec![1.0, 4.0], vec![2.0, 1.0], vec![3.0, 7.0]],
            vec![3.0, 4.0, 8.0],
        )
        .unwrap();
        let (c, info) = center_data(&raw).unwrap();
        let beta = [0.5, 0.25];
        for i in 0..3 {
            let centered_pred = c.x()[(i, 0)] * beta[0] + c.x()[(i, 1)] * beta[1];
            let row = [raw.x()[(i, 0)], raw.x()[(i, 1)]];
            assert!((info.predict_raw(&row, &beta) - (centered_pred + info.y_mean)).abs() < 1e-12);
        }
    }
}
