use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::model::{Coefficients, Dataset, SupportSet};

/// Relative size below which a diagonal entry of R marks a rank deficiency.
const RANK_TOL: f64 = 1e-10;

/// Least squares on the columns in `support`; zeros elsewhere.
pub fn ols_fit(data: &Dataset, support: &SupportSet) -> Result<Coefficients> {
    if support.p() != data.p() {
        return Err(Error::DimensionMismatch {
            expected: data.p(),
            found: support.p(),
        });
    }
    let mut beta = vec![0.0; data.p()];
    let k = support.len();
    if k == 0 {
        return Ok(Coefficients { beta, lambda: 0.0 });
    }
    if k > data.n() {
        return Err(Error::RankDeficient { columns: k });
    }
    let xs: DMatrix<f64> = data.x().select_columns(support.indices());
    let qr = xs.qr();
    let r = qr.r();
    let max_diag = r.diagonal().iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if max_diag == 0.0 || r.diagonal().iter().any(|v| v.abs() <= RANK_TOL * max_diag) {
        return Err(Error::RankDeficient { columns: k });
    }
    let qty = qr.q().tr_mul(data.y());
    let sol = r
        .solve_upper_triangular(&qty)
        .ok_or(Error::RankDeficient { columns: k })?;
    for (&j, v) in support.indices().iter().zip(sol.iter()) {
        beta[j] = *v;
    }
    if beta.iter().any(|b| !b.is_finite()) {
        return Err(Error::NonFinite("OLS coefficients".into()));
    }
    Ok(Coefficients { beta, lambda: 0.0 })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn data() -> Dataset {
        Dataset::from_rows(
            &[
                vec![1.0, 0.5, -1.0],
                vec![-2.0, 1.0, 0.3],
                vec![0.7, -1.5, 2.0],
                vec![0.3, 2.0, -0.1],
                vec![1.1, -0.4, 0.9],
            ],
            vec![0.0; 5],
        )
        .unwrap()
    }

    #[test]
    fn empty_support_gives_zeros() {
        let b = ols_fit(&data(), &SupportSet::empty(3)).unwrap();
        assert_eq!(b.beta, vec![0.0; 3]);
    }

    #[test]
    fn square_system_interpolates() {
        let d = Dataset::from_rows(&[vec![2.0, 1.0], vec![1.0, 3.0]], vec![3.0, 5.0]).unwrap();
        let b = ols_fit(&d, &SupportSet::full(2)).unwrap();
        assert!(d.rss(&b.beta) < 1e-20);
        assert!((b.beta[0] - 0.8).abs() < 1e-12 && (b.beta[1] - 1.4).abs() < 1e-12);
    }

    #[test]
    fn noiseless_recovery_on_superset() {
        let base = data();
        let truth = [1.5, 0.0, -2.0];
        let y: Vec<f64> = (0..5)
            .map(|i| (0..3).map(|j| base.x()[(i, j)] * truth[j]).sum())
            .collect();
        let d = Dataset::new(base.x().clone(), y.into()).unwrap();
        let b = ols_fit(&d, &SupportSet::full(3)).unwrap();
        for (got, want) in b.beta.iter().zip(truth) {
            assert!((got - want).abs() < 1e-8);
        }
        let b = ols_fit(&d, &SupportSet::new(vec![0, 2], 3).unwrap()).unwrap();
        assert!((b.beta[0] - 1.5).abs() < 1e-8 && b.beta[1] == 0.0);
    }

    #[test]
    fn duplicated_column_is_rank_deficient() {
        let d = Dataset::from_rows(
            &[vec![1.0, 2.0], vec![2.0, 4.0], vec![-1.0, -2.0]],
            vec![1.0, 0.0, 1.0],
        )
        .unwrap();
        assert!(matches!(
            ols_fit(&d, &SupportSet::full(2)),
            Err(Error::RankDeficient { columns: 2 })
        ));
    }
}
