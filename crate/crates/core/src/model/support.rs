use std::fmt;

use crate::error::{Error, Result};
use crate::model::Coefficients;

/// Sorted set of selected column indices out of `p` columns.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SupportSet {
    indices: Vec<usize>,
    p: usize,
}

impl SupportSet {
    /// Sorts and deduplicates `indices`; fails if any index is `>= p`.
    pub fn new(mut indices: Vec<usize>, p: usize) -> Result<Self> {
        indices.sort_unstable();
        indices.dedup();
        if let Some(&bad) = indices.iter().find(|&&j| j >= p) {
            return Err(Error::InvalidInput(format!("index {bad} out of range for p = {p}")));
        }
        Ok(Self { indices, p })
    }

    pub fn empty(p: usize) -> Self {
        Self { indices: Vec::new(), p }
    }

    pub fn full(p: usize) -> Self {
        Self {
            indices: (0..p).collect(),
            p,
        }
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.indices.len() == self.p
    }

    pub fn contains(&self, j: usize) -> bool {
        self.indices.binary_search(&j).is_ok()
    }

    /// Inclusion mask of length `p`.
    pub fn mask(&self) -> Vec<bool> {
        let mut m = vec![false; self.p];
        for &j in &self.indices {
            m[j] = true;
        }
        m
    }

    pub fn intersection_len(&self, other: &SupportSet) -> usize {
        self.indices.iter().filter(|&&j| other.contains(j)).count()
    }
}

impl fmt::Display for SupportSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let inner: Vec<String> = self.indices.iter().map(|j| j.to_string()).collect();
        f.pad(&format!("{{{}}}", inner.join(" ")))
    }
}

/// Indices `j` with `|beta_j| > zero_tol`.
pub fn active_set(coef: &Coefficients, zero_tol: f64) -> SupportSet {
    let indices = coef
        .beta
        .iter()
        .enumerate()
        .filter(|(_, b)| b.abs() > zero_tol)
        .map(|(j, _)| j)
        .collect();
    SupportSet {
        indices,
        p: coef.beta.len(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coef(beta: Vec<f64>) -> Coefficients {
        Coefficients { beta, lambda: 0.0 }
    }

    #[test]
    fn scenario_one_truth() {
        let s = active_set(&coef(vec![3.0, 1.5, 0.0, 0.0, 2.0, 0.0, 0.0, 0.0]), 1e-8);
        assert_eq!(s.indices(), &[0, 1, 4]);
        assert_eq!(s.p(), 8);
    }

    #[test]
    fn zero_vector_and_strict_threshold() {
        assert!(active_set(&coef(vec![0.0; 4]), 1e-8).is_empty());
        let s = active_set(&coef(vec![0.0, 1e-12, -2.0]), 0.0);
        assert_eq!(s.indices(), &[1, 2]);
        let s = active_set(&coef(vec![1e-8, 2e-8]), 1e-8);
        assert_eq!(s.indices(), &[1]);
    }

    #[test]
    fn constructor_normalizes_and_validates() {
        let s = SupportSet::new(vec![4, 1, 4, 0], 8).unwrap();
        assert_eq!(s.indices(), &[0, 1, 4]);
        assert!(SupportSet::new(vec![8], 8).is_err());
        assert!(SupportSet::full(3).is_full());
        assert_eq!(s.to_string(), "{0 1 4}");
    }
}
