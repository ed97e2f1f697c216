//! Independent oracles shared by the integration tests. Nothing here calls
//! into the solver or the selection code it is used to check.

#![allow(dead_code)]

use nalgebra::{DMatrix, DVector};
use passreg::model::{Dataset, PenaltyKind};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub fn rng(seed: u64) -> ChaCha8Rng {
    use rand::SeedableRng;
    ChaCha8Rng::seed_from_u64(seed)
}

/// Centered columns with unit root-mean-square, and a centered response
/// `y = X beta + noise`.
pub fn standardized_instance(n: usize, p: usize, beta_scale: f64, noise: f64, r: &mut ChaCha8Rng) -> Dataset {
    let mut x = DMatrix::from_fn(n, p, |_, _| r.sample::<f64, _>(StandardNormal));
    for mut c in x.column_iter_mut() {
        let m = c.mean();
        c.add_scalar_mut(-m);
        let s = (c.norm_squared() / n as f64).sqrt();
        c /= s;
    }
    let beta = DVector::from_fn(p, |_, _| beta_scale * r.sample::<f64, _>(StandardNormal));
    let mut y = &x * beta;
    for v in y.iter_mut() {
        *v += noise * r.sample::<f64, _>(StandardNormal);
    }
    let m = y.mean();
    y.add_scalar_mut(-m);
    Dataset::new(x, y).unwrap()
}

/// SCAD term of the objective, written out from its derivative
/// `lambda` on `[0, lambda/2]`, `(a lambda - 2 s)/(a - 1)` up to `a lambda / 2`, 0 after.
pub fn scad_term(theta: f64, lambda: f64, a: f64) -> f64 {
    let t = theta.abs();
    let k1 = lambda / 2.0;
    let k2 = a * lambda / 2.0;
    let mid = |u: f64| (a * lambda * (u - k1) - (u * u - k1 * k1)) / (a - 1.0);
    if t <= k1 {
        lambda * t
    } else if t <= k2 {
        lambda * k1 + mid(t)
    } else {
        lambda * k1 + mid(k2)
    }
}

/// Penalized objective on standardized data (unit RMS columns), from scratch.
pub struct ObjectiveOracle {
    n: f64,
    yty: f64,
    xty: Vec<f64>,
    gram: Vec<Vec<f64>>,
    kind: PenaltyKind,
    lambda: f64,
    a: f64,
    weights: Vec<f64>,
}

impl ObjectiveOracle {
    pub fn new(data: &Dataset, kind: PenaltyKind, lambda: f64, a: f64, weights: Vec<f64>) -> Self {
        let x = data.x();
        let y = data.y();
        let p = x.ncols();
        let xty = (0..p).map(|j| x.column(j).dot(y)).collect();
        let gram = (0..p)
            .map(|j| (0..p).map(|k| x.column(j).dot(&x.column(k))).collect())
            .collect();
        Self {
            n: x.nrows() as f64,
            yty: y.dot(y),
            xty,
            gram,
            kind,
            lambda,
            a,
            weights,
        }
    }

    pub fn eval(&self, beta: &[f64]) -> f64 {
        let p = beta.len();
        let mut quad = 0.0;
        for j in 0..p {
            for k in 0..p {
                quad += beta[j] * self.gram[j][k] * beta[k];
            }
        }
        let lin: f64 = beta.iter().zip(&self.xty).map(|(b, c)| b * c).sum();
        let loss = (self.yty - 2.0 * lin + quad) / self.n;
        let pen: f64 = beta
            .iter()
            .zip(&self.weights)
            .map(|(b, w)| match self.kind {
                PenaltyKind::Lasso => self.lambda * b.abs(),
                PenaltyKind::AdaptiveLasso => self.lambda * w * b.abs(),
                PenaltyKind::Scad => scad_term(*b, self.lambda, self.a),
            })
            .sum();
        loss + pen
    }

    /// Minimum over the lattice of step 1e-3 in `[-10, 10]^p`, searched
    /// coarse-to-fine: every point of a 0.05 lattice, then the full 1e-3
    /// lattice in a +-0.06 box around the best coarse candidates.
    pub fn grid_min(&self, p: usize) -> f64 {
        let coarse: Vec<f64> = (0..=400).map(|k| -10.0 + 0.05 * k as f64).collect();
        let mut cands: Vec<(f64, Vec<f64>)> = Vec::new();
        let push = |v: f64, pt: Vec<f64>, cands: &mut Vec<(f64, Vec<f64>)>| {
            cands.push((v, pt));
            if cands.len() > 400 {
                cands.sort_by(|a, b| a.0.total_cmp(&b.0));
                cands.truncate(40);
            }
        };
        match p {
            1 => {
                for &a in &coarse {
                    push(self.eval(&[a]), vec![a], &mut cands);
                }
            }
            2 => {
                for &a in &coarse {
                    for &b in &coarse {
                        push(self.eval(&[a, b]), vec![a, b], &mut cands);
                    }
                }
            }
            3 => {
                for &a in &coarse {
                    for &b in &coarse {
                        for &c in &coarse {
                            push(self.eval(&[a, b, c]), vec![a, b, c], &mut cands);
                        }
                    }
                }
            }
            _ => panic!("grid oracle supports p <= 3"),
        }
        cands.sort_by(|a, b| a.0.total_cmp(&b.0));
        cands.truncate(10);
        let offsets: Vec<f64> = (-60..=60).map(|k| k as f64 * 1e-3).collect();
        let mut best = f64::INFINITY;
        for (_, c) in &cands {
            let mut pt = c.clone();
            let mut idx = vec![0usize; p];
            loop {
                for j in 0..p {
                    pt[j] = c[j] + offsets[idx[j]];
                }
                best = best.min(self.eval(&pt));
                let mut j = 0;
                while j < p {
                    idx[j] += 1;
                    if idx[j] < offsets.len() {
                        break;
                    }
                    idx[j] = 0;
                    j += 1;
                }
                if j == p {
                    break;
                }
            }
        }
        best
    }
}

/// Largest violation of the LASSO / weighted-LASSO optimality conditions on
/// standardized data: `(2/n) x_j' r` must equal `lambda w_j sign(beta_j)` on
/// the support and lie in `[-lambda w_j, lambda w_j]` off it.
pub fn lasso_kkt_violation(data: &Dataset, lambda: f64, weights: &[f64], beta: &[f64]) -> f64 {
    let n = data.n() as f64;
    let r = data.y() - data.x() * DVector::from_column_slice(beta);
    (0..data.p())
        .map(|j| {
            let g = 2.0 / n * data.x().column(j).dot(&r);
            let lw = lambda * weights[j];
            if beta[j] == 0.0 {
                (g.abs() - lw).max(0.0)
            } else {
                (g - lw * beta[j].signum()).abs()
            }
        })
        .fold(0.0, f64::max)
}

/// Cohen's kappa from an explicit 2x2 agreement table of inclusion masks.
pub fn contingency_kappa(m1: &[bool], m2: &[bool]) -> f64 {
    let p = m1.len() as f64;
    let mut t = [[0.0f64; 2]; 2];
    for (a, b) in m1.iter().zip(m2) {
        t[*a as usize][*b as usize] += 1.0;
    }
    let po = (t[0][0] + t[1][1]) / p;
    let row1 = t[1][0] + t[1][1];
    let col1 = t[0][1] + t[1][1];
    let pe = (row1 * col1 + (p - row1) * (p - col1)) / (p * p);
    (po - pe) / (1.0 - pe)
}
