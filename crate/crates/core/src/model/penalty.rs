use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// SCAD shape parameter used when none is given.
pub const DEFAULT_SCAD_A: f64 = 3.7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PenaltyKind {
    Lasso,
    AdaptiveLasso,
    Scad,
}

impl PenaltyKind {
    pub const ALL: [PenaltyKind; 3] = [PenaltyKind::Lasso, PenaltyKind::AdaptiveLasso, PenaltyKind::Scad];

    pub fn label(self) -> &'static str {
        match self {
            PenaltyKind::Lasso => "LASSO",
            PenaltyKind::AdaptiveLasso => "aLASSO",
            PenaltyKind::Scad => "SCAD",
        }
    }
}

impl fmt::Display for PenaltyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.label())
    }
}

impl FromStr for PenaltyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "lasso" => Ok(PenaltyKind::Lasso),
            "alasso" | "adaptive" | "adaptive-lasso" | "adaptive_lasso" => Ok(PenaltyKind::AdaptiveLasso),
            "scad" => Ok(PenaltyKind::Scad),
            other => Err(Error::InvalidInput(format!("unknown penalty '{other}'"))),
        }
    }
}

/// Which penalty to apply, with its shape parameter and adaptive weights.
///
/// Adaptive weights are expressed on the centered coefficient scale:
/// the penalty on coefficient `j` is `lambda * w_j * |beta_j|`. A weight of
/// `f64::INFINITY` forces that coefficient to zero. When `weights` is `None`
/// for the adaptive LASSO, the weights are computed as `1 / |ols_j|` from an
/// OLS fit on whatever dataset is being fit.
#[derive(Debug, Clone, PartialEq)]
pub struct PenaltySpec {
    kind: PenaltyKind,
    a: f64,
    weights: Option<Vec<f64>>,
}

impl PenaltySpec {
    pub fn lasso() -> Self {
        Self {
            kind: PenaltyKind::Lasso,
            a: DEFAULT_SCAD_A,
            weights: None,
        }
    }

    pub fn adaptive_lasso() -> Self {
        Self {
            kind: PenaltyKind::AdaptiveLasso,
            a: DEFAULT_SCAD_A,
            weights: None,
        }
    }

    pub fn adaptive_lasso_with_weights(weights: Vec<f64>) -> Result<Self> {
        validate_weights(&weights)?;
        Ok(Self {
            kind: PenaltyKind::AdaptiveLasso,
            a: DEFAULT_SCAD_A,
            weights: Some(weights),
        })
    }

    pub fn scad() -> Self {
        Self {
            kind: PenaltyKind::Scad,
            a: DEFAULT_SCAD_A,
            weights: None,
        }
    }

    pub fn scad_with_a(a: f64) -> Result<Self> {
        if !(a > 2.0 && a.is_finite()) {
            return Err(Error::InvalidInput(format!("SCAD requires a > 2, got {a}")));
        }
        Ok(Self {
            kind: PenaltyKind::Scad,
            a,
            weights: None,
        })
    }

    pub fn from_kind(kind: PenaltyKind) -> Self {
        match kind {
            PenaltyKind::Lasso => Self::lasso(),
            PenaltyKind::AdaptiveLasso => Self::adaptive_lasso(),
            PenaltyKind::Scad => Self::scad(),
        }
    }

    pub fn kind(&self) -> PenaltyKind {
        self.kind
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn weights(&self) -> Option<&[f64]> {
        self.weights.as_deref()
    }

    /// Penalty contribution of a single coefficient with magnitude `theta`
    /// and per-coefficient weight `weight` (ignored except for the adaptive LASSO).
    pub fn value(&self, theta: f64, lambda: f64, weight: f64) -> f64 {
        let theta = theta.abs();
        match self.kind {
            PenaltyKind::Lasso => lambda * theta,
            PenaltyKind::AdaptiveLasso => {
                if theta == 0.0 {
                    0.0
                } else {
                    lambda * weight * theta
                }
            }
            PenaltyKind::Scad => scad_penalty(theta, lambda, self.a),
        }
    }
}

pub(crate) fn validate_weights(weights: &[f64]) -> Result<()> {
    if let Some(w) = weights.iter().find(|w| w.is_nan() || **w < 0.0) {
        return Err(Error::InvalidInput(format!(
            "adaptive weights must be nonnegative, found {w}"
        )));
    }
    Ok(())
}

/// SCAD penalty in the standard parameterization, `p_lambda(theta)` for
/// `theta >= 0`: the integral of
/// `lambda * {1(theta <= lambda) + (a lambda - theta)_+ / ((a - 1) lambda) 1(theta > lambda)}`.
pub fn scad_standard(theta: f64, lambda: f64, a: f64) -> f64 {
    let theta = theta.abs();
    if theta <= lambda {
        lambda * theta
    } else if theta <= a * lambda {
        (2.0 * a * lambda * theta - theta * theta - lambda * lambda) / (2.0 * (a - 1.0))
    } else {
        (a + 1.0) * lambda * lambda / 2.0
    }
}

/// SCAD term as it enters the `(1/n)`-scaled objective: `2 * p_{lambda/2}(theta)`.
///
/// Near zero it equals `lambda * theta`, the LASSO term, and each coordinate
/// subproblem is solved by the standard SCAD thresholding rule at threshold
/// `lambda / 2` (see [`scad_univariate`]). The penalty is flat beyond
/// `a lambda / 2`.
pub fn scad_penalty(theta: f64, lambda: f64, a: f64) -> f64 {
    2.0 * scad_standard(theta, 0.5 * lambda, a)
}

/// Derivative of [`scad_penalty`] at `theta >= 0`.
pub fn scad_derivative(theta: f64, lambda: f64, a: f64) -> f64 {
    let theta = theta.abs();
    if theta <= 0.5 * lambda {
        lambda
    } else {
        ((a * lambda - 2.0 * theta) / (a - 1.0)).max(0.0)
    }
}

/// `sign(z) * max(|z| - t, 0)`. Values exactly on the threshold map to zero.
pub fn soft_threshold(z: f64, t: f64) -> f64 {
    debug_assert!(t >= 0.0);
    if z > t {
        z - t
    } else if z < -t {
        z + t
    } else {
        0.0
    }
}

/// Minimizer over `g` of `(z - g)^2 + scad_penalty(|g|, lambda, a)`.
///
/// This is the coordinate subproblem for a standardized column under the
/// `(1/n)`-scaled squared loss; it is strictly convex for `a > 2`:
///
/// ```text
/// |z| <= lambda            : soft_threshold(z, lambda / 2)
/// lambda < |z| <= a lambda/2 : ((a - 1) z - sign(z) a lambda / 2) / (a - 2)
/// |z| > a lambda / 2       : z
/// ```
pub fn scad_univariate(z: f64, lambda: f64, a: f64) -> f64 {
    debug_assert!(a > 2.0);
    let t = z.abs();
    let half = 0.5 * lambda;
    if t <= lambda {
        soft_threshold(z, half)
    } else if t <= a * half {
        ((a - 1.0) * t - a * half).copysign(z) / (a - 2.0)
    } else {
        z
    }
}
