//! Data model and penalized least-squares fitting.

mod data;
mod ols;
pub mod penalty;
mod solver;
mod support;

pub use data::{center_data, Centering, Dataset};
pub use ols::ols_fit;
pub use penalty::{scad_derivative, scad_penalty, scad_standard, scad_univariate, soft_threshold, PenaltyKind, PenaltySpec, DEFAULT_SCAD_A};
pub use solver::{
    adaptive_weights, default_grid, fit_path, fit_penalized, log_grid, Coefficients, FitOptions, Solver,
};
pub(crate) use solver::validate_grid;
pub use support::{active_set, SupportSet};
