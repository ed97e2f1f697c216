//! Penalized linear regression (LASSO, adaptive LASSO, SCAD) with tuning
//! parameter selection by prediction and stability (PASS): the ratio of summed
//! Cohen's kappa agreement between half-sample supports to summed split
//! cross-validation error, maximized over a lambda grid.
//!
//! Competitor criteria (BIC, Cp, GCV, k-fold CV) and a Monte Carlo harness for
//! the standard sparse-regression benchmark scenarios are included.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod model;
pub mod seed;
pub mod selection;
pub mod simbench;

pub use error::{Error, Result};
