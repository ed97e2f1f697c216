//! Tuning parameter selection: PASS and the competitor criteria.

mod criteria;
mod kappa;
mod pass;
mod split;

pub use criteria::{
    bic_select, cp_select, final_model_from_fit, gcv_select, kfold_assignment, kfold_cv_select, ols_noise_variance,
    select_final_model, Criterion, CriterionScore, FinalModel, PathSummary,
};
pub use kappa::cohens_kappa;
pub use pass::{aggregate_partitions, evaluate_partition, pass_score, PartitionOutcome, PassResult, DEFAULT_PARTITIONS};
pub use split::{cv_error, random_half_split, SplitPair};
