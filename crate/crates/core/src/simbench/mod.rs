//! Monte Carlo benchmark: synthetic data, replicated selection experiments
//! and table output.

mod design;
mod report;
mod run;
mod scenario;

pub use design::{ar1_covariance, gen_ar1_design, gen_response, rpe, zero_counts, TrueModel};
pub use report::{
    read_summary_csv, render_table, summary_records, write_replicate_csv, write_summary_csv, ReplicateRecord, SummaryRecord,
};
pub use run::{
    replicate_data, run_replicate, run_scenario, simulate, summarize, CellMetrics, CellResult, CellSummary,
    ReplicateResult, SummaryTable,
};
pub use scenario::{
    preset, scenario_for, scenario_presets, ScenarioConfig, DEFAULT_CV_FOLDS, DEFAULT_REPLICATES, PRESET_NAMES,
};
