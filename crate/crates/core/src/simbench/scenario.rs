use crate::error::{Error, Result};
use crate::model::{default_grid, FitOptions, PenaltyKind};
use crate::selection::{Criterion, DEFAULT_PARTITIONS};
use crate::simbench::design::TrueModel;

pub const DEFAULT_REPLICATES: usize = 100;
pub const DEFAULT_CV_FOLDS: usize = 10;

/// One simulation setting: the generating model plus everything needed to
/// reproduce its table rows.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub name: String,
    pub true_model: TrueModel,
    pub n: usize,
    pub replicates: usize,
    pub grid: Vec<f64>,
    /// Number of PASS half splits.
    pub b: usize,
    pub cv_folds: usize,
    pub penalties: Vec<PenaltyKind>,
    pub criteria: Vec<Criterion>,
    pub master_seed: u64,
    pub opts: FitOptions,
}

impl ScenarioConfig {
    /// Defaults: 100 replicates, 100-point grid, 20 splits, 10 folds, all
    /// penalties and all criteria, seed 1.
    pub fn new(name: impl Into<String>, true_model: TrueModel, n: usize) -> Self {
        Self {
            name: name.into(),
            true_model,
            n,
            replicates: DEFAULT_REPLICATES,
            grid: default_grid(),
            b: DEFAULT_PARTITIONS,
            cv_folds: DEFAULT_CV_FOLDS,
            penalties: PenaltyKind::ALL.to_vec(),
            criteria: Criterion::ALL.to_vec(),
            master_seed: 1,
            opts: FitOptions::default(),
        }
    }

    pub fn p(&self) -> usize {
        self.true_model.p()
    }

    pub fn validate(&self) -> Result<()> {
        if self.replicates == 0 {
            return Err(Error::InvalidInput("replicates must be >= 1".into()));
        }
        if self.n < 4 {
            return Err(Error::InvalidInput(format!("n must be >= 4, got {}", self.n)));
        }
        if self.grid.is_empty() {
            return Err(Error::InvalidInput("lambda grid is empty".into()));
        }
        if self.b == 0 {
            return Err(Error::InvalidInput("b must be >= 1".into()));
        }
        if self.penalties.is_empty() || self.criteria.is_empty() {
            return Err(Error::InvalidInput("need at least one penalty and one criterion".into()));
        }
        self.opts.validate()
    }
}

fn preset_model(beta: Vec<f64>) -> TrueModel {
    TrueModel::new(beta, 0.5, 1.0).expect("preset models are valid")
}

fn scenario_one(n: usize) -> ScenarioConfig {
    let beta = vec![3.0, 1.5, 0.0, 0.0, 2.0, 0.0, 0.0, 0.0];
    ScenarioConfig::new(format!("I-{n}"), preset_model(beta), n)
}

fn scenario_two(model: u8) -> ScenarioConfig {
    let tail: [f64; 5] = match model {
        1 => [0.05, 0.04, 0.03, 0.02, 0.01],
        2 => [0.1, 0.08, 0.06, 0.04, 0.02],
        _ => [0.2, 0.16, 0.12, 0.08, 0.04],
    };
    let mut beta = vec![3.0, 2.0, 1.5];
    beta.extend_from_slice(&tail);
    ScenarioConfig::new(format!("II.{model}"), preset_model(beta), 40)
}

fn scenario_three(n: usize) -> ScenarioConfig {
    let p = (n as f64).sqrt().floor() as usize;
    let mut beta = vec![0.0; p];
    for (j, v) in [5.0, 4.0, 3.0, 2.0, 1.0].into_iter().enumerate() {
        beta[j] = v;
    }
    ScenarioConfig::new(format!("III-{n}"), preset_model(beta), n)
}

/// Names of the built-in settings, in table order.
pub const PRESET_NAMES: [&str; 9] = [
    "I-40", "I-60", "I-80", "II.1", "II.2", "II.3", "III-100", "III-200", "III-400",
];

/// All built-in settings: the sparse model at n = 40, 60, 80; the three
/// tapering models at n = 40; and the growing-dimension model with
/// `p = floor(sqrt(n))` at n = 100, 200, 400.
pub fn scenario_presets() -> Vec<ScenarioConfig> {
    PRESET_NAMES.iter().map(|name| preset(name).expect("known preset")).collect()
}

/// Looks up a preset by name (`I-40`, `II.2`, `III-200`, ...).
pub fn preset(name: &str) -> Result<ScenarioConfig> {
    let unknown = || Error::InvalidInput(format!("unknown scenario preset '{name}'"));
    if let Some(model) = name.strip_prefix("II.") {
        return match model {
            "1" => Ok(scenario_two(1)),
            "2" => Ok(scenario_two(2)),
            "3" => Ok(scenario_two(3)),
            _ => Err(unknown()),
        };
    }
    let (family, n) = name.split_once('-').ok_or_else(unknown)?;
    let n: usize = n.parse().map_err(|_| unknown())?;
    match (family, n) {
        ("I", 40 | 60 | 80) => Ok(scenario_one(n)),
        ("III", 100 | 200 | 400) => Ok(scenario_three(n)),
        _ => Err(unknown()),
    }
}

/// Builds a scenario from a family name and an optional sample size.
///
/// `I` and `III` accept any `n >= 4` (III sets `p = floor(sqrt(n))`); the
/// tapering models `II.1`..`II.3` default to n = 40. Full preset names are
/// also accepted.
pub fn scenario_for(family: &str, n: Option<usize>) -> Result<ScenarioConfig> {
    match (family, n) {
        ("I", Some(n)) => Ok(scenario_one(n)),
        ("I", None) => Ok(scenario_one(40)),
        ("III", Some(n)) if n >= 9 => Ok(scenario_three(n)),
        ("III", None) => Ok(scenario_three(100)),
        (name, n) => {
            let mut cfg = preset(name)?;
            if let Some(n) = n {
                cfg.n = n;
                if name.starts_with("II.") {
                    cfg.name = format!("{name}-{n}");
                }
            }
            Ok(cfg)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_match_published_settings() {
        let all = scenario_presets();
        assert_eq!(all.len(), 9);
        let two = preset("II.2").unwrap();
        assert_eq!(&two.true_model.beta()[3..], &[0.1, 0.08, 0.06, 0.04, 0.02]);
        assert_eq!(two.n, 40);
        let three = preset("III-200").unwrap();
        assert_eq!((three.n, three.p()), (200, 14));
        assert_eq!(preset("III-400").unwrap().p(), 20);
        assert_eq!(preset("III-100").unwrap().p(), 10);
        let one = preset("I-40").unwrap();
        assert_eq!(one.true_model.true_support().len(), 3);
        for cfg in &all {
            assert_eq!(cfg.replicates, 100);
            assert_eq!(cfg.b, 20);
            assert_eq!(cfg.grid.len(), 100);
            assert_eq!(cfg.true_model.rho(), 0.5);
            assert_eq!(cfg.true_model.sigma(), 1.0);
        }
    }

    #[test]
    fn family_lookup() {
        assert_eq!(scenario_for("I", Some(40)).unwrap(), preset("I-40").unwrap());
        assert_eq!(scenario_for("III", Some(200)).unwrap().p(), 14);
        assert!(scenario_for("IV", None).is_err());
        assert!(preset("I-50").is_err());
    }
}
