//! Experiment runner: JSON configs in, CSV/JSON artifacts and a manifest out.

pub mod config;
pub mod figures;
pub mod run;

pub use config::{parse, ExperimentConfig, FieldError, Overrides};
pub use run::{run, RunError, RunOutcome, TaskResult};

use std::path::Path;

/// Outcome of a figure reproduction: the run itself plus the judged claims.
pub struct Reproduction {
    pub outcome: RunOutcome,
    pub checks: Vec<figures::Check>,
}

impl Reproduction {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

pub fn reproduce(id: &str, overrides: &Overrides) -> Result<Reproduction, RunError> {
    let text = figures::canned(id).ok_or_else(|| {
        RunError::Config(vec![FieldError {
            path: String::new(),
            message: format!("unknown figure '{id}' (expected one of {:?})", figures::FIGURES),
        }])
    })?;
    let mut cfg = parse(text).map_err(RunError::Config)?;
    cfg.apply(overrides);
    let out = overrides.out.clone().unwrap_or_else(|| format!("out/fig-{id}"));
    let outcome = run(&cfg, Some(Path::new(&out)))?;
    let checks = figures::judge(id, &outcome.results);
    let summary = serde_json::json!({
        "figure": id,
        "pass": checks.iter().all(|c| c.pass),
        "checks": checks,
    });
    std::fs::write(outcome.out_dir.join("summary.json"), serde_json::to_string_pretty(&summary).unwrap() + "\n")?;
    Ok(Reproduction { outcome, checks })
}
