//! Executable verification scenarios: every presented ring, page
//! schedule, module decomposition and assembly step is encoded as data
//! here, with the checks that replay it.

mod gamma1;
mod k;
mod kup;
mod kz;
mod registry;
mod rn;
mod scalars;
mod specs;
mod tf;
mod thh;
mod tower;

pub use registry::{run_scenario, scenario_names, ScenarioOutcome, Verdict};
pub use rn::{rn, rn_table};
pub use scalars::Scalars;
pub use specs::{k_theorem_spec, kup_theorem_spec, kzp_spec, tc_theorem_spec};
pub use thh::{thh_module_spec, thh_ring, thh_ring_config, thh_ring_mu_inverted};
pub use tower::{cpn_fixed_schedule, cpn_tate_schedule, s1_fixed_schedule, s1_tate_schedule};

use specseq_engine::CheckReport;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ScenarioError {
    #[error("unknown scenario `{0}`")]
    UnknownScenario(String),
    #[error("{0} requires p >= {1}")]
    PrimeTooSmall(String, u64),
    #[error(transparent)]
    Core(#[from] graded_core::CoreError),
    #[error(transparent)]
    Engine(#[from] specseq_engine::EngineError),
    #[error(transparent)]
    Bar(#[from] bar_oracle::BarError),
    #[error("tower dimensions did not stabilize at degree {degree}: {at_k} vs {at_k_plus_2}")]
    NonStabilized {
        degree: i64,
        at_k: usize,
        at_k_plus_2: usize,
    },
}

/// Runtime parameters shared by all scenarios.
#[derive(Clone, Debug)]
pub struct Config {
    pub p: u64,
    /// Total-degree window for page replays.
    pub n_window: (i64, i64),
    /// Degree cutoff for assemblies and ring health checks.
    pub cutoff: i64,
    /// Seed for the unit coefficients of defined-up-to-unit
    /// differentials; 0 means every unit is 1.
    pub scalar_seed: u64,
    /// Enable the depth-3 towers (intended to run at p = 3).
    pub deep_pages: bool,
}

impl Config {
    pub fn new(p: u64) -> Self {
        Config {
            p,
            n_window: (-40, 40),
            cutoff: 120,
            scalar_seed: 0,
            deep_pages: false,
        }
    }
}

pub(crate) fn report_to_outcome(name: &str, checks: Vec<CheckReport>) -> ScenarioOutcome {
    let passed = checks.iter().all(|c| c.passed);
    ScenarioOutcome {
        name: name.to_string(),
        verdict: if passed { Verdict::Pass } else { Verdict::Fail },
        checks,
        notes: Vec::new(),
    }
}
