//! Scenario files for the cohesion engine: parsing, running and reporting.

pub mod report;
pub mod runner;
pub mod scenario;

pub use report::{Report, Verdict};
pub use runner::{run, Config, Overrides, RunOptions};
pub use scenario::{parse_scenario, Scenario, ScenarioError};

/// Exit status when the scenario does not parse.
pub const EXIT_PARSE: i32 = 3;
/// Exit status for unreadable input.
pub const EXIT_IO: i32 = 2;

/// Reads `COHESION_LAB_WORKERS`; unset or unparsable means no cap.
pub fn workers_from_env() -> Option<usize> {
    std::env::var("COHESION_LAB_WORKERS").ok()?.trim().parse().ok().filter(|&n| n > 0)
}
