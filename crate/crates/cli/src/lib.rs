//! Scenario parsing and sweep execution for the `jsmimo` binary.

pub mod runner;
pub mod scenario;

pub use runner::{run_scenario, write_csv, Row, RunOptions, CSV_HEADER};
pub use scenario::{
    parse_config, parse_scenario, parse_scenario_over, Method, Preset, Scenario, ScenarioError, SeRoute, SweepAxis,
};
