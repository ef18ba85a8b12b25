//! Experiment driver behind the `atomlab` binary: argument parsing, the
//! report schema, dispatch into `atomlab-core` and a content-addressed cache.

pub mod cache;
pub mod config;
pub mod report;
pub mod run;

pub use config::{Cli, ExperimentConfig, Format};
pub use report::{Report, Status};
pub use run::{run, RunOptions};
