//! Lévy-flight firefly optimizer with particle swarm and genetic algorithm
//! baselines, a benchmark function registry and a repeated-trial harness.
//!
//! ```
//! use levy_firefly::{benchmarks, firefly};
//!
//! let spec = benchmarks::lookup("ackley", 2).unwrap();
//! let result = firefly::run(&spec, &firefly::FireflyParams::default(), 7).unwrap();
//! assert!(result.evaluations >= 40);
//! ```

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod baselines;
pub mod benchmarks;
pub mod error;
pub mod firefly;
pub mod harness;
pub mod result;
pub mod rng;
pub mod termination;

pub use benchmarks::{lookup, BenchmarkSpec, EvalCounter, Function, Objective};
pub use error::{Error, Result};
pub use firefly::{FireflyParams, LengthScale};
pub use harness::{run_trials, Algorithm, AlgorithmParams, ReportFormat, TrialStats};
pub use result::{RunResult, TraceFrame};
pub use rng::{LevyConfig, RngState};
pub use termination::Termination;
