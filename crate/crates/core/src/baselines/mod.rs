//! Reference optimizers used for comparison with the firefly algorithm.

pub mod ga;
pub mod pso;

pub use ga::{ga_run, GaParams, GaState};
pub use pso::{pso_run, PsoParams, PsoState};
