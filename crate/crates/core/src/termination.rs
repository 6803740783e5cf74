use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Stopping and success rules shared by every optimizer.
///
/// A run stops once the best-so-far value has improved by less than
/// `tolerance` over the last `window` generations, or after
/// `max_generations`. It counts as a success when the best value lies within
/// `success_threshold` of the known optimum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Termination {
    pub max_generations: usize,
    pub tolerance: f64,
    pub window: usize,
    pub success_threshold: f64,
}

impl Default for Termination {
    fn default() -> Self {
        Self {
            max_generations: 10_000,
            tolerance: 1e-5,
            window: 10,
            success_threshold: 1e-3,
        }
    }
}

impl Termination {
    pub fn validate(&self) -> Result<()> {
        if !(self.tolerance > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "tolerance = {} must be > 0",
                self.tolerance
            )));
        }
        if self.window == 0 {
            return Err(Error::InvalidConfig("window must be >= 1".into()));
        }
        if !(self.success_threshold >= 0.0) {
            return Err(Error::InvalidConfig(format!(
                "success threshold = {} must be >= 0",
                self.success_threshold
            )));
        }
        Ok(())
    }

    pub fn is_success(&self, best_value: f64, optimum_value: f64) -> bool {
        (best_value - optimum_value).abs() <= self.success_threshold
    }

    pub fn monitor(&self, initial_best: f64) -> StagnationMonitor {
        StagnationMonitor {
            history: vec![initial_best],
            window: self.window,
            tolerance: self.tolerance,
        }
    }
}

/// Sliding-window record of best-so-far values, one per generation.
#[derive(Debug, Clone)]
pub struct StagnationMonitor {
    history: Vec<f64>,
    window: usize,
    tolerance: f64,
}

impl StagnationMonitor {
    /// Records the best-so-far after a generation; returns true when the run
    /// should stop.
    pub fn record(&mut self, best: f64) -> bool {
        self.history.push(best);
        let g = self.history.len() - 1;
        g >= self.window && self.history[g - self.window] - best < self.tolerance
    }

    pub fn history(&self) -> &[f64] {
        &self.history
    }
}
