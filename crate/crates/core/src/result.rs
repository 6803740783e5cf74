use serde::{Deserialize, Serialize};

/// Positions and intensities of the whole population after one generation.
/// Frame 0 holds the initial population.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceFrame {
    pub generation: usize,
    pub positions: Vec<Vec<f64>>,
    /// `-f(position)` for each member.
    pub intensities: Vec<f64>,
    pub best_value: f64,
}

/// Outcome of a single seeded optimization run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunResult {
    pub algorithm: String,
    pub benchmark: String,
    pub dimension: usize,
    pub seed: u64,
    pub best_position: Vec<f64>,
    pub best_value: f64,
    pub evaluations: u64,
    pub success: bool,
    pub generations: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trace: Option<Vec<TraceFrame>>,
}

impl RunResult {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("run result serializes")
    }
}
