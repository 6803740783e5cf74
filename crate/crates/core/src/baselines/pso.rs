//! Particle swarm optimization in its original form: no inertia weight,
//! velocities clamped per dimension.
//!
//! ```text
//! v <- clamp(v + c1 r1 (pbest - x) + c2 r2 (gbest - x), -vmax, vmax)
//! x <- clamp(x + v, lower, upper)
//! ```
//!
//! `r1` and `r2` are drawn per particle and per dimension. Velocities start
//! at zero and `gbest` is refreshed once per generation.

use serde::{Deserialize, Serialize};

use crate::benchmarks::{BenchmarkSpec, EvalCounter, Objective};
use crate::error::{Error, Result};
use crate::result::{RunResult, TraceFrame};
use crate::rng::{self, RngState};
use crate::termination::Termination;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PsoParams {
    pub population: usize,
    /// Cognitive weight.
    pub c1: f64,
    /// Social weight.
    pub c2: f64,
    /// Velocity cap as a fraction of each domain width.
    pub velocity_cap: f64,
    pub termination: Termination,
    pub record_trace: bool,
}

impl Default for PsoParams {
    fn default() -> Self {
        Self {
            population: 40,
            c1: 2.0,
            c2: 2.0,
            velocity_cap: 1.0,
            termination: Termination::default(),
            record_trace: false,
        }
    }
}

impl PsoParams {
    pub fn validate(&self) -> Result<()> {
        if self.population == 0 {
            return Err(Error::InvalidConfig("population must be >= 1".into()));
        }
        if !(self.c1 >= 0.0 && self.c2 >= 0.0) {
            return Err(Error::InvalidConfig(format!(
                "c1 = {}, c2 = {} must be >= 0",
                self.c1, self.c2
            )));
        }
        if !(self.velocity_cap > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "velocity cap = {} must be > 0",
                self.velocity_cap
            )));
        }
        self.termination.validate()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Particle {
    pub position: Vec<f64>,
    pub velocity: Vec<f64>,
    pub value: f64,
    pub best_position: Vec<f64>,
    pub best_value: f64,
}

/// Swarm state between generations.
#[derive(Debug, Clone)]
pub struct PsoState {
    particles: Vec<Particle>,
    global_position: Vec<f64>,
    global_value: f64,
    vmax: Vec<f64>,
    generation: usize,
}

impl PsoState {
    /// Evaluates the initial positions; velocities start at zero.
    pub fn new(
        spec: &BenchmarkSpec,
        params: &PsoParams,
        positions: Vec<Vec<f64>>,
        counter: &mut EvalCounter,
    ) -> Result<Self> {
        params.validate()?;
        if positions.is_empty() {
            return Err(Error::EmptyInput);
        }
        let d = spec.dimension();
        let mut particles = Vec::with_capacity(positions.len());
        for x in positions {
            let value = counter.evaluate(spec, &x)?;
            particles.push(Particle {
                velocity: vec![0.0; d],
                best_position: x.clone(),
                position: x,
                value,
                best_value: value,
            });
        }
        let mut gi = 0;
        for (k, p) in particles.iter().enumerate() {
            if p.best_value < particles[gi].best_value {
                gi = k;
            }
        }
        Ok(Self {
            global_position: particles[gi].best_position.clone(),
            global_value: particles[gi].best_value,
            vmax: spec
                .widths()
                .iter()
                .map(|w| w * params.velocity_cap)
                .collect(),
            particles,
            generation: 0,
        })
    }

    pub fn particles(&self) -> &[Particle] {
        &self.particles
    }

    pub fn best_value(&self) -> f64 {
        self.global_value
    }

    pub fn best_position(&self) -> &[f64] {
        &self.global_position
    }

    pub fn generation(&self) -> usize {
        self.generation
    }

    /// One synchronous generation: every particle moves and is evaluated once.
    pub fn step<O: Objective + ?Sized>(
        &mut self,
        spec: &BenchmarkSpec,
        params: &PsoParams,
        objective: &O,
        counter: &mut EvalCounter,
        rng: &mut RngState,
    ) -> Result<()> {
        let (lower, upper) = (spec.lower(), spec.upper());
        for p in &mut self.particles {
            for k in 0..p.position.len() {
                let r1 = rng.uniform();
                let r2 = rng.uniform();
                let v = p.velocity[k]
                    + params.c1 * r1 * (p.best_position[k] - p.position[k])
                    + params.c2 * r2 * (self.global_position[k] - p.position[k]);
                p.velocity[k] = v.clamp(-self.vmax[k], self.vmax[k]);
                p.position[k] = (p.position[k] + p.velocity[k]).clamp(lower[k], upper[k]);
            }
            p.value = counter.evaluate(objective, &p.position)?;
            if p.value < p.best_value {
                p.best_value = p.value;
                p.best_position.clone_from(&p.position);
            }
        }
        for p in &self.particles {
            if p.best_value < self.global_value {
                self.global_value = p.best_value;
                self.global_position.clone_from(&p.best_position);
            }
        }
        self.generation += 1;
        Ok(())
    }

    pub fn snapshot(&self) -> TraceFrame {
        TraceFrame {
            generation: self.generation,
            positions: self.particles.iter().map(|p| p.position.clone()).collect(),
            intensities: self.particles.iter().map(|p| -p.value).collect(),
            best_value: self.global_value,
        }
    }
}

/// Runs PSO from uniformly random initial positions.
pub fn pso_run(spec: &BenchmarkSpec, params: &PsoParams, seed: u64) -> Result<RunResult> {
    let mut rng = RngState::new(seed);
    let positions = (0..params.population)
        .map(|_| rng::uniform_in_bounds(spec.lower(), spec.upper(), &mut rng))
        .collect::<Result<Vec<_>>>()?;
    pso_run_from(spec, params, positions, &mut rng, seed)
}

/// Runs PSO from the given initial positions.
pub fn pso_run_from(
    spec: &BenchmarkSpec,
    params: &PsoParams,
    positions: Vec<Vec<f64>>,
    rng: &mut RngState,
    seed: u64,
) -> Result<RunResult> {
    let mut counter = EvalCounter::new();
    let mut state = PsoState::new(spec, params, positions, &mut counter)?;
    let mut trace = params.record_trace.then(|| vec![state.snapshot()]);
    let mut monitor = params.termination.monitor(state.best_value());
    while state.generation() < params.termination.max_generations {
        state.step(spec, params, spec, &mut counter, rng)?;
        if let Some(t) = trace.as_mut() {
            t.push(state.snapshot());
        }
        if monitor.record(state.best_value()) {
            break;
        }
    }
    Ok(RunResult {
        algorithm: "pso".into(),
        benchmark: spec.name().to_string(),
        dimension: spec.dimension(),
        seed,
        best_position: state.best_position().to_vec(),
        best_value: state.best_value(),
        evaluations: counter.count(),
        success: params
            .termination
            .is_success(state.best_value(), spec.optimum_value()),
        generations: state.generation(),
        trace,
    })
}
