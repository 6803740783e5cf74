//! Real-coded generational genetic algorithm without elitism.
//!
//! Parents come from size-k tournaments (sampled with replacement, ties to the
//! first entrant). Each pair undergoes uniform crossover with probability
//! `crossover_probability`; each gene of each child then mutates with
//! probability `mutation_probability` by a Gaussian kick of standard deviation
//! `mutation_scale * width`, clamped to the domain. The offspring replace the
//! whole population.

use serde::{Deserialize, Serialize};

use crate::benchmarks::{BenchmarkSpec, EvalCounter, Objective};
use crate::error::{Error, Result};
use crate::result::{RunResult, TraceFrame};
use crate::rng::{self, RngState};
use crate::termination::Termination;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GaParams {
    pub population: usize,
    pub mutation_probability: f64,
    pub crossover_probability: f64,
    pub tournament_size: usize,
    /// Mutation standard deviation as a fraction of each domain width.
    pub mutation_scale: f64,
    pub termination: Termination,
    pub record_trace: bool,
}

impl Default for GaParams {
    fn default() -> Self {
        Self {
            population: 40,
            mutation_probability: 0.05,
            crossover_probability: 0.95,
            tournament_size: 2,
            mutation_scale: 0.1,
            termination: Termination::default(),
            record_trace: false,
        }
    }
}

impl GaParams {
    pub fn validate(&self) -> Result<()> {
        let unit = |p: f64| (0.0..=1.0).contains(&p);
        if self.population == 0 {
            return Err(Error::InvalidConfig("population must be >= 1".into()));
        }
        if !unit(self.mutation_probability) || !unit(self.crossover_probability) {
            return Err(Error::InvalidConfig(format!(
                "probabilities ({}, {}) must lie in [0, 1]",
                self.mutation_probability, self.crossover_probability
            )));
        }
        if self.tournament_size == 0 {
            return Err(Error::InvalidConfig("tournament size must be >= 1".into()));
        }
        if !(self.mutation_scale >= 0.0) {
            return Err(Error::InvalidConfig(format!(
                "mutation scale = {} must be >= 0",
                self.mutation_scale
            )));
        }
        self.termination.validate()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Individual {
    pub genome: Vec<f64>,
    pub value: f64,
    /// Generation in which this individual was created.
    pub born: usize,
}

#[derive(Debug, Clone)]
pub struct GaState {
    population: Vec<Individual>,
    best_position: Vec<f64>,
    best_value: f64,
    sigma: Vec<f64>,
    generation: usize,
}

impl GaState {
    pub fn new(
        spec: &BenchmarkSpec,
        params: &GaParams,
        genomes: Vec<Vec<f64>>,
        counter: &mut EvalCounter,
    ) -> Result<Self> {
        params.validate()?;
        if genomes.is_empty() {
            return Err(Error::EmptyInput);
        }
        let population = genomes
            .into_iter()
            .map(|g| {
                let value = counter.evaluate(spec, &g)?;
                Ok(Individual {
                    genome: g,
                    value,
                    born: 0,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let mut state = Self {
            best_position: population[0].genome.clone(),
            best_value: population[0].value,
            sigma: spec
                .widths()
                .iter()
                .map(|w| w * params.mutation_scale)
                .collect(),
            population,
            generation: 0,
        };
        state.update_best();
        Ok(state)
    }

    pub fn population(&self) -> &[Individual] {
        &self.population
    }

    pub fn best_value(&self) -> f64 {
        self.best_value
    }

    pub fn best_position(&self) -> &[f64] {
        &self.best_position
    }

    pub fn generation(&self) -> usize {
        self.generation
    }

    fn update_best(&mut self) {
        for ind in &self.population {
            if ind.value < self.best_value {
                self.best_value = ind.value;
                self.best_position.clone_from(&ind.genome);
            }
        }
    }

    fn tournament(&self, size: usize, rng: &mut RngState) -> usize {
        let mut winner = rng.index(self.population.len());
        for _ in 1..size {
            let c = rng.index(self.population.len());
            if self.population[c].value < self.population[winner].value {
                winner = c;
            }
        }
        winner
    }

    fn mutate(
        &self,
        genome: &mut [f64],
        params: &GaParams,
        spec: &BenchmarkSpec,
        rng: &mut RngState,
    ) {
        for (k, g) in genome.iter_mut().enumerate() {
            if rng.coin(params.mutation_probability) {
                *g = (*g + rng.normal(0.0, self.sigma[k])).clamp(spec.lower()[k], spec.upper()[k]);
            }
        }
    }

    /// Builds and evaluates a complete new population, discarding the old one.
    pub fn step<O: Objective + ?Sized>(
        &mut self,
        spec: &BenchmarkSpec,
        params: &GaParams,
        objective: &O,
        counter: &mut EvalCounter,
        rng: &mut RngState,
    ) -> Result<()> {
        let n = self.population.len();
        let born = self.generation + 1;
        let mut next = Vec::with_capacity(n);
        while next.len() < n {
            let a = self.tournament(params.tournament_size, rng);
            let b = self.tournament(params.tournament_size, rng);
            let mut c1 = self.population[a].genome.clone();
            let mut c2 = self.population[b].genome.clone();
            if rng.coin(params.crossover_probability) {
                for k in 0..c1.len() {
                    if rng.coin(0.5) {
                        std::mem::swap(&mut c1[k], &mut c2[k]);
                    }
                }
            }
            for mut child in [c1, c2] {
                if next.len() == n {
                    break;
                }
                self.mutate(&mut child, params, spec, rng);
                let value = counter.evaluate(objective, &child)?;
                next.push(Individual {
                    genome: child,
                    value,
                    born,
                });
            }
        }
        self.population = next;
        self.generation = born;
        self.update_best();
        Ok(())
    }

    pub fn snapshot(&self) -> TraceFrame {
        TraceFrame {
            generation: self.generation,
            positions: self.population.iter().map(|i| i.genome.clone()).collect(),
            intensities: self.population.iter().map(|i| -i.value).collect(),
            best_value: self.best_value,
        }
    }
}

pub fn ga_run(spec: &BenchmarkSpec, params: &GaParams, seed: u64) -> Result<RunResult> {
    let mut rng = RngState::new(seed);
    let genomes = (0..params.population)
        .map(|_| rng::uniform_in_bounds(spec.lower(), spec.upper(), &mut rng))
        .collect::<Result<Vec<_>>>()?;
    ga_run_from(spec, params, genomes, &mut rng, seed)
}

pub fn ga_run_from(
    spec: &BenchmarkSpec,
    params: &GaParams,
    genomes: Vec<Vec<f64>>,
    rng: &mut RngState,
    seed: u64,
) -> Result<RunResult> {
    let mut counter = EvalCounter::new();
    let mut state = GaState::new(spec, params, genomes, &mut counter)?;
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
        algorithm: "ga".into(),
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
