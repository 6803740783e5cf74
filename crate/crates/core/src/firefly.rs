//! Lévy-flight firefly algorithm.
//!
//! Each generation visits fireflies in rank order (brightest first). Firefly
//! `i` is compared with every `j <= i`; whenever `j` is strictly brighter,
//! `i` moves toward it and is re-evaluated at once, so later comparisons in
//! the same generation see its new intensity. The brightest firefly then
//! takes a pure Lévy step, and the swarm is re-ranked.
//!
//! A move is
//!
//! ```text
//! x_i <- x_i + beta0 * exp(-gamma * r^m) * (x_j - x_i) + alpha * S ⊙ sign ⊙ Lévy
//! ```
//!
//! followed by clamping to the search box. Intensity is `-f`, so brighter
//! means lower objective value.

use serde::{Deserialize, Serialize};

use crate::benchmarks::{BenchmarkSpec, EvalCounter, Objective};
use crate::error::{Error, Result};
use crate::result::{RunResult, TraceFrame};
use crate::rng::{self, LevyConfig, RngState};
use crate::termination::Termination;

/// Unit in which the attraction distance `r` is measured.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LengthScale {
    /// Plain Cartesian distance divided by a fixed length.
    Absolute(f64),
    /// Each coordinate difference divided by that coordinate's domain width,
    /// so `gamma` is dimensionless with respect to the search box.
    DomainWidth,
}

/// Constants of the firefly algorithm.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FireflyParams {
    /// Attractiveness at zero distance.
    pub beta0: f64,
    /// Light absorption coefficient.
    pub gamma: f64,
    /// Weight of the Lévy perturbation, in `[0, 1]`.
    pub alpha: f64,
    /// Lévy tail exponent, in `(1, 3]`.
    pub lambda: f64,
    /// Exponent of the distance in the attractiveness, `>= 1`.
    pub m: f64,
    /// Smallest Lévy step before scaling.
    pub t_min: f64,
    /// Per-dimension step scales; `None` means a tenth of each domain width.
    pub scales: Option<Vec<f64>>,
    pub length_scale: LengthScale,
    pub population: usize,
    pub termination: Termination,
    /// Keep a snapshot of every generation in the result.
    pub record_trace: bool,
}

impl Default for FireflyParams {
    fn default() -> Self {
        Self {
            beta0: 1.0,
            gamma: 1.0,
            alpha: 0.2,
            lambda: 1.5,
            m: 2.0,
            t_min: rng::DEFAULT_T_MIN,
            scales: None,
            length_scale: LengthScale::DomainWidth,
            population: 40,
            termination: Termination::default(),
            record_trace: false,
        }
    }
}

impl FireflyParams {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidConfig(msg));
        if !(self.alpha >= 0.0 && self.alpha <= 1.0) {
            return bad(format!("alpha = {} must lie in [0, 1]", self.alpha));
        }
        if !(self.gamma >= 0.0) {
            return bad(format!("gamma = {} must be >= 0", self.gamma));
        }
        if !(self.m >= 1.0) {
            return bad(format!("m = {} must be >= 1", self.m));
        }
        if !(self.beta0 > 0.0 && self.beta0.is_finite()) {
            return bad(format!("beta0 = {} must be > 0", self.beta0));
        }
        if self.population < 2 {
            return bad(format!("population = {} must be >= 2", self.population));
        }
        if let LengthScale::Absolute(l) = self.length_scale {
            if !(l > 0.0 && l.is_finite()) {
                return bad(format!("length scale = {l} must be > 0"));
            }
        }
        if let Some(s) = &self.scales {
            if let Some(v) = s.iter().find(|v| !(**v > 0.0)) {
                return bad(format!("scale {v} must be > 0"));
            }
        }
        self.levy_config()?;
        self.termination.validate()
    }

    pub fn levy_config(&self) -> Result<LevyConfig> {
        LevyConfig::new(self.lambda, self.t_min)
    }

    /// `gamma^(-1/m)`, the distance over which attractiveness decays;
    /// `None` when `gamma == 0`.
    pub fn characteristic_length(&self) -> Option<f64> {
        (self.gamma > 0.0).then(|| self.gamma.powf(-1.0 / self.m))
    }
}

fn decay(beta0: f64, gamma: f64, m: f64, r: f64) -> f64 {
    let rm = if m == 2.0 { r * r } else { r.powf(m) };
    beta0 * (-gamma * rm).exp()
}

/// `beta0 * exp(-gamma * r^m)`.
pub fn attractiveness(r: f64, params: &FireflyParams) -> f64 {
    decay(params.beta0, params.gamma, params.m, r)
}

/// Euclidean distance between two positions.
pub fn distance(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch {
            expected: a.len(),
            found: b.len(),
        });
    }
    Ok(a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt())
}

/// Move parameters resolved against a concrete search box.
#[derive(Debug, Clone)]
pub struct MoveRule {
    beta0: f64,
    gamma: f64,
    m: f64,
    alpha: f64,
    levy: LevyConfig,
    scales: Vec<f64>,
    inv_length: Vec<f64>,
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl MoveRule {
    pub fn new(params: &FireflyParams, lower: &[f64], upper: &[f64]) -> Result<Self> {
        params.validate()?;
        rng::check_bounds(lower, upper)?;
        let d = lower.len();
        let widths: Vec<f64> = lower.iter().zip(upper).map(|(l, u)| u - l).collect();
        let scales = match &params.scales {
            Some(s) if s.len() != d => {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    found: s.len(),
                })
            }
            Some(s) => s.clone(),
            None => widths.iter().map(|w| w / 10.0).collect(),
        };
        let inv_length = match params.length_scale {
            LengthScale::Absolute(l) => vec![1.0 / l; d],
            LengthScale::DomainWidth => widths.iter().map(|w| 1.0 / w).collect(),
        };
        Ok(Self {
            beta0: params.beta0,
            gamma: params.gamma,
            m: params.m,
            alpha: params.alpha,
            levy: params.levy_config()?,
            scales,
            inv_length,
            lower: lower.to_vec(),
            upper: upper.to_vec(),
        })
    }

    pub fn for_spec(params: &FireflyParams, spec: &BenchmarkSpec) -> Result<Self> {
        Self::new(params, spec.lower(), spec.upper())
    }

    pub fn dimension(&self) -> usize {
        self.lower.len()
    }

    pub fn scales(&self) -> &[f64] {
        &self.scales
    }

    /// Distance used inside the attractiveness, in units of the length scale.
    pub fn attraction_distance(&self, a: &[f64], b: &[f64]) -> f64 {
        a.iter()
            .zip(b)
            .zip(&self.inv_length)
            .map(|((x, y), s)| {
                let d = (x - y) * s;
                d * d
            })
            .sum::<f64>()
            .sqrt()
    }

    /// Factor multiplying `x_j - x_i` in a move from `a` toward `b`.
    pub fn attraction_coefficient(&self, a: &[f64], b: &[f64]) -> f64 {
        decay(
            self.beta0,
            self.gamma,
            self.m,
            self.attraction_distance(a, b),
        )
    }

    fn perturbation(&self, rng: &mut RngState) -> Result<Vec<f64>> {
        rng::levy_perturbation(self.dimension(), self.alpha, &self.scales, &self.levy, rng)
    }

    fn clamp(&self, x: &mut [f64]) {
        for ((v, l), u) in x.iter_mut().zip(&self.lower).zip(&self.upper) {
            *v = v.clamp(*l, *u);
        }
    }

    fn check_dimension(&self, x: &[f64]) -> Result<()> {
        if x.len() == self.dimension() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.dimension(),
                found: x.len(),
            })
        }
    }
}

/// A candidate solution with its cached intensity `-f(position)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Firefly {
    pub position: Vec<f64>,
    pub intensity: f64,
}

impl Firefly {
    pub fn evaluated<O: Objective + ?Sized>(
        position: Vec<f64>,
        objective: &O,
        counter: &mut EvalCounter,
    ) -> Result<Self> {
        let f = counter.evaluate(objective, &position)?;
        Ok(Self {
            position,
            intensity: -f,
        })
    }

    /// Objective value at the current position.
    pub fn value(&self) -> f64 {
        -self.intensity
    }
}

/// New position for `i` after attraction toward the strictly brighter `j`.
pub fn move_toward(
    i: &Firefly,
    j: &Firefly,
    rule: &MoveRule,
    rng: &mut RngState,
) -> Result<Vec<f64>> {
    rule.check_dimension(&i.position)?;
    rule.check_dimension(&j.position)?;
    if !(j.intensity > i.intensity) {
        return Err(Error::PreconditionViolation(format!(
            "target intensity {} is not brighter than {}",
            j.intensity, i.intensity
        )));
    }
    let beta = rule.attraction_coefficient(&i.position, &j.position);
    let noise = rule.perturbation(rng)?;
    let mut x: Vec<f64> = i
        .position
        .iter()
        .zip(&j.position)
        .zip(&noise)
        .map(|((xi, xj), e)| xi + beta * (xj - xi) + e)
        .collect();
    rule.clamp(&mut x);
    Ok(x)
}

/// New position for `i` after a pure Lévy step.
pub fn random_walk(i: &Firefly, rule: &MoveRule, rng: &mut RngState) -> Result<Vec<f64>> {
    rule.check_dimension(&i.position)?;
    let noise = rule.perturbation(rng)?;
    let mut x: Vec<f64> = i.position.iter().zip(&noise).map(|(v, e)| v + e).collect();
    rule.clamp(&mut x);
    Ok(x)
}

fn rank_key(intensity: f64) -> f64 {
    if intensity.is_nan() {
        f64::NEG_INFINITY
    } else {
        intensity
    }
}

/// Population of fireflies, kept ranked brightest first, with the best
/// value ever evaluated.
#[derive(Debug, Clone, PartialEq)]
pub struct Swarm {
    fireflies: Vec<Firefly>,
    generation: usize,
    best_position: Vec<f64>,
    best_value: f64,
}

impl Swarm {
    pub fn new(fireflies: Vec<Firefly>) -> Result<Self> {
        let first = fireflies.first().ok_or(Error::EmptyInput)?;
        let mut swarm = Self {
            best_position: first.position.clone(),
            best_value: first.value(),
            fireflies,
            generation: 0,
        };
        for k in 1..swarm.fireflies.len() {
            let (x, v) = (
                swarm.fireflies[k].position.clone(),
                swarm.fireflies[k].value(),
            );
            swarm.observe(&x, v);
        }
        swarm.rank();
        Ok(swarm)
    }

    /// Evaluates each position once and builds the swarm.
    pub fn evaluate<O: Objective + ?Sized>(
        positions: Vec<Vec<f64>>,
        objective: &O,
        counter: &mut EvalCounter,
    ) -> Result<Self> {
        let fireflies = positions
            .into_iter()
            .map(|x| Firefly::evaluated(x, objective, counter))
            .collect::<Result<Vec<_>>>()?;
        Self::new(fireflies)
    }

    pub fn fireflies(&self) -> &[Firefly] {
        &self.fireflies
    }

    pub fn len(&self) -> usize {
        self.fireflies.len()
    }

    pub fn is_empty(&self) -> bool {
        self.fireflies.is_empty()
    }

    pub fn generation(&self) -> usize {
        self.generation
    }

    pub fn best_position(&self) -> &[f64] {
        &self.best_position
    }

    pub fn best_value(&self) -> f64 {
        self.best_value
    }

    /// Stable sort, brightest first; equal intensities keep their order.
    pub fn rank(&mut self) {
        self.fireflies
            .sort_by(|a, b| rank_key(b.intensity).total_cmp(&rank_key(a.intensity)));
    }

    fn observe(&mut self, x: &[f64], value: f64) {
        if value < self.best_value || self.best_value.is_nan() {
            self.best_value = value;
            self.best_position.clear();
            self.best_position.extend_from_slice(x);
        }
    }

    fn brightest_index(&self) -> usize {
        let mut best = 0;
        for (k, f) in self.fireflies.iter().enumerate().skip(1) {
            if rank_key(f.intensity) > rank_key(self.fireflies[best].intensity) {
                best = k;
            }
        }
        best
    }

    pub fn snapshot(&self) -> TraceFrame {
        TraceFrame {
            generation: self.generation,
            positions: self.fireflies.iter().map(|f| f.position.clone()).collect(),
            intensities: self.fireflies.iter().map(|f| f.intensity).collect(),
            best_value: self.best_value,
        }
    }
}

/// Number of position updates performed in one generation. Every update
/// costs exactly one objective evaluation.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct StepReport {
    pub moves: u64,
    pub walks: u64,
}

impl StepReport {
    pub fn evaluations(&self) -> u64 {
        self.moves + self.walks
    }
}

/// Runs one generation of the double loop in place.
pub fn generation_step<O: Objective + ?Sized>(
    swarm: &mut Swarm,
    rule: &MoveRule,
    objective: &O,
    counter: &mut EvalCounter,
    rng: &mut RngState,
) -> Result<StepReport> {
    swarm.rank();
    let mut report = StepReport::default();
    let n = swarm.fireflies.len();
    for i in 0..n {
        for j in 0..=i {
            if swarm.fireflies[j].intensity > swarm.fireflies[i].intensity {
                let x = move_toward(&swarm.fireflies[i], &swarm.fireflies[j], rule, rng)?;
                let f = counter.evaluate(objective, &x)?;
                swarm.observe(&x, f);
                swarm.fireflies[i] = Firefly {
                    position: x,
                    intensity: -f,
                };
                report.moves += 1;
            }
        }
    }
    let b = swarm.brightest_index();
    let x = random_walk(&swarm.fireflies[b], rule, rng)?;
    let f = counter.evaluate(objective, &x)?;
    swarm.observe(&x, f);
    swarm.fireflies[b] = Firefly {
        position: x,
        intensity: -f,
    };
    report.walks += 1;
    swarm.rank();
    swarm.generation += 1;
    Ok(report)
}

/// Runs the algorithm on `spec` from `seed` until stagnation or the
/// generation cap.
pub fn run(spec: &BenchmarkSpec, params: &FireflyParams, seed: u64) -> Result<RunResult> {
    let rule = MoveRule::for_spec(params, spec)?;
    let mut rng = RngState::new(seed);
    let mut counter = EvalCounter::new();
    let positions = (0..params.population)
        .map(|_| rng::uniform_in_bounds(spec.lower(), spec.upper(), &mut rng))
        .collect::<Result<Vec<_>>>()?;
    let mut swarm = Swarm::evaluate(positions, spec, &mut counter)?;
    let mut trace = params.record_trace.then(|| vec![swarm.snapshot()]);
    let mut monitor = params.termination.monitor(swarm.best_value());

    while swarm.generation() < params.termination.max_generations {
        generation_step(&mut swarm, &rule, spec, &mut counter, &mut rng)?;
        if let Some(t) = trace.as_mut() {
            t.push(swarm.snapshot());
        }
        if monitor.record(swarm.best_value()) {
            break;
        }
    }

    Ok(RunResult {
        algorithm: "lfa".into(),
        benchmark: spec.name().to_string(),
        dimension: spec.dimension(),
        seed,
        best_position: swarm.best_position().to_vec(),
        best_value: swarm.best_value(),
        evaluations: counter.count(),
        success: params
            .termination
            .is_success(swarm.best_value(), spec.optimum_value()),
        generations: swarm.generation(),
        trace,
    })
}
