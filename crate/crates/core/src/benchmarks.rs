//! Benchmark objectives, their conventional domains and known optima.
//!
//! | name          | default d | bounds               | f*         | minimizer                   |
//! |---------------|-----------|----------------------|------------|-----------------------------|
//! | `ackley`      | 128       | [-32.768, 32.768]    | 0          | origin                      |
//! | `yang`        | 16        | [-2π, 2π]            | 0          | origin                      |
//! | `rosenbrock`  | 16        | [-5, 10]             | 0          | (1, ..., 1)                 |
//! | `dejong`      | 256       | [-5.12, 5.12]        | 0          | origin                      |
//! | `schwefel`    | 128       | [-500, 500]          | 0          | x_i ≈ 420.9687              |
//! | `rastrigin`   | 16        | [-5.12, 5.12]        | 0          | origin                      |
//! | `easom`       | 2 (only)  | [-100, 100]          | -1         | (π, π)                      |
//! | `griewank`    | 16        | [-600, 600]          | 0          | origin                      |
//! | `michalewicz` | 16        | [0, π]               | computed   | computed per coordinate     |
//! | `shubert`     | 2 (only)  | [-10, 10]            | ≈ -186.7309| 18 global minima, no hint   |
//!
//! Michalewicz uses steepness 10 and is separable, so its optimum is found by
//! exact one-dimensional minimization of each term. Shubert's optimum is the
//! product of the extreme values of its one-dimensional factor.

use std::f64::consts::{PI, TAU};
use std::fmt;
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const ACKLEY_BOUND: f64 = 32.768;
const MICHALEWICZ_STEEPNESS: i32 = 10;

fn non_empty(x: &[f64]) -> Result<()> {
    if x.is_empty() {
        Err(Error::EmptyInput)
    } else {
        Ok(())
    }
}

/// Ackley function, minimum 0 at the origin.
pub fn ackley(x: &[f64]) -> Result<f64> {
    non_empty(x)?;
    Ok(ackley_unchecked(x))
}

fn ackley_unchecked(x: &[f64]) -> f64 {
    let d = x.len() as f64;
    let mean_sq = x.iter().map(|v| v * v).sum::<f64>() / d;
    let mean_cos = x.iter().map(|v| (TAU * v).cos()).sum::<f64>() / d;
    // -20 e^{-0.2 sqrt(ms)} - e^{mc} + 20 + e, grouped so each bracket is >= 0
    20.0 * (1.0 - (-0.2 * mean_sq.sqrt()).exp()) + (1f64.exp() - mean_cos.exp())
}

/// Yang's forest function `(Σ|x_i|) exp(-Σ sin(x_i²))` on `[-2π, 2π]^d`.
pub fn yang_forest(x: &[f64]) -> Result<f64> {
    non_empty(x)?;
    check_domain("yang", x, -TAU, TAU)?;
    Ok(yang_forest_unchecked(x))
}

fn yang_forest_unchecked(x: &[f64]) -> f64 {
    let abs_sum: f64 = x.iter().map(|v| v.abs()).sum();
    let sin_sum: f64 = x.iter().map(|v| (v * v).sin()).sum();
    abs_sum * (-sin_sum).exp()
}

fn check_domain(function: &str, x: &[f64], lower: f64, upper: f64) -> Result<()> {
    match x
        .iter()
        .enumerate()
        .find(|(_, v)| !(**v >= lower && **v <= upper))
    {
        Some((index, &value)) => Err(Error::OutOfDomain {
            function: function.to_string(),
            index,
            value,
        }),
        None => Ok(()),
    }
}

fn rosenbrock(x: &[f64]) -> f64 {
    x.windows(2)
        .map(|w| 100.0 * (w[1] - w[0] * w[0]).powi(2) + (1.0 - w[0]).powi(2))
        .sum()
}

fn sphere(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum()
}

fn schwefel(x: &[f64]) -> f64 {
    let peak = schwefel_peak();
    x.iter()
        .map(|&v| peak.value - v * v.abs().sqrt().sin())
        .sum()
}

fn rastrigin(x: &[f64]) -> f64 {
    x.iter()
        .map(|v| v * v - 10.0 * (TAU * v).cos() + 10.0)
        .sum()
}

fn easom(x: &[f64]) -> f64 {
    let (a, b) = (x[0], x[1]);
    -a.cos() * b.cos() * (-((a - PI).powi(2) + (b - PI).powi(2))).exp()
}

fn griewank(x: &[f64]) -> f64 {
    let sum: f64 = x.iter().map(|v| v * v).sum::<f64>() / 4000.0;
    let prod: f64 = x
        .iter()
        .enumerate()
        .map(|(i, v)| (v / ((i + 1) as f64).sqrt()).cos())
        .product();
    1.0 + sum - prod
}

fn michalewicz_term(i: usize, v: f64) -> f64 {
    -v.sin()
        * ((i as f64) * v * v / PI)
            .sin()
            .powi(2 * MICHALEWICZ_STEEPNESS)
}

fn michalewicz(x: &[f64]) -> f64 {
    x.iter()
        .enumerate()
        .map(|(k, &v)| michalewicz_term(k + 1, v))
        .sum()
}

fn shubert_factor(v: f64) -> f64 {
    (1..=5)
        .map(|j| {
            let j = j as f64;
            j * ((j + 1.0) * v + j).cos()
        })
        .sum()
}

fn shubert(x: &[f64]) -> f64 {
    x.iter().map(|&v| shubert_factor(v)).product()
}

/// Minimizes `g` on `[lower, upper]` by a dense grid followed by golden-section
/// refinement of the best grid cell.
fn minimize_1d(g: impl Fn(f64) -> f64, lower: f64, upper: f64, grid: usize) -> (f64, f64) {
    let step = (upper - lower) / grid as f64;
    let (mut best_x, mut best_v) = (lower, g(lower));
    for k in 1..=grid {
        let x = lower + step * k as f64;
        let v = g(x);
        if v < best_v {
            best_x = x;
            best_v = v;
        }
    }
    let (mut a, mut b) = ((best_x - step).max(lower), (best_x + step).min(upper));
    let ratio = (5f64.sqrt() - 1.0) / 2.0;
    for _ in 0..200 {
        let c = b - ratio * (b - a);
        let d = a + ratio * (b - a);
        if g(c) < g(d) {
            b = d;
        } else {
            a = c;
        }
    }
    let mid = 0.5 * (a + b);
    if g(mid) < best_v {
        (mid, g(mid))
    } else {
        (best_x, best_v)
    }
}

struct SchwefelPeak {
    location: f64,
    value: f64,
}

fn schwefel_peak() -> &'static SchwefelPeak {
    static PEAK: std::sync::OnceLock<SchwefelPeak> = std::sync::OnceLock::new();
    PEAK.get_or_init(|| {
        let (location, _) = minimize_1d(|v| -(v * v.sqrt().sin()), 400.0, 450.0, 5_000);
        SchwefelPeak {
            location,
            value: location * location.abs().sqrt().sin(),
        }
    })
}

/// Minimizer of the i-th (1-based) Michalewicz term, cached.
fn michalewicz_coordinate(i: usize) -> f64 {
    static CACHE: Mutex<Vec<f64>> = Mutex::new(Vec::new());
    let mut cache = CACHE.lock().unwrap_or_else(|e| e.into_inner());
    while cache.len() < i {
        let k = cache.len() + 1;
        let (x, _) = minimize_1d(|v| michalewicz_term(k, v), 0.0, PI, 200_000);
        cache.push(x);
    }
    cache[i - 1]
}

fn shubert_optimum() -> f64 {
    static OPT: std::sync::OnceLock<f64> = std::sync::OnceLock::new();
    *OPT.get_or_init(|| {
        let (_, lo) = minimize_1d(shubert_factor, -10.0, 10.0, 200_000);
        let (_, hi) = minimize_1d(|v| -shubert_factor(v), -10.0, 10.0, 200_000);
        lo * -hi
    })
}

/// Built-in benchmark functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Function {
    Ackley,
    Yang,
    Rosenbrock,
    DeJong,
    Schwefel,
    Rastrigin,
    Easom,
    Griewank,
    Michalewicz,
    Shubert,
}

impl Function {
    pub const ALL: [Function; 10] = [
        Function::Michalewicz,
        Function::Rosenbrock,
        Function::DeJong,
        Function::Schwefel,
        Function::Ackley,
        Function::Rastrigin,
        Function::Easom,
        Function::Griewank,
        Function::Yang,
        Function::Shubert,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Function::Ackley => "ackley",
            Function::Yang => "yang",
            Function::Rosenbrock => "rosenbrock",
            Function::DeJong => "dejong",
            Function::Schwefel => "schwefel",
            Function::Rastrigin => "rastrigin",
            Function::Easom => "easom",
            Function::Griewank => "griewank",
            Function::Michalewicz => "michalewicz",
            Function::Shubert => "shubert",
        }
    }

    pub fn from_name(name: &str) -> Result<Self> {
        let lowered = name.trim().to_ascii_lowercase();
        let f = match lowered.as_str() {
            "ackley" => Function::Ackley,
            "yang" | "forest" | "yang_forest" => Function::Yang,
            "rosenbrock" => Function::Rosenbrock,
            "dejong" | "de_jong" | "sphere" => Function::DeJong,
            "schwefel" => Function::Schwefel,
            "rastrigin" => Function::Rastrigin,
            "easom" => Function::Easom,
            "griewank" => Function::Griewank,
            "michalewicz" => Function::Michalewicz,
            "shubert" => Function::Shubert,
            _ => return Err(Error::UnknownFunction(name.to_string())),
        };
        Ok(f)
    }

    pub fn default_dimension(self) -> usize {
        match self {
            Function::Michalewicz | Function::Rosenbrock => 16,
            Function::DeJong => 256,
            Function::Schwefel | Function::Ackley => 128,
            Function::Rastrigin | Function::Griewank | Function::Yang => 16,
            Function::Easom | Function::Shubert => 2,
        }
    }

    pub fn supports(self, d: usize) -> bool {
        match self {
            Function::Easom | Function::Shubert => d == 2,
            Function::Rosenbrock => d >= 2,
            _ => d >= 1,
        }
    }

    /// Conventional per-coordinate bounds.
    pub fn bounds(self) -> (f64, f64) {
        match self {
            Function::Ackley => (-ACKLEY_BOUND, ACKLEY_BOUND),
            Function::Yang => (-TAU, TAU),
            Function::Rosenbrock => (-5.0, 10.0),
            Function::DeJong | Function::Rastrigin => (-5.12, 5.12),
            Function::Schwefel => (-500.0, 500.0),
            Function::Easom => (-100.0, 100.0),
            Function::Griewank => (-600.0, 600.0),
            Function::Michalewicz => (0.0, PI),
            Function::Shubert => (-10.0, 10.0),
        }
    }

    /// Evaluates without domain checks. `x` must be non-empty and of a
    /// supported dimension.
    fn eval_raw(self, x: &[f64]) -> f64 {
        match self {
            Function::Ackley => ackley_unchecked(x),
            Function::Yang => yang_forest_unchecked(x),
            Function::Rosenbrock => rosenbrock(x),
            Function::DeJong => sphere(x),
            Function::Schwefel => schwefel(x),
            Function::Rastrigin => rastrigin(x),
            Function::Easom => easom(x),
            Function::Griewank => griewank(x),
            Function::Michalewicz => michalewicz(x),
            Function::Shubert => shubert(x),
        }
    }

    /// Evaluates with dimension and domain checks.
    pub fn evaluate(self, x: &[f64]) -> Result<f64> {
        non_empty(x)?;
        if !self.supports(x.len()) {
            return Err(Error::UnsupportedDimension {
                function: self.name().to_string(),
                dimension: x.len(),
            });
        }
        let (lo, hi) = self.bounds();
        check_domain(self.name(), x, lo, hi)?;
        Ok(self.eval_raw(x))
    }

    /// Known minimum value at dimension `d`.
    pub fn optimum_value(self, d: usize) -> f64 {
        match self {
            Function::Easom => -1.0,
            Function::Michalewicz => {
                let hint: Vec<f64> = (1..=d).map(michalewicz_coordinate).collect();
                michalewicz(&hint)
            }
            Function::Shubert => shubert_optimum(),
            _ => 0.0,
        }
    }

    /// A known minimizer at dimension `d`, if the function has a unique one.
    pub fn optimum_hint(self, d: usize) -> Option<Vec<f64>> {
        match self {
            Function::Ackley
            | Function::Yang
            | Function::DeJong
            | Function::Rastrigin
            | Function::Griewank => Some(vec![0.0; d]),
            Function::Rosenbrock => Some(vec![1.0; d]),
            Function::Schwefel => Some(vec![schwefel_peak().location; d]),
            Function::Easom => Some(vec![PI, PI]),
            Function::Michalewicz => Some((1..=d).map(michalewicz_coordinate).collect()),
            Function::Shubert => None,
        }
    }
}

impl fmt::Display for Function {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Evaluates a built-in function by name, checking its conventional domain.
pub fn standard_function(name: &str, x: &[f64]) -> Result<f64> {
    Function::from_name(name)?.evaluate(x)
}

/// Anything that can be minimized.
pub trait Objective {
    fn evaluate(&self, x: &[f64]) -> Result<f64>;
}

type CustomFn = dyn Fn(&[f64]) -> f64 + Send + Sync;

#[derive(Clone)]
enum Kind {
    Builtin(Function),
    Custom(Arc<CustomFn>),
}

/// A test problem: objective, box bounds and known optimum.
#[derive(Clone)]
pub struct BenchmarkSpec {
    name: String,
    kind: Kind,
    lower: Vec<f64>,
    upper: Vec<f64>,
    optimum_value: f64,
    optimum_hint: Option<Vec<f64>>,
}

impl fmt::Debug for BenchmarkSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BenchmarkSpec")
            .field("name", &self.name)
            .field("dimension", &self.dimension())
            .field("optimum_value", &self.optimum_value)
            .finish_non_exhaustive()
    }
}

impl BenchmarkSpec {
    /// Wraps a user objective. `optimum_value` is used for success checks.
    pub fn custom<F>(
        name: impl Into<String>,
        lower: Vec<f64>,
        upper: Vec<f64>,
        optimum_value: f64,
        optimum_hint: Option<Vec<f64>>,
        objective: F,
    ) -> Result<Self>
    where
        F: Fn(&[f64]) -> f64 + Send + Sync + 'static,
    {
        crate::rng::check_bounds(&lower, &upper)?;
        if let Some(h) = &optimum_hint {
            if h.len() != lower.len() {
                return Err(Error::DimensionMismatch {
                    expected: lower.len(),
                    found: h.len(),
                });
            }
        }
        Ok(Self {
            name: name.into(),
            kind: Kind::Custom(Arc::new(objective)),
            lower,
            upper,
            optimum_value,
            optimum_hint,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dimension(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    pub fn optimum_value(&self) -> f64 {
        self.optimum_value
    }

    pub fn optimum_hint(&self) -> Option<&[f64]> {
        self.optimum_hint.as_deref()
    }

    pub fn function(&self) -> Option<Function> {
        match self.kind {
            Kind::Builtin(f) => Some(f),
            Kind::Custom(_) => None,
        }
    }

    /// Per-coordinate width `upper - lower`.
    pub fn widths(&self) -> Vec<f64> {
        self.lower
            .iter()
            .zip(&self.upper)
            .map(|(l, u)| u - l)
            .collect()
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        x.len() == self.dimension()
            && x.iter()
                .zip(self.lower.iter().zip(&self.upper))
                .all(|(v, (l, u))| *v >= *l && *v <= *u)
    }

    /// Clamps a position into the box in place.
    pub fn clamp(&self, x: &mut [f64]) {
        for (v, (l, u)) in x.iter_mut().zip(self.lower.iter().zip(&self.upper)) {
            *v = v.clamp(*l, *u);
        }
    }
}

impl Objective for BenchmarkSpec {
    fn evaluate(&self, x: &[f64]) -> Result<f64> {
        if x.len() != self.dimension() {
            return Err(Error::DimensionMismatch {
                expected: self.dimension(),
                found: x.len(),
            });
        }
        if let Some((index, &value)) = x
            .iter()
            .enumerate()
            .find(|(k, v)| !(**v >= self.lower[*k] && **v <= self.upper[*k]))
        {
            return Err(Error::OutOfDomain {
                function: self.name.clone(),
                index,
                value,
            });
        }
        Ok(match &self.kind {
            Kind::Builtin(f) => f.eval_raw(x),
            Kind::Custom(f) => f(x),
        })
    }
}

impl<F: Fn(&[f64]) -> f64> Objective for F {
    fn evaluate(&self, x: &[f64]) -> Result<f64> {
        Ok(self(x))
    }
}

/// Builds the benchmark `name` at dimension `dimension`.
pub fn lookup(name: &str, dimension: usize) -> Result<BenchmarkSpec> {
    let f = Function::from_name(name)?;
    if !f.supports(dimension) {
        return Err(Error::UnsupportedDimension {
            function: f.name().to_string(),
            dimension,
        });
    }
    let (lo, hi) = f.bounds();
    Ok(BenchmarkSpec {
        name: f.name().to_string(),
        kind: Kind::Builtin(f),
        lower: vec![lo; dimension],
        upper: vec![hi; dimension],
        optimum_value: f.optimum_value(dimension),
        optimum_hint: f.optimum_hint(dimension),
    })
}

/// [`lookup`] at the function's default dimension.
pub fn lookup_default(name: &str) -> Result<BenchmarkSpec> {
    let f = Function::from_name(name)?;
    lookup(name, f.default_dimension())
}

/// Counts objective evaluations. Increases by exactly one per call to
/// [`evaluate`](Self::evaluate).
#[derive(Debug, Default, Clone, Copy, PartialEq, Eq)]
pub struct EvalCounter {
    count: u64,
}

impl EvalCounter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn evaluate<O: Objective + ?Sized>(&mut self, objective: &O, x: &[f64]) -> Result<f64> {
        self.count += 1;
        objective.evaluate(x)
    }
}

/// One row of the machine-readable registry.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegistryEntry {
    pub name: String,
    pub dimension: usize,
    pub lower: f64,
    pub upper: f64,
    pub optimum_value: f64,
    /// Minimizer when every coordinate shares one value.
    pub optimum_coordinate: Option<f64>,
}

/// All built-in functions at their default dimensions.
pub fn registry() -> Vec<RegistryEntry> {
    Function::ALL
        .iter()
        .map(|&f| {
            let d = f.default_dimension();
            let (lower, upper) = f.bounds();
            let optimum_coordinate = f.optimum_hint(d).and_then(|h| {
                let first = h[0];
                h.iter().all(|&v| v == first).then_some(first)
            });
            RegistryEntry {
                name: f.name().to_string(),
                dimension: d,
                lower,
                upper,
                optimum_value: f.optimum_value(d),
                optimum_coordinate,
            }
        })
        .collect()
}

/// Registry serialized as pretty JSON (the content of `data/registry.json`).
pub fn registry_json() -> String {
    let mut s = serde_json::to_string_pretty(&registry()).expect("registry serializes");
    s.push('\n');
    s
}
