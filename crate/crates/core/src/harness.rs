//! Repeated seeded trials, summary statistics, reports and trace export.

use std::fmt;
use std::io::Write;
use std::path::Path;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::baselines::{ga_run, pso_run, GaParams, PsoParams};
use crate::benchmarks::BenchmarkSpec;
use crate::error::{Error, Result};
use crate::firefly::{self, FireflyParams};
use crate::result::RunResult;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Lfa,
    Pso,
    Ga,
}

impl Algorithm {
    pub const ALL: [Algorithm; 3] = [Algorithm::Lfa, Algorithm::Pso, Algorithm::Ga];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Lfa => "lfa",
            Algorithm::Pso => "pso",
            Algorithm::Ga => "ga",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "lfa" | "firefly" | "fa" => Ok(Algorithm::Lfa),
            "pso" => Ok(Algorithm::Pso),
            "ga" => Ok(Algorithm::Ga),
            _ => Err(Error::UnknownAlgorithm(s.to_string())),
        }
    }
}

/// Parameter sets for every algorithm; the algorithm identifier picks one.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct AlgorithmParams {
    pub lfa: FireflyParams,
    pub pso: PsoParams,
    pub ga: GaParams,
}

impl AlgorithmParams {
    pub fn validate(&self, algorithm: Algorithm) -> Result<()> {
        match algorithm {
            Algorithm::Lfa => self.lfa.validate(),
            Algorithm::Pso => self.pso.validate(),
            Algorithm::Ga => self.ga.validate(),
        }
    }

    pub fn population(&self, algorithm: Algorithm) -> usize {
        match algorithm {
            Algorithm::Lfa => self.lfa.population,
            Algorithm::Pso => self.pso.population,
            Algorithm::Ga => self.ga.population,
        }
    }
}

pub fn run_once(
    algorithm: Algorithm,
    spec: &BenchmarkSpec,
    params: &AlgorithmParams,
    seed: u64,
) -> Result<RunResult> {
    match algorithm {
        Algorithm::Lfa => firefly::run(spec, &params.lfa, seed),
        Algorithm::Pso => pso_run(spec, &params.pso, seed),
        Algorithm::Ga => ga_run(spec, &params.ga, seed),
    }
}

/// Per-trial outcome kept in the JSON report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub seed: u64,
    pub evaluations: u64,
    pub best_value: f64,
    pub success: bool,
    pub generations: usize,
}

impl From<&RunResult> for TrialRecord {
    fn from(r: &RunResult) -> Self {
        Self {
            seed: r.seed,
            evaluations: r.evaluations,
            best_value: r.best_value,
            success: r.success,
            generations: r.generations,
        }
    }
}

/// Summary of repeated runs. Mean and standard deviation of the evaluation
/// count are taken over successful trials only and are absent when no trial
/// succeeded.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialStats {
    pub algorithm: String,
    pub benchmark: String,
    pub dimension: usize,
    pub n_trials: usize,
    pub successes: usize,
    #[serde(rename = "mean_evals")]
    pub mean_evaluations: Option<f64>,
    #[serde(rename = "std_evals")]
    pub std_evaluations: Option<f64>,
    pub success_rate: f64,
    #[serde(default)]
    pub per_trial: Vec<TrialRecord>,
}

/// Summary columns of [`TrialStats`], one CSV row.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StatsRow {
    pub algorithm: String,
    pub benchmark: String,
    pub dimension: usize,
    pub n_trials: usize,
    pub successes: usize,
    pub mean_evals: Option<f64>,
    pub std_evals: Option<f64>,
    pub success_rate: f64,
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Mean and sample standard deviation of integer samples. The variance is
/// formed as an exact reduced fraction before the single conversion to `f64`.
fn mean_std(samples: &[u64]) -> Option<(f64, f64)> {
    let k = samples.len() as u128;
    if k == 0 {
        return None;
    }
    let sum: u128 = samples.iter().map(|&x| x as u128).sum();
    let mean = sum as f64 / k as f64;
    if k == 1 {
        return Some((mean, 0.0));
    }
    // Σ (k x_i - Σx)^2 / (k^2 (k - 1))
    let num: u128 = samples
        .iter()
        .map(|&x| {
            let dev = (k * x as u128).abs_diff(sum);
            dev * dev
        })
        .sum();
    let den = k * k * (k - 1);
    let g = gcd(num, den).max(1);
    let var = (num / g) as f64 / (den / g) as f64;
    Some((mean, var.sqrt()))
}

impl TrialStats {
    pub fn from_records(
        algorithm: &str,
        benchmark: &str,
        dimension: usize,
        records: Vec<TrialRecord>,
    ) -> Result<Self> {
        if records.is_empty() {
            return Err(Error::EmptyReport("no trials"));
        }
        let successful: Vec<u64> = records
            .iter()
            .filter(|r| r.success)
            .map(|r| r.evaluations)
            .collect();
        let stats = mean_std(&successful);
        Ok(Self {
            algorithm: algorithm.to_string(),
            benchmark: benchmark.to_string(),
            dimension,
            n_trials: records.len(),
            successes: successful.len(),
            mean_evaluations: stats.map(|s| s.0),
            std_evaluations: stats.map(|s| s.1),
            success_rate: successful.len() as f64 / records.len() as f64,
            per_trial: records,
        })
    }

    pub fn summary(&self) -> StatsRow {
        StatsRow {
            algorithm: self.algorithm.clone(),
            benchmark: self.benchmark.clone(),
            dimension: self.dimension,
            n_trials: self.n_trials,
            successes: self.successes,
            mean_evals: self.mean_evaluations,
            std_evals: self.std_evaluations,
            success_rate: self.success_rate,
        }
    }

    /// Cell text in the form `mean ± std (rate%)`.
    pub fn cell(&self) -> String {
        let rate = format!("({:.0}%)", self.success_rate * 100.0);
        match (self.mean_evaluations, self.std_evaluations) {
            (Some(m), Some(s)) => format!("{m:.0} ± {s:.0} {rate}"),
            _ => format!("— {rate}"),
        }
    }
}

/// Runs `n_trials` independent runs with seeds `base_seed + k` and also
/// returns each trial's wall-clock time.
pub fn run_trials_timed(
    algorithm: &str,
    spec: &BenchmarkSpec,
    params: &AlgorithmParams,
    n_trials: usize,
    base_seed: u64,
) -> Result<(TrialStats, Vec<Duration>)> {
    let algo: Algorithm = algorithm.parse()?;
    if n_trials == 0 {
        return Err(Error::InvalidConfig("n_trials must be >= 1".into()));
    }
    params.validate(algo)?;
    let outcomes = (0..n_trials as u64)
        .into_par_iter()
        .map(|k| {
            let start = Instant::now();
            let r = run_once(algo, spec, params, base_seed.wrapping_add(k))?;
            Ok((TrialRecord::from(&r), start.elapsed()))
        })
        .collect::<Result<Vec<_>>>()?;
    let (records, times): (Vec<_>, Vec<_>) = outcomes.into_iter().unzip();
    let stats = TrialStats::from_records(algo.name(), spec.name(), spec.dimension(), records)?;
    Ok((stats, times))
}

pub fn run_trials(
    algorithm: &str,
    spec: &BenchmarkSpec,
    params: &AlgorithmParams,
    n_trials: usize,
    base_seed: u64,
) -> Result<TrialStats> {
    run_trials_timed(algorithm, spec, params, n_trials, base_seed).map(|(s, _)| s)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportFormat {
    #[default]
    Table,
    Csv,
    Json,
}

impl FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "table" => Ok(Self::Table),
            "csv" => Ok(Self::Csv),
            "json" => Ok(Self::Json),
            _ => Err(Error::InvalidConfig(format!("unknown report format '{s}'"))),
        }
    }
}

fn pretty_name(name: &str) -> String {
    let mut c = name.chars();
    match c.next() {
        Some(f) => f.to_uppercase().chain(c).collect(),
        None => String::new(),
    }
}

fn render_table(stats: &[TrialStats]) -> String {
    let mut rows: Vec<(&str, usize)> = Vec::new();
    let mut cols: Vec<&str> = Vec::new();
    for s in stats {
        if !rows.contains(&(s.benchmark.as_str(), s.dimension)) {
            rows.push((&s.benchmark, s.dimension));
        }
        if !cols.contains(&s.algorithm.as_str()) {
            cols.push(&s.algorithm);
        }
    }
    let mut grid: Vec<Vec<String>> = Vec::with_capacity(rows.len() + 1);
    let mut header = vec!["Functions/Algorithms".to_string()];
    header.extend(cols.iter().map(|c| c.to_ascii_uppercase()));
    grid.push(header);
    for (bench, dim) in &rows {
        let mut line = vec![format!("{} (d={})", pretty_name(bench), dim)];
        for algo in &cols {
            let cell = stats
                .iter()
                .find(|s| s.benchmark == *bench && s.dimension == *dim && s.algorithm == *algo)
                .map_or_else(|| "n/a".to_string(), TrialStats::cell);
            line.push(cell);
        }
        grid.push(line);
    }
    let widths: Vec<usize> = (0..grid[0].len())
        .map(|c| grid.iter().map(|r| r[c].chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for (k, row) in grid.iter().enumerate() {
        let cells: Vec<String> = row
            .iter()
            .zip(&widths)
            .map(|(cell, w)| format!("{cell:<w$}"))
            .collect();
        out.push_str(cells.join("  ").trim_end());
        out.push('\n');
        if k == 0 {
            let total = widths.iter().sum::<usize>() + 2 * (widths.len() - 1);
            out.push_str(&"-".repeat(total));
            out.push('\n');
        }
    }
    out
}

/// Renders a comparison report: benchmarks as rows, algorithms as columns.
pub fn format_report(stats: &[TrialStats], format: ReportFormat) -> Result<String> {
    if stats.is_empty() {
        return Err(Error::EmptyReport("no statistics to report"));
    }
    match format {
        ReportFormat::Table => Ok(render_table(stats)),
        ReportFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for s in stats {
                w.serialize(s.summary())?;
            }
            let bytes = w
                .into_inner()
                .map_err(|e| Error::Serialization(e.to_string()))?;
            String::from_utf8(bytes).map_err(|e| Error::Serialization(e.to_string()))
        }
        ReportFormat::Json => {
            let mut s = serde_json::to_string_pretty(stats)?;
            s.push('\n');
            Ok(s)
        }
    }
}

pub fn read_csv_report(text: &str) -> Result<Vec<StatsRow>> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    r.deserialize()
        .map(|row| row.map_err(Error::from))
        .collect()
}

pub fn read_json_report(text: &str) -> Result<Vec<TrialStats>> {
    Ok(serde_json::from_str(text)?)
}

/// Writes one CSV row per population member per traced generation:
/// `generation,firefly_index,x1..xd,intensity`.
pub fn write_trace_csv<W: Write>(result: &RunResult, mut out: W) -> Result<()> {
    let trace = result.trace.as_ref().ok_or(Error::NoTrace)?;
    let mut header = vec!["generation".to_string(), "firefly_index".to_string()];
    header.extend((1..=result.dimension).map(|k| format!("x{k}")));
    header.push("intensity".to_string());
    writeln!(out, "{}", header.join(","))?;
    for frame in trace {
        for (idx, (x, intensity)) in frame.positions.iter().zip(&frame.intensities).enumerate() {
            let mut line = format!("{},{}", frame.generation, idx);
            for v in x {
                line.push(',');
                line.push_str(&v.to_string());
            }
            line.push(',');
            line.push_str(&intensity.to_string());
            writeln!(out, "{line}")?;
        }
    }
    out.flush()?;
    Ok(())
}

pub fn export_trace(result: &RunResult, path: &Path) -> Result<()> {
    if result.trace.is_none() {
        return Err(Error::NoTrace);
    }
    let file = std::fs::File::create(path)?;
    write_trace_csv(result, std::io::BufWriter::new(file))
}
