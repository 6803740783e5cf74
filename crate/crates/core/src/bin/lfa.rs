use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use levy_firefly::benchmarks::{self, BenchmarkSpec, Function};
use levy_firefly::harness::{self, Algorithm, AlgorithmParams, ReportFormat};
use levy_firefly::{Error, LengthScale, Termination};

/// Lévy-flight firefly optimizer with PSO and GA baselines.
#[derive(Parser, Debug)]
#[command(name = "lfa", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run one seeded optimization and print the result as JSON.
    Run(SingleArgs),
    /// Run repeated trials over a function x algorithm matrix and print a report.
    Bench(BenchArgs),
    /// Run once with trace capture and write the per-generation CSV.
    Trace(SingleArgs),
    /// Print the benchmark registry as JSON.
    Registry,
}

#[derive(Args, Debug)]
struct SingleArgs {
    /// Algorithm: lfa, pso or ga.
    #[arg(long, default_value = "lfa")]
    algo: String,
    /// Benchmark function name.
    #[arg(long = "fn", default_value = "ackley")]
    function: String,
    /// Dimension [default: the function's registry dimension].
    #[arg(long)]
    dim: Option<usize>,
    /// Random seed.
    #[arg(long, env = "LFA_SEED", default_value_t = 0)]
    seed: u64,
    /// Output file [default: stdout].
    #[arg(long)]
    output: Option<PathBuf>,
    #[command(flatten)]
    tuning: Tuning,
}

#[derive(Args, Debug)]
struct BenchArgs {
    /// Comma-separated benchmark functions.
    #[arg(long, value_delimiter = ',', default_value = "dejong,ackley")]
    fns: Vec<String>,
    /// Comma-separated algorithms.
    #[arg(long, value_delimiter = ',', default_value = "lfa,pso,ga")]
    algos: Vec<String>,
    /// Dimension for every function [default: each function's registry dimension].
    #[arg(long)]
    dim: Option<usize>,
    /// Trials per function and algorithm.
    #[arg(long, default_value_t = 25)]
    trials: usize,
    /// Base seed; trial k uses seed + k.
    #[arg(long, env = "LFA_SEED", default_value_t = 0)]
    seed: u64,
    /// Report format: table, csv or json.
    #[arg(long, default_value = "table")]
    format: String,
    /// Output file [default: stdout].
    #[arg(long)]
    output: Option<PathBuf>,
    #[command(flatten)]
    tuning: Tuning,
}

#[derive(Args, Debug)]
struct Tuning {
    /// Population size.
    #[arg(long, default_value_t = 40)]
    population: usize,
    /// Lévy perturbation weight.
    #[arg(long, default_value_t = 0.2)]
    alpha: f64,
    /// Light absorption coefficient.
    #[arg(long, default_value_t = 1.0)]
    gamma: f64,
    /// Lévy tail exponent.
    #[arg(long, default_value_t = 1.5)]
    lambda: f64,
    /// Attractiveness at zero distance.
    #[arg(long, default_value_t = 1.0)]
    beta0: f64,
    /// Distance exponent in the attractiveness.
    #[arg(long, default_value_t = 2.0)]
    m: f64,
    /// Smallest Lévy step.
    #[arg(long, default_value_t = levy_firefly::rng::DEFAULT_T_MIN)]
    t_min: f64,
    /// Attraction length scale: "width" (per-coordinate domain width) or a positive number.
    #[arg(long, default_value = "width")]
    length_scale: String,
    /// Stagnation tolerance on best-so-far improvement.
    #[arg(long, default_value_t = 1e-5)]
    epsilon: f64,
    /// Stagnation window in generations.
    #[arg(long, default_value_t = 10)]
    window: usize,
    /// Generation limit.
    #[arg(long, default_value_t = 10_000)]
    max_generations: usize,
    /// Success threshold on |best - optimum|.
    #[arg(long, default_value_t = 1e-3)]
    success_threshold: f64,
    /// PSO cognitive weight.
    #[arg(long, default_value_t = 2.0)]
    c1: f64,
    /// PSO social weight.
    #[arg(long, default_value_t = 2.0)]
    c2: f64,
    /// PSO velocity cap as a fraction of the domain width.
    #[arg(long, default_value_t = 1.0)]
    velocity_cap: f64,
    /// GA per-gene mutation probability.
    #[arg(long, default_value_t = 0.05)]
    mutation: f64,
    /// GA crossover probability.
    #[arg(long, default_value_t = 0.95)]
    crossover: f64,
    /// GA mutation standard deviation as a fraction of the domain width.
    #[arg(long, default_value_t = 0.1)]
    mutation_scale: f64,
}

impl Tuning {
    fn params(&self, record_trace: bool) -> Result<AlgorithmParams, Error> {
        let termination = Termination {
            max_generations: self.max_generations,
            tolerance: self.epsilon,
            window: self.window,
            success_threshold: self.success_threshold,
        };
        let length_scale = match self.length_scale.as_str() {
            "width" => LengthScale::DomainWidth,
            s => LengthScale::Absolute(s.parse().map_err(|_| {
                Error::InvalidConfig(format!(
                    "length scale '{s}' is neither 'width' nor a number"
                ))
            })?),
        };
        let mut p = AlgorithmParams::default();
        p.lfa.population = self.population;
        p.lfa.alpha = self.alpha;
        p.lfa.gamma = self.gamma;
        p.lfa.lambda = self.lambda;
        p.lfa.beta0 = self.beta0;
        p.lfa.m = self.m;
        p.lfa.t_min = self.t_min;
        p.lfa.length_scale = length_scale;
        p.lfa.termination = termination;
        p.lfa.record_trace = record_trace;
        p.pso.population = self.population;
        p.pso.c1 = self.c1;
        p.pso.c2 = self.c2;
        p.pso.velocity_cap = self.velocity_cap;
        p.pso.termination = termination;
        p.pso.record_trace = record_trace;
        p.ga.population = self.population;
        p.ga.mutation_probability = self.mutation;
        p.ga.crossover_probability = self.crossover;
        p.ga.mutation_scale = self.mutation_scale;
        p.ga.termination = termination;
        p.ga.record_trace = record_trace;
        Ok(p)
    }
}

fn spec_for(name: &str, dim: Option<usize>) -> Result<BenchmarkSpec, Error> {
    let f = Function::from_name(name)?;
    benchmarks::lookup(f.name(), dim.unwrap_or_else(|| f.default_dimension()))
}

fn emit(output: &Option<PathBuf>, text: &str) -> Result<(), Error> {
    match output {
        Some(path) => fs::write(path, text)?,
        None => {
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
        }
    }
    Ok(())
}

fn single(args: &SingleArgs, trace: bool) -> Result<(), Error> {
    let algo: Algorithm = args.algo.parse()?;
    let spec = spec_for(&args.function, args.dim)?;
    let params = args.tuning.params(trace)?;
    params.validate(algo)?;
    let result = harness::run_once(algo, &spec, &params, args.seed)?;
    if trace {
        let mut buf = Vec::new();
        harness::write_trace_csv(&result, &mut buf)?;
        emit(&args.output, &String::from_utf8_lossy(&buf))
    } else {
        let mut json = result.to_json();
        json.push('\n');
        emit(&args.output, &json)
    }
}

fn bench(args: &BenchArgs) -> Result<(), Error> {
    let format: ReportFormat = args.format.parse()?;
    let algos = args
        .algos
        .iter()
        .map(|a| a.parse())
        .collect::<Result<Vec<Algorithm>, _>>()?;
    let specs = args
        .fns
        .iter()
        .map(|f| spec_for(f, args.dim))
        .collect::<Result<Vec<_>, _>>()?;
    let params = args.tuning.params(false)?;
    for &a in &algos {
        params.validate(a)?;
    }
    if args.trials == 0 {
        return Err(Error::InvalidConfig("trials must be >= 1".into()));
    }
    let mut stats = Vec::new();
    for spec in &specs {
        for &algo in &algos {
            let (s, times) =
                harness::run_trials_timed(algo.name(), spec, &params, args.trials, args.seed)?;
            let total: f64 = times.iter().map(|t| t.as_secs_f64()).sum();
            log::info!(
                "{} {} d={}: {} trials, {:.3} s total",
                algo,
                spec.name(),
                spec.dimension(),
                args.trials,
                total
            );
            stats.push(s);
        }
    }
    emit(&args.output, &harness::format_report(&stats, format)?)
}

fn dispatch(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Run(a) => single(&a, false),
        Command::Trace(a) => single(&a, true),
        Command::Bench(a) => bench(&a),
        Command::Registry => emit(&None, &benchmarks::registry_json()),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let usage = e.use_stderr();
            let _ = e.print();
            return if usage {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_config() { 1 } else { 2 })
        }
    }
}
