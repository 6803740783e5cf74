//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;
use std::time::{Duration, Instant};

use levy_firefly::baselines::{GaParams, GaState, PsoParams};
use levy_firefly::benchmarks::{self, BenchmarkSpec, EvalCounter, Function};
use levy_firefly::firefly::{self, move_toward, Firefly, FireflyParams, MoveRule, Swarm};
use levy_firefly::harness::{self, Algorithm, AlgorithmParams};
use levy_firefly::rng::{self, LevyConfig, RngState};
use levy_firefly::{Objective, RunResult, Termination};

struct Outcome {
    pass: bool,
    detail: String,
}

fn check(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn within(elapsed: Duration, limit_s: f64) -> bool {
    elapsed.as_secs_f64() < limit_s
}

fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

fn capped(max_generations: usize) -> Termination {
    Termination {
        max_generations,
        ..Termination::default()
    }
}

// Ackley d=2, default settings, 100 trials: median best after <= 10 generations.
fn criterion_1() -> Outcome {
    let start = Instant::now();
    let spec = benchmarks::lookup("ackley", 2).unwrap();
    let params = FireflyParams {
        termination: capped(10),
        ..FireflyParams::default()
    };
    let bests: Vec<f64> = (0..100)
        .map(|seed| firefly::run(&spec, &params, seed).unwrap().best_value)
        .collect();
    let below = bests.iter().filter(|&&b| b <= 1e-2).count();
    let med = median(bests);
    let elapsed = start.elapsed();
    check(
        med <= 1e-2 && within(elapsed, 30.0),
        format!(
            "median best within 10 generations = {med:.3e} (<= 1e-2), {below}/100 trials <= 1e-2, {:.2}s (< 30s)",
            elapsed.as_secs_f64()
        ),
    )
}

// De Jong and Ackley d=16, n=40, 25 trials: LFA < PSO < GA on mean
// evaluations, LFA success 100%.
fn criterion_2() -> Outcome {
    let start = Instant::now();
    let params = AlgorithmParams::default();
    let mut pass = true;
    let mut parts = Vec::new();
    for name in ["dejong", "ackley"] {
        let spec = benchmarks::lookup(name, 16).unwrap();
        let stats: Vec<_> = Algorithm::ALL
            .iter()
            .map(|a| harness::run_trials(a.name(), &spec, &params, 25, 1).unwrap())
            .collect();
        let mean = |k: usize| stats[k].mean_evaluations;
        let ordered = matches!(
            (mean(0), mean(1), mean(2)),
            (Some(l), Some(p), Some(g)) if l < p && p < g
        );
        let lfa_all = stats[0].success_rate == 1.0;
        pass &= ordered && lfa_all;
        let cells: Vec<String> = stats
            .iter()
            .map(|s| format!("{} {}", s.algorithm, s.cell()))
            .collect();
        parts.push(format!(
            "{name}16: {} [ordering {}, lfa 100% {}]",
            cells.join(", "),
            if ordered { "ok" } else { "violated" },
            if lfa_all { "ok" } else { "violated" }
        ));
    }
    let elapsed = start.elapsed();
    pass &= within(elapsed, 300.0);
    parts.push(format!("{:.2}s (< 300s)", elapsed.as_secs_f64()));
    check(pass, parts.join("; "))
}

// Pareto tail and median of the Lévy sampler.
fn criterion_3() -> Outcome {
    let start = Instant::now();
    let n = 100_000usize;
    let cfg = LevyConfig::new(1.5, 1.0).unwrap();
    let mut r = RngState::new(3);
    let draws: Vec<f64> = (0..n).map(|_| rng::levy_step(&cfg, &mut r)).collect();
    let mut pass = true;
    let mut parts = Vec::new();
    for x in [4.0f64, 16.0, 64.0] {
        let expected = x.powf(-0.5);
        let se = (expected * (1.0 - expected) / n as f64).sqrt();
        let empirical = draws.iter().filter(|&&t| t > x).count() as f64 / n as f64;
        let z = (empirical - expected) / se;
        pass &= z.abs() <= 3.0;
        parts.push(format!(
            "P(t>{x}) = {empirical:.5} vs {expected:.5} (z = {z:+.2})"
        ));
    }
    let cfg2 = LevyConfig::new(2.0, 1.0).unwrap();
    let mut r = RngState::new(4);
    let med = median((0..n).map(|_| rng::levy_step(&cfg2, &mut r)).collect());
    let rel = (med - 2.0).abs() / 2.0;
    pass &= rel <= 0.05;
    parts.push(format!(
        "median(lambda=2) = {med:.4} ({:.2}% off)",
        rel * 100.0
    ));
    let elapsed = start.elapsed();
    pass &= within(elapsed, 5.0);
    parts.push(format!("{:.2}s (< 5s)", elapsed.as_secs_f64()));
    check(pass, parts.join(", "))
}

fn sort_brightest_first(fireflies: &mut [Firefly]) {
    fireflies.sort_by(|a, b| b.intensity.total_cmp(&a.intensity));
}

/// One generation with the attraction term removed: every move is a pure
/// Lévy step, drawn in the same order as the real loop.
fn pure_walk_generation(
    mut fireflies: Vec<Firefly>,
    spec: &BenchmarkSpec,
    params: &FireflyParams,
    scales: &[f64],
    rng: &mut RngState,
) -> Vec<Firefly> {
    let cfg = params.levy_config().unwrap();
    let d = spec.dimension();
    let step = |x: &[f64], rng: &mut RngState| -> Vec<f64> {
        let p = rng::levy_perturbation(d, params.alpha, scales, &cfg, rng).unwrap();
        let mut y: Vec<f64> = x.iter().zip(&p).map(|(a, b)| a + b).collect();
        spec.clamp(&mut y);
        y
    };
    sort_brightest_first(&mut fireflies);
    for i in 0..fireflies.len() {
        for j in 0..=i {
            if fireflies[j].intensity > fireflies[i].intensity {
                let x = step(&fireflies[i].position, rng);
                let f = eval(spec, &x);
                fireflies[i] = Firefly {
                    position: x,
                    intensity: -f,
                };
            }
        }
    }
    let mut b = 0;
    for k in 1..fireflies.len() {
        if fireflies[k].intensity > fireflies[b].intensity {
            b = k;
        }
    }
    let x = step(&fireflies[b].position, rng);
    let f = eval(spec, &x);
    fireflies[b] = Firefly {
        position: x,
        intensity: -f,
    };
    sort_brightest_first(&mut fireflies);
    fireflies
}

fn eval(spec: &BenchmarkSpec, x: &[f64]) -> f64 {
    spec.evaluate(x).unwrap()
}

// gamma = 0 gives a constant coefficient; gamma = 1e10 degenerates to a
// pure Lévy walk.
fn criterion_4() -> Outcome {
    let start = Instant::now();
    let mut gen = RngState::new(44);
    let mut zero_ok = true;
    for _ in 0..1000 {
        let d = 1 + gen.index(6);
        let beta0 = gen.uniform();
        let a: Vec<f64> = (0..d).map(|_| gen.uniform_range(-100.0, 100.0)).collect();
        let b: Vec<f64> = (0..d).map(|_| gen.uniform_range(-100.0, 100.0)).collect();
        let params = FireflyParams {
            gamma: 0.0,
            beta0,
            m: gen.uniform_range(1.0, 4.0),
            ..FireflyParams::default()
        };
        let rule = MoveRule::new(&params, &vec![-100.0; d], &vec![100.0; d]).unwrap();
        let r = firefly::distance(&a, &b).unwrap();
        zero_ok &= rule.attraction_coefficient(&a, &b) == beta0
            && firefly::attractiveness(r, &params) == beta0;
    }

    let mut walk_ok = 0usize;
    let cases = 1000usize;
    let fns = [
        Function::Ackley,
        Function::DeJong,
        Function::Rastrigin,
        Function::Griewank,
    ];
    for case in 0..cases {
        let f = fns[case % fns.len()];
        let d = 2 + gen.index(3);
        let n = 2 + gen.index(9);
        let spec = benchmarks::lookup(f.name(), d).unwrap();
        let params = FireflyParams {
            gamma: 1e10,
            population: n,
            ..FireflyParams::default()
        };
        let rule = MoveRule::for_spec(&params, &spec).unwrap();
        let positions: Vec<Vec<f64>> = (0..n)
            .map(|_| rng::uniform_in_bounds(spec.lower(), spec.upper(), &mut gen).unwrap())
            .collect();
        let mut counter = EvalCounter::new();
        let mut swarm = Swarm::evaluate(positions, &spec, &mut counter).unwrap();
        swarm.rank();
        let start_state = swarm.fireflies().to_vec();
        let seed = gen.uniform().to_bits();
        let mut rng_real = RngState::new(seed);
        let mut rng_walk = rng_real.clone();
        firefly::generation_step(&mut swarm, &rule, &spec, &mut counter, &mut rng_real).unwrap();
        let replay =
            pure_walk_generation(start_state, &spec, &params, rule.scales(), &mut rng_walk);
        let same = swarm.fireflies().iter().zip(&replay).all(|(a, b)| {
            a.position
                .iter()
                .map(|v| v.to_bits())
                .eq(b.position.iter().map(|v| v.to_bits()))
        });
        if same {
            walk_ok += 1;
        }
    }
    let elapsed = start.elapsed();
    check(
        zero_ok && walk_ok == cases && within(elapsed, 5.0),
        format!(
            "gamma=0 coefficient == beta0 on 1000 pairs: {}; gamma=1e10 generation == pure Levy walk bitwise: {walk_ok}/{cases}; {:.2}s (< 5s)",
            if zero_ok { "yes" } else { "no" },
            elapsed.as_secs_f64()
        ),
    )
}

// Closed-form values.
fn criterion_5() -> Outcome {
    let p = FireflyParams::default();
    let mut parts = Vec::new();
    let mut pass = true;
    let mut record = |name: &str, ok: bool, value: f64| {
        pass &= ok;
        parts.push(format!(
            "{name} = {value:e} {}",
            if ok { "ok" } else { "WRONG" }
        ));
    };
    let a0 = firefly::attractiveness(0.0, &p);
    record("attractiveness(0)", a0 == p.beta0, a0);
    let a1 = firefly::attractiveness(1.0, &p);
    record(
        "attractiveness(1)",
        (a1 - (-1.0f64).exp()).abs() <= 1e-12,
        a1,
    );
    let ack = benchmarks::ackley(&[0.0; 8]).unwrap();
    record("ackley(0)", ack.abs() <= 1e-12, ack);
    let yang = benchmarks::yang_forest(&[0.0; 8]).unwrap();
    record("yang_forest(0)", yang == 0.0, yang);
    let dist = firefly::distance(&[0.0, 0.0], &[3.0, 4.0]).unwrap();
    record("distance((0,0),(3,4))", dist == 5.0, dist);
    let ros = Function::Rosenbrock.evaluate(&[1.0; 8]).unwrap();
    record("rosenbrock(1..1)", ros == 0.0, ros);
    check(pass, parts.join(", "))
}

fn params_for(n: usize, gens: usize, trace: bool) -> AlgorithmParams {
    let t = capped(gens);
    AlgorithmParams {
        lfa: FireflyParams {
            population: n,
            termination: t,
            record_trace: trace,
            ..FireflyParams::default()
        },
        pso: PsoParams {
            population: n,
            termination: t,
            record_trace: trace,
            ..PsoParams::default()
        },
        ga: GaParams {
            population: n,
            termination: t,
            record_trace: trace,
            ..GaParams::default()
        },
    }
}

fn trace_csv(r: &RunResult) -> Vec<u8> {
    let mut buf = Vec::new();
    harness::write_trace_csv(r, &mut buf).unwrap();
    buf
}

// Exact evaluation accounting and byte-identical outputs.
fn criterion_6() -> Outcome {
    let mut accounted = 0usize;
    let mut identical = 0usize;
    let mut total = 0usize;
    for algo in Algorithm::ALL {
        for seed in 0..40u64 {
            total += 1;
            let d = 2 + (seed as usize % 3);
            let calls = Arc::new(AtomicU64::new(0));
            let c = Arc::clone(&calls);
            let spec = BenchmarkSpec::custom(
                "counted_ackley",
                vec![-32.768; d],
                vec![32.768; d],
                0.0,
                Some(vec![0.0; d]),
                move |x| {
                    c.fetch_add(1, Ordering::Relaxed);
                    benchmarks::ackley(x).unwrap()
                },
            )
            .unwrap();
            let params = params_for(10, 60, false);
            let r = harness::run_once(algo, &spec, &params, seed).unwrap();
            if r.evaluations == calls.load(Ordering::Relaxed) {
                accounted += 1;
            }

            let builtin = benchmarks::lookup("rastrigin", d).unwrap();
            let params = params_for(10, 30, true);
            let a = harness::run_once(algo, &builtin, &params, seed).unwrap();
            let b = harness::run_once(algo, &builtin, &params, seed).unwrap();
            if a.to_json() == b.to_json() && trace_csv(&a) == trace_csv(&b) {
                identical += 1;
            }
        }
    }
    check(
        accounted == total && identical == total,
        format!(
            "evaluations == instrumented count: {accounted}/{total}; same seed byte-identical JSON and trace CSV: {identical}/{total}"
        ),
    )
}

// Invariants over 1000 randomized cases each.
fn criterion_7() -> Outcome {
    let start = Instant::now();
    let cases = 1000usize;
    let mut gen = RngState::new(77);
    let random_spec = |gen: &mut RngState| {
        let f = Function::ALL[gen.index(Function::ALL.len())];
        let d = match f {
            Function::Easom | Function::Shubert => 2,
            _ => 2 + gen.index(3),
        };
        benchmarks::lookup(f.name(), d).unwrap()
    };

    let (mut monotone, mut bounded) = (0usize, 0usize);
    for _ in 0..cases {
        let spec = random_spec(&mut gen);
        let algo = Algorithm::ALL[gen.index(3)];
        let n = 2 + gen.index(8);
        let params = params_for(n, 1 + gen.index(15), true);
        let r = harness::run_once(algo, &spec, &params, gen.uniform().to_bits()).unwrap();
        let trace = r.trace.as_ref().unwrap();
        if trace.windows(2).all(|w| w[1].best_value <= w[0].best_value) {
            monotone += 1;
        }
        if trace
            .iter()
            .all(|f| f.positions.iter().all(|x| spec.contains(x)))
        {
            bounded += 1;
        }
    }

    let mut contracted = 0usize;
    for _ in 0..cases {
        let d = 1 + gen.index(4);
        let lower = vec![-1.0; d];
        let upper = vec![1.0; d];
        let params = FireflyParams {
            alpha: 0.0,
            beta0: gen.uniform_range(0.05, 1.0),
            gamma: gen.uniform_range(0.01, 2.0),
            ..FireflyParams::default()
        };
        let rule = MoveRule::new(&params, &lower, &upper).unwrap();
        let xi = rng::uniform_in_bounds(&lower, &upper, &mut gen).unwrap();
        let xj = rng::uniform_in_bounds(&lower, &upper, &mut gen).unwrap();
        let i = Firefly {
            position: xi.clone(),
            intensity: 0.0,
        };
        let j = Firefly {
            position: xj.clone(),
            intensity: 1.0,
        };
        let moved = move_toward(&i, &j, &rule, &mut gen).unwrap();
        if firefly::distance(&moved, &xj).unwrap() < firefly::distance(&xi, &xj).unwrap() {
            contracted += 1;
        }
    }

    let mut replaced = 0usize;
    for _ in 0..cases {
        let spec = random_spec(&mut gen);
        let n = 2 + gen.index(8);
        let params = GaParams {
            population: n,
            ..GaParams::default()
        };
        let genomes = (0..n)
            .map(|_| rng::uniform_in_bounds(spec.lower(), spec.upper(), &mut gen).unwrap())
            .collect();
        let mut counter = EvalCounter::new();
        let mut state = GaState::new(&spec, &params, genomes, &mut counter).unwrap();
        let gens = 1 + gen.index(6);
        let mut ok = true;
        for g in 1..=gens {
            state
                .step(&spec, &params, &spec, &mut counter, &mut gen)
                .unwrap();
            ok &= state.population().len() == n && state.population().iter().all(|i| i.born == g);
        }
        if ok {
            replaced += 1;
        }
    }

    let elapsed = start.elapsed();
    check(
        monotone == cases
            && bounded == cases
            && contracted == cases
            && replaced == cases
            && within(elapsed, 60.0),
        format!(
            "monotone best {monotone}/{cases}, traced positions in bounds {bounded}/{cases}, alpha=0 contraction {contracted}/{cases}, GA full replacement {replaced}/{cases}; {:.2}s (< 60s)",
            elapsed.as_secs_f64()
        ),
    )
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 7] = [
        (
            "1 ackley-2 median reaches 1e-2 within 10 generations",
            criterion_1,
        ),
        (
            "2 dejong-16/ackley-16 ordering LFA < PSO < GA, LFA 100%",
            criterion_2,
        ),
        ("3 Levy sampler tail and median", criterion_3),
        ("4 gamma limits", criterion_4),
        ("5 closed forms", criterion_5),
        ("6 accounting and determinism", criterion_6),
        ("7 invariant suite", criterion_7),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        let o = f();
        if !o.pass {
            failed += 1;
        }
        println!(
            "{} criterion {name}: {}",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
