//! C interface to the `levy-firefly` optimizer.
//!
//! Objects are opaque handles created by `*_new`/`lfa_run` and released with
//! the matching `*_free`. Every fallible call returns an [`LfaStatus`]; on
//! failure [`lfa_last_error_message`] describes the error for the calling
//! thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use levy_firefly::benchmarks::{self, BenchmarkSpec, Objective};
use levy_firefly::harness::{self, Algorithm, AlgorithmParams};
use levy_firefly::{Error, LengthScale, RunResult};

/// Status codes returned by every fallible function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LfaStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    UnknownFunction = 3,
    UnknownAlgorithm = 4,
    OutOfDomain = 5,
    Runtime = 6,
    Panic = 7,
}

/// Benchmark function bound to a dimension.
pub struct LfaBenchmark(BenchmarkSpec);

/// Parameters for all three algorithms.
pub struct LfaParams(AlgorithmParams);

/// Outcome of one run.
pub struct LfaRunResult(RunResult);

/// Summary of repeated trials. `mean_evals` and `std_evals` are NaN when no
/// trial succeeded.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LfaTrialSummary {
    pub n_trials: u64,
    pub successes: u64,
    pub mean_evals: f64,
    pub std_evals: f64,
    pub success_rate: f64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> LfaStatus {
    match e {
        Error::UnknownFunction(_) => LfaStatus::UnknownFunction,
        Error::UnknownAlgorithm(_) => LfaStatus::UnknownAlgorithm,
        Error::OutOfDomain { .. } => LfaStatus::OutOfDomain,
        e if e.is_config() => LfaStatus::InvalidArgument,
        _ => LfaStatus::Runtime,
    }
}

fn guard<F: FnOnce() -> Result<(), LfaStatus>>(f: F) -> LfaStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => LfaStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("internal panic".into());
            LfaStatus::Panic
        }
    }
}

fn fail(e: Error) -> LfaStatus {
    let s = status_of(&e);
    set_error(e.to_string());
    s
}

fn null(what: &str) -> LfaStatus {
    set_error(format!("{what} is null"));
    LfaStatus::NullPointer
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, LfaStatus> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error(format!("{what} is not valid UTF-8"));
        LfaStatus::InvalidArgument
    })
}

unsafe fn as_ref<'a, T>(p: *const T, what: &str) -> Result<&'a T, LfaStatus> {
    p.as_ref().ok_or_else(|| null(what))
}

fn to_c_string(s: String) -> *mut c_char {
    CString::new(s).map_or(ptr::null_mut(), CString::into_raw)
}

/// Message for the last failed call on this thread, or null. The pointer is
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn lfa_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn lfa_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Looks up a registered benchmark. `dimension == 0` selects its default.
///
/// # Safety
/// `name` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lfa_benchmark_new(
    name: *const c_char,
    dimension: usize,
    out: *mut *mut LfaBenchmark,
) -> LfaStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let name = str_arg(name, "name")?;
        let spec = if dimension == 0 {
            benchmarks::lookup_default(name)
        } else {
            benchmarks::lookup(name, dimension)
        }
        .map_err(fail)?;
        *out = Box::into_raw(Box::new(LfaBenchmark(spec)));
        Ok(())
    })
}

/// # Safety
/// `bench` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn lfa_benchmark_free(bench: *mut LfaBenchmark) {
    if !bench.is_null() {
        drop(Box::from_raw(bench));
    }
}

/// # Safety
/// `bench` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn lfa_benchmark_dimension(bench: *const LfaBenchmark) -> usize {
    bench.as_ref().map_or(0, |b| b.0.dimension())
}

/// Known optimum value, NaN for a null handle.
///
/// # Safety
/// `bench` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn lfa_benchmark_optimum(bench: *const LfaBenchmark) -> f64 {
    bench.as_ref().map_or(f64::NAN, |b| b.0.optimum_value())
}

/// Evaluates the benchmark at `x[0..len]`.
///
/// # Safety
/// `x` must point to `len` doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lfa_benchmark_evaluate(
    bench: *const LfaBenchmark,
    x: *const f64,
    len: usize,
    out: *mut f64,
) -> LfaStatus {
    guard(|| {
        let b = as_ref(bench, "bench")?;
        if x.is_null() {
            return Err(null("x"));
        }
        if out.is_null() {
            return Err(null("out"));
        }
        let xs = std::slice::from_raw_parts(x, len);
        *out = b.0.evaluate(xs).map_err(fail)?;
        Ok(())
    })
}

/// New parameter set with default values.
#[no_mangle]
pub extern "C" fn lfa_params_new() -> *mut LfaParams {
    Box::into_raw(Box::new(LfaParams(AlgorithmParams::default())))
}

/// # Safety
/// `params` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn lfa_params_free(params: *mut LfaParams) {
    if !params.is_null() {
        drop(Box::from_raw(params));
    }
}

/// Sets a named parameter. Shared keys (`population`, `epsilon`, `window`,
/// `max_generations`, `success_threshold`) apply to every algorithm.
/// Firefly keys: `alpha`, `gamma`, `lambda`, `beta0`, `m`, `t_min`,
/// `length_scale` (0 selects the domain width). PSO keys: `c1`, `c2`,
/// `velocity_cap`. GA keys: `mutation`, `crossover`, `mutation_scale`.
///
/// # Safety
/// `params` must be a live handle and `key` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn lfa_params_set(
    params: *mut LfaParams,
    key: *const c_char,
    value: f64,
) -> LfaStatus {
    guard(|| {
        let p = &mut params.as_mut().ok_or_else(|| null("params"))?.0;
        let key = str_arg(key, "key")?;
        let count = || -> Result<usize, LfaStatus> {
            if value >= 0.0 && value.fract() == 0.0 && value < 1e15 {
                Ok(value as usize)
            } else {
                set_error(format!("{key} must be a non-negative integer"));
                Err(LfaStatus::InvalidArgument)
            }
        };
        match key {
            "population" => {
                let n = count()?;
                p.lfa.population = n;
                p.pso.population = n;
                p.ga.population = n;
            }
            "epsilon" | "window" | "max_generations" | "success_threshold" => {
                let mut t = p.lfa.termination;
                match key {
                    "epsilon" => t.tolerance = value,
                    "window" => t.window = count()?,
                    "max_generations" => t.max_generations = count()?,
                    _ => t.success_threshold = value,
                }
                p.lfa.termination = t;
                p.pso.termination = t;
                p.ga.termination = t;
            }
            "alpha" => p.lfa.alpha = value,
            "gamma" => p.lfa.gamma = value,
            "lambda" => p.lfa.lambda = value,
            "beta0" => p.lfa.beta0 = value,
            "m" => p.lfa.m = value,
            "t_min" => p.lfa.t_min = value,
            "length_scale" => {
                p.lfa.length_scale = if value == 0.0 {
                    LengthScale::DomainWidth
                } else {
                    LengthScale::Absolute(value)
                }
            }
            "c1" => p.pso.c1 = value,
            "c2" => p.pso.c2 = value,
            "velocity_cap" => p.pso.velocity_cap = value,
            "mutation" => p.ga.mutation_probability = value,
            "crossover" => p.ga.crossover_probability = value,
            "mutation_scale" => p.ga.mutation_scale = value,
            _ => {
                set_error(format!("unknown parameter '{key}'"));
                return Err(LfaStatus::InvalidArgument);
            }
        }
        Ok(())
    })
}

/// Runs one seeded optimization. `algorithm` is `"lfa"`, `"pso"` or `"ga"`.
///
/// # Safety
/// Handles must be live, `algorithm` NUL-terminated and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lfa_run(
    algorithm: *const c_char,
    bench: *const LfaBenchmark,
    params: *const LfaParams,
    seed: u64,
    out: *mut *mut LfaRunResult,
) -> LfaStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let algo: Algorithm = str_arg(algorithm, "algorithm")?.parse().map_err(fail)?;
        let b = as_ref(bench, "bench")?;
        let p = as_ref(params, "params")?;
        p.0.validate(algo).map_err(fail)?;
        let r = harness::run_once(algo, &b.0, &p.0, seed).map_err(fail)?;
        *out = Box::into_raw(Box::new(LfaRunResult(r)));
        Ok(())
    })
}

/// # Safety
/// `result` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn lfa_result_free(result: *mut LfaRunResult) {
    if !result.is_null() {
        drop(Box::from_raw(result));
    }
}

/// # Safety
/// `result` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn lfa_result_best_value(result: *const LfaRunResult) -> f64 {
    result.as_ref().map_or(f64::NAN, |r| r.0.best_value)
}

/// # Safety
/// `result` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn lfa_result_evaluations(result: *const LfaRunResult) -> u64 {
    result.as_ref().map_or(0, |r| r.0.evaluations)
}

/// # Safety
/// `result` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn lfa_result_generations(result: *const LfaRunResult) -> u64 {
    result.as_ref().map_or(0, |r| r.0.generations as u64)
}

/// # Safety
/// `result` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn lfa_result_success(result: *const LfaRunResult) -> bool {
    result.as_ref().is_some_and(|r| r.0.success)
}

/// Copies the best position into `buf`, which must hold the benchmark
/// dimension.
///
/// # Safety
/// `buf` must point to `len` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn lfa_result_best_position(
    result: *const LfaRunResult,
    buf: *mut f64,
    len: usize,
) -> LfaStatus {
    guard(|| {
        let r = as_ref(result, "result")?;
        if buf.is_null() {
            return Err(null("buf"));
        }
        let x = &r.0.best_position;
        if len < x.len() {
            return Err(fail(Error::DimensionMismatch {
                expected: x.len(),
                found: len,
            }));
        }
        std::slice::from_raw_parts_mut(buf, x.len()).copy_from_slice(x);
        Ok(())
    })
}

/// Result as pretty JSON. Release with [`lfa_string_free`].
///
/// # Safety
/// `result` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn lfa_result_to_json(result: *const LfaRunResult) -> *mut c_char {
    match result.as_ref() {
        Some(r) => to_c_string(r.0.to_json()),
        None => {
            null("result");
            ptr::null_mut()
        }
    }
}

/// Runs `n_trials` seeded trials with seeds `base_seed + k`.
///
/// # Safety
/// Handles must be live, `algorithm` NUL-terminated and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lfa_run_trials(
    algorithm: *const c_char,
    bench: *const LfaBenchmark,
    params: *const LfaParams,
    n_trials: usize,
    base_seed: u64,
    out: *mut LfaTrialSummary,
) -> LfaStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let algo = str_arg(algorithm, "algorithm")?;
        let b = as_ref(bench, "bench")?;
        let p = as_ref(params, "params")?;
        let s = harness::run_trials(algo, &b.0, &p.0, n_trials, base_seed).map_err(fail)?;
        *out = LfaTrialSummary {
            n_trials: s.n_trials as u64,
            successes: s.successes as u64,
            mean_evals: s.mean_evaluations.unwrap_or(f64::NAN),
            std_evals: s.std_evaluations.unwrap_or(f64::NAN),
            success_rate: s.success_rate,
        };
        Ok(())
    })
}

/// Benchmark registry as JSON. Release with [`lfa_string_free`].
#[no_mangle]
pub extern "C" fn lfa_registry_json() -> *mut c_char {
    to_c_string(benchmarks::registry_json())
}
