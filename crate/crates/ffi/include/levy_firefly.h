#ifndef LEVY_FIREFLY_H
#define LEVY_FIREFLY_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

/**
 * Status codes returned by every fallible function.
 */
typedef enum LfaStatus {
  LFA_STATUS_OK = 0,
  LFA_STATUS_NULL_POINTER = 1,
  LFA_STATUS_INVALID_ARGUMENT = 2,
  LFA_STATUS_UNKNOWN_FUNCTION = 3,
  LFA_STATUS_UNKNOWN_ALGORITHM = 4,
  LFA_STATUS_OUT_OF_DOMAIN = 5,
  LFA_STATUS_RUNTIME = 6,
  LFA_STATUS_PANIC = 7,
} LfaStatus;

/**
 * Benchmark function bound to a dimension.
 */
typedef struct LfaBenchmark LfaBenchmark;

/**
 * Parameters for all three algorithms.
 */
typedef struct LfaParams LfaParams;

/**
 * Outcome of one run.
 */
typedef struct LfaRunResult LfaRunResult;

/**
 * Summary of repeated trials. `mean_evals` and `std_evals` are NaN when no
 * trial succeeded.
 */
typedef struct LfaTrialSummary {
  uint64_t n_trials;
  uint64_t successes;
  double mean_evals;
  double std_evals;
  double success_rate;
} LfaTrialSummary;

/**
 * Message for the last failed call on this thread, or null. The pointer is
 * valid until the next failing call on the same thread.
 */
const char *lfa_last_error_message(void);

/**
 * Releases a string returned by this library.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void lfa_string_free(char *s);

/**
 * Looks up a registered benchmark. `dimension == 0` selects its default.
 *
 * # Safety
 * `name` must be a NUL-terminated string; `out` must be writable.
 */
enum LfaStatus lfa_benchmark_new(const char *name, size_t dimension, struct LfaBenchmark **out);

/**
 * # Safety
 * `bench` must be null or a live handle.
 */
void lfa_benchmark_free(struct LfaBenchmark *bench);

/**
 * # Safety
 * `bench` must be a live handle.
 */
size_t lfa_benchmark_dimension(const struct LfaBenchmark *bench);

/**
 * Known optimum value, NaN for a null handle.
 *
 * # Safety
 * `bench` must be a live handle.
 */
double lfa_benchmark_optimum(const struct LfaBenchmark *bench);

/**
 * Evaluates the benchmark at `x[0..len]`.
 *
 * # Safety
 * `x` must point to `len` doubles; `out` must be writable.
 */
enum LfaStatus lfa_benchmark_evaluate(const struct LfaBenchmark *bench,
                                      const double *x,
                                      size_t len,
                                      double *out);

/**
 * New parameter set with default values.
 */
struct LfaParams *lfa_params_new(void);

/**
 * # Safety
 * `params` must be null or a live handle.
 */
void lfa_params_free(struct LfaParams *params);

/**
 * Sets a named parameter. Shared keys (`population`, `epsilon`, `window`,
 * `max_generations`, `success_threshold`) apply to every algorithm.
 * Firefly keys: `alpha`, `gamma`, `lambda`, `beta0`, `m`, `t_min`,
 * `length_scale` (0 selects the domain width). PSO keys: `c1`, `c2`,
 * `velocity_cap`. GA keys: `mutation`, `crossover`, `mutation_scale`.
 *
 * # Safety
 * `params` must be a live handle and `key` a NUL-terminated string.
 */
enum LfaStatus lfa_params_set(struct LfaParams *params, const char *key, double value);

/**
 * Runs one seeded optimization. `algorithm` is `"lfa"`, `"pso"` or `"ga"`.
 *
 * # Safety
 * Handles must be live, `algorithm` NUL-terminated and `out` writable.
 */
enum LfaStatus lfa_run(const char *algorithm,
                       const struct LfaBenchmark *bench,
                       const struct LfaParams *params,
                       uint64_t seed,
                       struct LfaRunResult **out);

/**
 * # Safety
 * `result` must be null or a live handle.
 */
void lfa_result_free(struct LfaRunResult *result);

/**
 * # Safety
 * `result` must be a live handle.
 */
double lfa_result_best_value(const struct LfaRunResult *result);

/**
 * # Safety
 * `result` must be a live handle.
 */
uint64_t lfa_result_evaluations(const struct LfaRunResult *result);

/**
 * # Safety
 * `result` must be a live handle.
 */
uint64_t lfa_result_generations(const struct LfaRunResult *result);

/**
 * # Safety
 * `result` must be a live handle.
 */
bool lfa_result_success(const struct LfaRunResult *result);

/**
 * Copies the best position into `buf`, which must hold the benchmark
 * dimension.
 *
 * # Safety
 * `buf` must point to `len` writable doubles.
 */
enum LfaStatus lfa_result_best_position(const struct LfaRunResult *result, double *buf, size_t len);

/**
 * Result as pretty JSON. Release with [`lfa_string_free`].
 *
 * # Safety
 * `result` must be a live handle.
 */
char *lfa_result_to_json(const struct LfaRunResult *result);

/**
 * Runs `n_trials` seeded trials with seeds `base_seed + k`.
 *
 * # Safety
 * Handles must be live, `algorithm` NUL-terminated and `out` writable.
 */
enum LfaStatus lfa_run_trials(const char *algorithm,
                              const struct LfaBenchmark *bench,
                              const struct LfaParams *params,
                              size_t n_trials,
                              uint64_t base_seed,
                              struct LfaTrialSummary *out);

/**
 * Benchmark registry as JSON. Release with [`lfa_string_free`].
 */
char *lfa_registry_json(void);

#endif  /* LEVY_FIREFLY_H */
