#ifndef TOPOSMOOTH_H
#define TOPOSMOOTH_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum TsFilter {
  /**
   * Parameter: odd window length.
   */
  TS_FILTER_MEDIAN = 0,
  /**
   * Parameter: sigma.
   */
  TS_FILTER_GAUSSIAN = 1,
  /**
   * Parameter: number of frequencies kept.
   */
  TS_FILTER_CUTOFF = 2,
  /**
   * Parameter: stride.
   */
  TS_FILTER_SUBSAMPLE = 3,
  /**
   * Parameter: epsilon.
   */
  TS_FILTER_DOUGLAS_PEUCKER = 4,
} TsFilter;

typedef enum TsPolicy {
  /**
   * Drop pairs with persistence strictly below the parameter.
   */
  TS_POLICY_THRESHOLD = 0,
  /**
   * Drop the lowest-ranked fraction of pairs.
   */
  TS_POLICY_FRACTION = 1,
} TsPolicy;

/**
 * Result code of every fallible call.
 */
typedef enum TsStatus {
  TS_STATUS_OK = 0,
  TS_STATUS_NULL_POINTER = 1,
  TS_STATUS_INVALID_SERIES = 2,
  TS_STATUS_INVALID_PARAMETER = 3,
  TS_STATUS_LENGTH_MISMATCH = 4,
  TS_STATUS_BUFFER_TOO_SMALL = 5,
  TS_STATUS_INTERNAL = 6,
  TS_STATUS_PANIC = 7,
} TsStatus;

/**
 * Opaque persistence diagram handle.
 */
typedef struct TsDiagram TsDiagram;

/**
 * Opaque series handle.
 */
typedef struct TsSeries TsSeries;

/**
 * One finite pair of a diagram.
 */
typedef struct TsPair {
  size_t birth_index;
  size_t death_index;
  double birth;
  double death;
  double persistence;
} TsPair;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. The pointer is
 * valid until the next call into this library from the same thread.
 */
const char *ts_last_error(void);

/**
 * Creates a series with unit-spaced positions from `len` samples.
 *
 * # Safety
 * `values` must point to `len` readable doubles; `out` must be writable.
 */
enum TsStatus ts_series_new(const double *values, size_t len, struct TsSeries **out);

/**
 * Creates a series with explicit, strictly increasing positions.
 *
 * # Safety
 * `values` and `positions` must each point to `len` readable doubles.
 */
enum TsStatus ts_series_with_positions(const double *values,
                                       const double *positions,
                                       size_t len,
                                       struct TsSeries **out);

/**
 * # Safety
 * `series` must be null or a handle from this library not yet freed.
 */
void ts_series_free(struct TsSeries *series);

/**
 * Number of samples, or 0 for a null handle.
 *
 * # Safety
 * `series` must be null or a live handle.
 */
size_t ts_series_len(const struct TsSeries *series);

/**
 * Copies the samples into `buffer`. `written` receives the series length
 * even when the buffer is too small.
 *
 * # Safety
 * `buffer` must hold `capacity` writable doubles; `written` may be null.
 */
enum TsStatus ts_series_copy_values(const struct TsSeries *series,
                                    double *buffer,
                                    size_t capacity,
                                    size_t *written);

/**
 * Persistence-guided simplification.
 *
 * # Safety
 * `series` must be a live handle; `out` must be writable.
 */
enum TsStatus ts_simplify(const struct TsSeries *series,
                          enum TsPolicy policy,
                          double parameter,
                          struct TsSeries **out);

/**
 * Applies one of the baseline filters.
 *
 * # Safety
 * `series` must be a live handle; `out` must be writable.
 */
enum TsStatus ts_filter(const struct TsSeries *series,
                        enum TsFilter filter,
                        double parameter,
                        struct TsSeries **out);

/**
 * Sublevel-set persistence diagram of the series.
 *
 * # Safety
 * `series` must be a live handle; `out` must be writable.
 */
enum TsStatus ts_persistence(const struct TsSeries *series, struct TsDiagram **out);

/**
 * # Safety
 * `diagram` must be null or a handle from this library not yet freed.
 */
void ts_diagram_free(struct TsDiagram *diagram);

/**
 * Number of finite pairs, or 0 for a null handle.
 *
 * # Safety
 * `diagram` must be null or a live handle.
 */
size_t ts_diagram_len(const struct TsDiagram *diagram);

/**
 * Sample index of the global minimum (the essential class).
 *
 * # Safety
 * `diagram` must be a live handle; `out` must be writable.
 */
enum TsStatus ts_diagram_essential_index(const struct TsDiagram *diagram, size_t *out);

/**
 * The `index`-th pair in ascending persistence order.
 *
 * # Safety
 * `diagram` must be a live handle; `out` must be writable.
 */
enum TsStatus ts_diagram_pair(const struct TsDiagram *diagram, size_t index, struct TsPair *out);

/**
 * 1-Wasserstein distance between the finite parts of two diagrams.
 *
 * # Safety
 * `a`, `b` must be live handles; `out` must be writable.
 */
enum TsStatus ts_wasserstein1(const struct TsDiagram *a, const struct TsDiagram *b, double *out);

/**
 * Bottleneck distance between the finite parts of two diagrams.
 *
 * # Safety
 * `a`, `b` must be live handles; `out` must be writable.
 */
enum TsStatus ts_bottleneck(const struct TsDiagram *a, const struct TsDiagram *b, double *out);

/**
 * Sum of absolute differences of two equal-length series.
 *
 * # Safety
 * `a`, `b` must be live handles; `out` must be writable.
 */
enum TsStatus ts_norm_l1(const struct TsSeries *a, const struct TsSeries *b, double *out);

/**
 * Largest absolute difference of two equal-length series.
 *
 * # Safety
 * `a`, `b` must be live handles; `out` must be writable.
 */
enum TsStatus ts_norm_linf(const struct TsSeries *a, const struct TsSeries *b, double *out);

/**
 * Approximate entropy with template length `m` and absolute tolerance `r`.
 * A negative `r` selects the default: 0.2 times the sample standard deviation.
 *
 * # Safety
 * `series` must be a live handle; `out` must be writable.
 */
enum TsStatus ts_approx_entropy(const struct TsSeries *series, size_t m, double r, double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TOPOSMOOTH_H */
