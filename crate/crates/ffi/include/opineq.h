#ifndef OPINEQ_H
#define OPINEQ_H

/* Generated by cbindgen from src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every function.
 */
typedef enum OpineqStatus {
  OPINEQ_STATUS_OK = 0,
  OPINEQ_STATUS_NULL_POINTER = 1,
  OPINEQ_STATUS_INVALID_ARGUMENT = 2,
  OPINEQ_STATUS_DIMENSION_MISMATCH = 3,
  OPINEQ_STATUS_NUMERICAL_FAILURE = 4,
  OPINEQ_STATUS_UNKNOWN_BOUND = 5,
  OPINEQ_STATUS_BUFFER_TOO_SMALL = 6,
  OPINEQ_STATUS_PANIC = 7,
} OpineqStatus;

/**
 * Opaque dense complex matrix.
 */
typedef struct OpineqMatrix OpineqMatrix;

/**
 * Numerical thresholds; see `opineq_default_tolerances`.
 */
typedef struct OpineqTolerances {
  double eig_tol;
  double radius_tol;
  double slack_tol;
} OpineqTolerances;

/**
 * Certified enclosure `lower <= w(T) <= upper`.
 */
typedef struct OpineqRadius {
  double lower;
  double upper;
  double theta_star;
  uint64_t evaluations;
  /**
   * 1 if the requested width was reached.
   */
  int32_t converged;
} OpineqRadius;

/**
 * One evaluated inequality `lhs <= rhs`.
 */
typedef struct OpineqBoundResult {
  double lhs;
  double rhs;
  double slack;
  double normalized_slack;
  /**
   * 1 if the inequality holds within tolerance.
   */
  int32_t holds;
} OpineqBoundResult;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *opineq_version(void);

/**
 * Default thresholds: `eig_tol = 1e-12`, `radius_tol = 1e-8`, `slack_tol = 1e-7`.
 */
struct OpineqTolerances opineq_default_tolerances(void);

/**
 * Copies the calling thread's last error message into `buf` (NUL-terminated,
 * truncated to `capacity - 1` bytes). Returns the full message length
 * excluding the terminator; 0 means the last call succeeded.
 *
 * # Safety
 * `buf` must be null or valid for `capacity` bytes of writes.
 */
size_t opineq_last_error_message(char *buf, size_t capacity);

/**
 * Builds a `rows x cols` matrix from `2 * rows * cols` doubles laid out
 * row-major as `re, im, re, im, ...`. On success `*out` owns the handle.
 *
 * # Safety
 * `entries` must be valid for `2 * rows * cols` reads; `out` must be valid
 * for one write.
 */
enum OpineqStatus opineq_matrix_new(size_t rows,
                                    size_t cols,
                                    const double *entries,
                                    struct OpineqMatrix **out);

/**
 * Releases a handle. Null is a no-op.
 *
 * # Safety
 * `m` must be null or a handle from `opineq_matrix_new` not yet freed.
 */
void opineq_matrix_free(struct OpineqMatrix *m);

/**
 * Writes the matrix shape.
 *
 * # Safety
 * `m` must be a live handle; `rows` and `cols` must be valid for one write.
 */
enum OpineqStatus opineq_matrix_shape(const struct OpineqMatrix *m, size_t *rows, size_t *cols);

/**
 * Spectral norm `||T||`.
 *
 * # Safety
 * `m` must be a live handle; `out` must be valid for one write.
 */
enum OpineqStatus opineq_operator_norm(const struct OpineqMatrix *m, double *out);

/**
 * Singular values in non-increasing order. `*written` receives the count
 * (`min(rows, cols)`) even when `capacity` is too small.
 *
 * # Safety
 * `m` must be a live handle; `buf` must be valid for `capacity` writes;
 * `written` must be valid for one write.
 */
enum OpineqStatus opineq_singular_values(const struct OpineqMatrix *m,
                                         double *buf,
                                         size_t capacity,
                                         size_t *written);

/**
 * Certified numerical radius. `tol` may be null for defaults.
 *
 * # Safety
 * `m` must be a live handle; `tol` must be null or valid; `out` must be
 * valid for one write.
 */
enum OpineqStatus opineq_numerical_radius(const struct OpineqMatrix *m,
                                          const struct OpineqTolerances *tol,
                                          struct OpineqRadius *out);

/**
 * Evaluates bound `id` (for example `"B5"` or `"BASE-TRI"`) on `count`
 * operands. `B12` reports its worst singular value index. `tol` may be
 * null for defaults.
 *
 * # Safety
 * `id` must be a NUL-terminated string; `ops` must be valid for `count`
 * reads of live handles; `tol` must be null or valid; `out` must be valid
 * for one write.
 */
enum OpineqStatus opineq_evaluate_bound(const char *id,
                                        const struct OpineqMatrix *const *ops,
                                        size_t count,
                                        const struct OpineqTolerances *tol,
                                        struct OpineqBoundResult *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* OPINEQ_H */
