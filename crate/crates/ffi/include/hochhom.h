#ifndef HOCHHOM_H
#define HOCHHOM_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum HochhomStatus {
  HOCHHOM_STATUS_OK = 0,
  HOCHHOM_STATUS_NULL_POINTER = 1,
  HOCHHOM_STATUS_INVALID_UTF8 = 2,
  HOCHHOM_STATUS_INVALID_INPUT = 3,
  HOCHHOM_STATUS_BUDGET_EXCEEDED = 4,
  HOCHHOM_STATUS_HYPOTHESIS_VIOLATED = 5,
  HOCHHOM_STATUS_INTERNAL = 6,
} HochhomStatus;

/**
 * A finite-dimensional algebra.
 */
typedef struct HochhomAlgebra HochhomAlgebra;

/**
 * A parsed and validated job.
 */
typedef struct HochhomJob HochhomJob;

/**
 * The outcome of a job or computation.
 */
typedef struct HochhomReport HochhomReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or NULL. Valid until the
 * next call into the library from the same thread.
 */
const char *hochhom_last_error_message(void);

/**
 * Static version string.
 */
const char *hochhom_version(void);

/**
 * Parses a JSON job config (same schema as the command-line tool).
 *
 * # Safety
 * `json` must be NULL or a NUL-terminated string; `out` must be NULL or
 * writable.
 */
enum HochhomStatus hochhom_job_parse(const char *json, struct HochhomJob **out);

/**
 * Executes a job. A failing verification suite still returns `Ok`; read
 * the verdict with `hochhom_report_exit_code`.
 *
 * # Safety
 * `job` must be NULL or a live handle from `hochhom_job_parse`; `out`
 * must be NULL or writable.
 */
enum HochhomStatus hochhom_job_run(const struct HochhomJob *job, struct HochhomReport **out);

/**
 * # Safety
 * `job` must be NULL or a handle not yet freed.
 */
void hochhom_job_free(struct HochhomJob *job);

/**
 * Reads an algebra from a preset name (`"truncated_poly(3)"`) or a JSON
 * object. Infinite-dimensional presets are rejected.
 *
 * # Safety
 * `spec` must be NULL or a NUL-terminated string; `out` must be NULL or
 * writable.
 */
enum HochhomStatus hochhom_algebra_new(const char *spec, struct HochhomAlgebra **out);

/**
 * Dimension over ℚ, or 0 for NULL.
 *
 * # Safety
 * `a` must be NULL or a live algebra handle.
 */
size_t hochhom_algebra_dim(const struct HochhomAlgebra *a);

/**
 * # Safety
 * `a` must be NULL or a handle not yet freed.
 */
void hochhom_algebra_free(struct HochhomAlgebra *a);

/**
 * `H_n(K, A)` for `n ≤ top` with `K` given as an expression such as
 * `"sphere(2)"`. `budget = 0` means the default.
 *
 * # Safety
 * `a` must be NULL or a live algebra handle, `space` NULL or a
 * NUL-terminated string, `out` NULL or writable.
 */
enum HochhomStatus hochhom_homology(const struct HochhomAlgebra *a,
                                    const char *space,
                                    size_t top,
                                    bool normalized,
                                    size_t budget,
                                    struct HochhomReport **out);

/**
 * Dimensions in degrees `0..len`, or NULL for suite reports. The array
 * lives as long as the report.
 *
 * # Safety
 * `r` must be NULL or a live report; `len` must be NULL or writable.
 */
const size_t *hochhom_report_dims(const struct HochhomReport *r, size_t *len);

/**
 * The status the command-line tool would exit with: 0 success, 1 failed
 * suite. Returns -1 for NULL.
 *
 * # Safety
 * `r` must be NULL or a live report.
 */
int32_t hochhom_report_exit_code(const struct HochhomReport *r);

/**
 * The JSON report as a new string; release it with `hochhom_string_free`.
 * `with_timing = false` drops every `elapsed_ms` field.
 *
 * # Safety
 * `r` must be NULL or a live report.
 */
char *hochhom_report_json(const struct HochhomReport *r, bool with_timing);

/**
 * # Safety
 * `r` must be NULL or a handle not yet freed.
 */
void hochhom_report_free(struct HochhomReport *r);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library and not yet freed.
 */
void hochhom_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HOCHHOM_H */
