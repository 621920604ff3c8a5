#ifndef QUASIFOLD_H
#define QUASIFOLD_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes of the C API.
 */
typedef enum QfStatus {
  QF_STATUS_OK = 0,
  QF_STATUS_NULL_POINTER = 1,
  QF_STATUS_INVALID_UTF8 = 2,
  QF_STATUS_PARSE = 3,
  QF_STATUS_FIELD = 4,
  QF_STATUS_DIMENSION = 5,
  QF_STATUS_EMPTY = 6,
  QF_STATUS_UNBOUNDED = 7,
  QF_STATUS_NON_SIMPLE = 8,
  QF_STATUS_REDUNDANT = 9,
  QF_STATUS_NOT_SURJECTIVE = 10,
  QF_STATUS_NON_GENERIC = 11,
  QF_STATUS_OUTSIDE_DELTA = 12,
  QF_STATUS_CONSISTENCY = 13,
  QF_STATUS_BUFFER_TOO_SMALL = 14,
  QF_STATUS_PANIC = 15,
} QfStatus;

/**
 * Closedness of the null subgroup.
 */
typedef enum QfNullClosure {
  QF_NULL_CLOSURE_RATIONAL_CLOSED = 0,
  QF_NULL_CLOSURE_DENSE_WINDING = 1,
} QfNullClosure;

/**
 * Opaque analysis handle.
 */
typedef struct QfAnalysis QfAnalysis;

/**
 * Opaque polytope handle.
 */
typedef struct QfPolytope QfPolytope;

typedef struct QfDimensions {
  size_t dim_m;
  size_t dim_f;
  size_t codim;
  size_t quasifold_dim;
} QfDimensions;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failure on this thread, or NULL. Valid until the next
 * failing call on the same thread.
 */
const char *qf_last_error(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *qf_version(void);

/**
 * Parses a polytope file (JSON text) into a new handle stored in `*out`.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum QfStatus qf_polytope_from_json(const char *json, struct QfPolytope **out);

/**
 * # Safety
 * `p` must come from [`qf_polytope_from_json`] and not be used afterwards.
 */
void qf_polytope_free(struct QfPolytope *p);

/**
 * Ambient dimension `m`, or 0 for NULL.
 *
 * # Safety
 * `p` must be NULL or a live polytope handle.
 */
size_t qf_polytope_dim(const struct QfPolytope *p);

/**
 * Number of half-spaces `d`, or 0 for NULL.
 *
 * # Safety
 * `p` must be NULL or a live polytope handle.
 */
size_t qf_polytope_facet_count(const struct QfPolytope *p);

/**
 * Runs the full pipeline. `xi` is an optional comma-separated direction
 * (NULL selects one from `seed`); `audit` enables every counting audit.
 *
 * # Safety
 * `p` must be a live polytope handle, `xi` NULL or NUL-terminated, `out` valid.
 */
enum QfStatus qf_analyze(const struct QfPolytope *p,
                         const char *xi,
                         int64_t seed,
                         bool audit,
                         struct QfAnalysis **out);

/**
 * # Safety
 * `a` must come from [`qf_analyze`] and not be used afterwards.
 */
void qf_analysis_free(struct QfAnalysis *a);

/**
 * Face counts `f_0, …, f_m`.
 *
 * Writes the entry count to `*written` (if non-NULL) and copies the entries
 * when `capacity` suffices, else returns `BufferTooSmall`.
 *
 * # Safety
 * `a` must be a live analysis handle; `out` must hold `capacity` entries.
 */
enum QfStatus qf_analysis_f_vector(const struct QfAnalysis *a,
                                   uint64_t *out,
                                   size_t capacity,
                                   size_t *written);

/**
 * h-vector `h_0, …, h_m`.
 *
 * Writes the entry count to `*written` (if non-NULL) and copies the entries
 * when `capacity` suffices, else returns `BufferTooSmall`.
 *
 * # Safety
 * `a` must be a live analysis handle; `out` must hold `capacity` entries.
 */
enum QfStatus qf_analysis_h_vector(const struct QfAnalysis *a,
                                   uint64_t *out,
                                   size_t capacity,
                                   size_t *written);

/**
 * Basic Betti numbers `b_0, …, b_{2m}` from vertex indices.
 *
 * Writes the entry count to `*written` (if non-NULL) and copies the entries
 * when `capacity` suffices, else returns `BufferTooSmall`.
 *
 * # Safety
 * `a` must be a live analysis handle; `out` must hold `capacity` entries.
 */
enum QfStatus qf_analysis_betti(const struct QfAnalysis *a,
                                uint64_t *out,
                                size_t capacity,
                                size_t *written);

/**
 * Basic Betti numbers `b_0, …, b_{2m}` from the h-vector.
 *
 * Writes the entry count to `*written` (if non-NULL) and copies the entries
 * when `capacity` suffices, else returns `BufferTooSmall`.
 *
 * # Safety
 * `a` must be a live analysis handle; `out` must hold `capacity` entries.
 */
enum QfStatus qf_analysis_betti_h(const struct QfAnalysis *a,
                                  uint64_t *out,
                                  size_t capacity,
                                  size_t *written);

/**
 * Basic Euler characteristic, or 0 for NULL.
 *
 * # Safety
 * `a` must be NULL or a live analysis handle.
 */
int64_t qf_analysis_euler(const struct QfAnalysis *a);

/**
 * Basic Hodge number `h^{p,q}`, or 0 when out of range.
 *
 * # Safety
 * `a` must be NULL or a live analysis handle.
 */
uint64_t qf_analysis_hodge(const struct QfAnalysis *a, size_t p, size_t q);

/**
 * # Safety
 * `a` must be a live analysis handle and `out` valid.
 */
enum QfStatus qf_analysis_dimensions(const struct QfAnalysis *a, struct QfDimensions *out);

/**
 * # Safety
 * `a` must be a live analysis handle.
 */
enum QfNullClosure qf_analysis_null_closure(const struct QfAnalysis *a);

/**
 * Whether every audit in the report passed; false for NULL.
 *
 * # Safety
 * `a` must be NULL or a live analysis handle.
 */
bool qf_analysis_all_audits_pass(const struct QfAnalysis *a);

/**
 * The JSON report as a new string, released with [`qf_string_free`]; NULL on failure.
 *
 * # Safety
 * `a` must be a live analysis handle.
 */
char *qf_analysis_report_json(const struct QfAnalysis *a);

/**
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void qf_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QUASIFOLD_H */
