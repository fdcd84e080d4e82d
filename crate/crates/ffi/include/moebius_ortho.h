#ifndef MOEBIUS_ORTHO_H
#define MOEBIUS_ORTHO_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum MoStatus {
  MO_STATUS_OK = 0,
  MO_STATUS_NULL_POINTER = 1,
  MO_STATUS_DEGENERATE_MAP = 2,
  MO_STATUS_POLE = 3,
  MO_STATUS_UNKNOWN_FAMILY = 4,
  MO_STATUS_INVALID_ARGUMENT = 5,
  MO_STATUS_NO_CONVERGENCE = 6,
  MO_STATUS_NUMERICAL = 7,
  MO_STATUS_BUFFER_TOO_SMALL = 8,
  MO_STATUS_PANIC = 9,
} MoStatus;

/**
 * Opaque Möbius map.
 */
typedef struct MoMap MoMap;

/**
 * Opaque transformed sequence Q_0..Q_N.
 */
typedef struct MoSequence MoSequence;

typedef struct MoComplex {
  double re;
  double im;
} MoComplex;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread; empty if none. The pointer stays
 * valid until the next failing call on the same thread.
 */
const char *mo_last_error(void);

/**
 * # Safety
 * `out` must be valid for a write.
 */
enum MoStatus mo_map_new(struct MoComplex a,
                         struct MoComplex b,
                         struct MoComplex c,
                         struct MoComplex d,
                         struct MoMap **out);

/**
 * The Cayley map whose image of the real line is the unit circle.
 *
 * # Safety
 * `out` must be valid for a write.
 */
enum MoStatus mo_map_cayley(struct MoMap **out);

/**
 * # Safety
 * `map` must come from `mo_map_new` or be null; it is invalid afterwards.
 */
void mo_map_free(struct MoMap *map);

/**
 * # Safety
 * Pointers must be valid.
 */
enum MoStatus mo_map_apply(const struct MoMap *map, struct MoComplex x, struct MoComplex *out);

/**
 * # Safety
 * Pointers must be valid.
 */
enum MoStatus mo_map_inverse(const struct MoMap *map, struct MoMap **out);

/**
 * Builds Q_0..Q_{n_max} for a named family ("hermite", "laguerre", "genlaguerre",
 * "jacobi", "chebyshev") with `n_params` complex parameters.
 *
 * # Safety
 * `family` must be a NUL-terminated string, `params` must hold `n_params` values.
 */
enum MoStatus mo_sequence_new(const char *family,
                              const struct MoComplex *params,
                              size_t n_params,
                              const struct MoMap *map,
                              size_t n_max,
                              struct MoSequence **out);

/**
 * # Safety
 * `seq` must come from `mo_sequence_new` or be null; it is invalid afterwards.
 */
void mo_sequence_free(struct MoSequence *seq);

/**
 * Coefficients of Q_n in increasing degree. `*len` receives the count even when the
 * buffer is too small.
 *
 * # Safety
 * `buf` must hold `cap` values; `len` must be valid for a write.
 */
enum MoStatus mo_sequence_coeffs(const struct MoSequence *seq,
                                 size_t n,
                                 struct MoComplex *buf,
                                 size_t cap,
                                 size_t *len);

/**
 * Q_n(x).
 *
 * # Safety
 * Pointers must be valid.
 */
enum MoStatus mo_sequence_eval(const struct MoSequence *seq,
                               size_t n,
                               struct MoComplex x,
                               struct MoComplex *out);

/**
 * ω_{m,n}(x) = ω(x)/(cx+d)^{m+n}.
 *
 * # Safety
 * Pointers must be valid.
 */
enum MoStatus mo_sequence_weight(const struct MoSequence *seq,
                                 size_t m,
                                 size_t n,
                                 struct MoComplex x,
                                 struct MoComplex *out);

/**
 * Gram matrix of R_0..R_N on the image contour; reports the worst off-diagonal ratio and
 * the worst relative diagonal error against the classical norms. `nodes` = 0 keeps the
 * default rule.
 *
 * # Safety
 * Pointers must be valid.
 */
enum MoStatus mo_sequence_gram(const struct MoSequence *seq,
                               size_t nodes,
                               double *max_offdiag,
                               double *max_diag_error);

/**
 * Roots of Q_n; `*len` receives the degree.
 *
 * # Safety
 * `buf` must hold `cap` values; `len` must be valid for a write.
 */
enum MoStatus mo_sequence_roots(const struct MoSequence *seq,
                                size_t n,
                                struct MoComplex *buf,
                                size_t cap,
                                size_t *len);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MOEBIUS_ORTHO_H */
