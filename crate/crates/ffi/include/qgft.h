#ifndef QGFT_H
#define QGFT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum QgftStatus {
  QGFT_STATUS_OK = 0,
  QGFT_STATUS_NULL_POINTER = 1,
  QGFT_STATUS_INVALID_ARGUMENT = 2,
  QGFT_STATUS_LENGTH_MISMATCH = 3,
  QGFT_STATUS_PARSE_ERROR = 4,
  QGFT_STATUS_GROUP_ERROR = 5,
  QGFT_STATUS_ENGINE_ERROR = 6,
  /**
   * The call completed but a verification check did not pass.
   */
  QGFT_STATUS_CHECK_FAILED = 7,
  QGFT_STATUS_PANIC = 8,
} QgftStatus;

/**
 * Opaque model handle.
 */
typedef struct QgftModel QgftModel;

typedef struct QgftComplex {
  double re;
  double im;
} QgftComplex;

/**
 * The three routes of the dual pairing `⟨b|a⟩`.
 */
typedef struct QgftPairing {
  struct QgftComplex via_inverse;
  struct QgftComplex via_forward;
  struct QgftComplex via_w;
  double spread;
} QgftPairing;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Builds the model of a group from its shorthand (`cyclic:6`, `s3`,
 * `product:cyclic:2xcyclic:3`, ...) or a Cayley table file path.
 *
 * # Safety
 * `spec` must be a NUL-terminated string and `out` a valid pointer.
 */
enum QgftStatus qgft_model_new(const char *spec, struct QgftModel **out);

/**
 * Releases a model. Null is ignored.
 *
 * # Safety
 * `model` must come from [`qgft_model_new`] and not be used afterwards.
 */
void qgft_model_free(struct QgftModel *model);

/**
 * Group order `n`, the dimension of the Hilbert space.
 *
 * # Safety
 * `model` must be a live handle and `out` a valid pointer.
 */
enum QgftStatus qgft_model_order(const struct QgftModel *model, size_t *out);

/**
 * `F(π_a)` as a row-major `n×n` matrix (`out_len = n²`).
 *
 * # Safety
 * `a` must hold `len` values and `out` room for `out_len` values.
 */
enum QgftStatus qgft_fourier(const struct QgftModel *model,
                             const struct QgftComplex *a,
                             size_t len,
                             struct QgftComplex *out,
                             size_t out_len);

/**
 * `F⁻¹(L_b)` as a row-major `n×n` matrix (`out_len = n²`).
 *
 * # Safety
 * As for [`qgft_fourier`].
 */
enum QgftStatus qgft_inverse_fourier(const struct QgftModel *model,
                                     const struct QgftComplex *b,
                                     size_t len,
                                     struct QgftComplex *out,
                                     size_t out_len);

/**
 * Convolution of two functions (`dual = false`) or of two coefficient
 * functions of the group algebra (`dual = true`), as a function of
 * length `n`.
 *
 * # Safety
 * `a` and `c` must hold `len` values each and `out` room for `out_len`.
 */
enum QgftStatus qgft_convolve(const struct QgftModel *model,
                              const struct QgftComplex *a,
                              const struct QgftComplex *c,
                              size_t len,
                              bool dual,
                              struct QgftComplex *out,
                              size_t out_len);

/**
 * `⟨L_b|π_a⟩` by the three Haar-weight routes.
 *
 * # Safety
 * `a` and `b` must hold `len` values each and `out` must be valid.
 */
enum QgftStatus qgft_pair(const struct QgftModel *model,
                          const struct QgftComplex *a,
                          const struct QgftComplex *b,
                          size_t len,
                          struct QgftPairing *out);

/**
 * Runs the verification suite and hands back the JSON report, to be
 * released with [`qgft_string_free`]. Returns `CheckFailed` (with the
 * report still written) when any check fails.
 *
 * # Safety
 * `model` must be a live handle and `out_json` a valid pointer.
 */
enum QgftStatus qgft_verify(const struct QgftModel *model,
                            double tol,
                            uint64_t seed,
                            char **out_json);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void qgft_string_free(char *s);

/**
 * Message of the last failure on this thread, or null. The pointer stays
 * valid until the next failing call on the same thread.
 */
const char *qgft_last_error_message(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QGFT_H */
