#ifndef MERTENS_H
#define MERTENS_H

/* Generated by cbindgen. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Which arithmetic function a series sums.
 */
typedef enum MertensKind {
  MERTENS_KIND_MOEBIUS = 0,
  MERTENS_KIND_LIOUVILLE = 1,
} MertensKind;

/**
 * Status codes. Values 3 to 9 match the command-line exit codes.
 */
typedef enum MertensStatus {
  MERTENS_STATUS_OK = 0,
  MERTENS_STATUS_NULL_POINTER = 1,
  MERTENS_STATUS_INVALID_UTF8 = 2,
  MERTENS_STATUS_DOMAIN = 3,
  MERTENS_STATUS_MISSING_FILE = 4,
  MERTENS_STATUS_BAD_INPUT = 5,
  MERTENS_STATUS_NOT_SIMPLE = 6,
  MERTENS_STATUS_NUMERICS = 7,
  MERTENS_STATUS_DELTA_TOO_LARGE = 8,
  MERTENS_STATUS_IO = 9,
  MERTENS_STATUS_PANIC = 10,
} MertensStatus;

/**
 * Opaque partial-sum series M(x) or L(x).
 */
typedef struct MertensSeries MertensSeries;

/**
 * Opaque table of zeta zeros with ζ′ at each.
 */
typedef struct MertensZeroSet MertensZeroSet;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failure on this thread, or NULL if none.
 *
 * The pointer stays valid until the next failing call on the same thread.
 */
const char *mertens_last_error(void);

/**
 * μ(n) for n ≥ 1.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum MertensStatus mertens_mu(uint64_t n, int8_t *out);

/**
 * Sieve partial sums up to `x_max` with checkpoints every `stride`.
 *
 * # Safety
 * `out` must be valid for writes. The handle written there must be released
 * with [`mertens_series_free`].
 */
enum MertensStatus mertens_series_new(uint64_t x_max,
                                      uint64_t stride,
                                      enum MertensKind kind,
                                      struct MertensSeries **out);

/**
 * Release a series. NULL is ignored.
 *
 * # Safety
 * `series` must come from [`mertens_series_new`] and not be used afterwards.
 */
void mertens_series_free(struct MertensSeries *series);

/**
 * Largest x covered by the series, 0 for NULL.
 *
 * # Safety
 * `series` must be NULL or a live handle.
 */
uint64_t mertens_series_x_max(const struct MertensSeries *series);

/**
 * M(n) (or L(n)) for 1 ≤ n ≤ x_max.
 *
 * # Safety
 * `series` must be a live handle and `out` valid for writes.
 */
enum MertensStatus mertens_series_value_at(const struct MertensSeries *series,
                                           uint64_t n,
                                           int64_t *out);

/**
 * (1/log X) ∫₂^X (M(x)/x)² dx; needs a stride-1 series.
 *
 * # Safety
 * `series` must be a live handle and `out` valid for writes.
 */
enum MertensStatus mertens_weak_mertens_ratio(const struct MertensSeries *series,
                                              double x,
                                              double *out);

/**
 * Logarithmic density of {x : |M(x)| ≤ √x} up to x_max; needs a stride-1 series.
 *
 * # Safety
 * `series` must be a live handle and `out` valid for writes.
 */
enum MertensStatus mertens_log_density(const struct MertensSeries *series, double *out);

/**
 * Load a zero table (one ordinate per line); `limit` 0 keeps all zeros.
 *
 * # Safety
 * `path` must be a NUL-terminated string and `out` valid for writes. The
 * handle must be released with [`mertens_zeros_free`].
 */
enum MertensStatus mertens_zeros_load(const char *path, size_t limit, struct MertensZeroSet **out);

/**
 * Release a zero set. NULL is ignored.
 *
 * # Safety
 * `zeros` must come from [`mertens_zeros_load`] and not be used afterwards.
 */
void mertens_zeros_free(struct MertensZeroSet *zeros);

/**
 * Number of zeros, 0 for NULL.
 *
 * # Safety
 * `zeros` must be NULL or a live handle.
 */
size_t mertens_zeros_len(const struct MertensZeroSet *zeros);

/**
 * γ and ζ′(½+iγ) of the zero at 0-based `index`.
 *
 * # Safety
 * `zeros` must be a live handle; the out-pointers must be valid for writes.
 */
enum MertensStatus mertens_zeros_record(const struct MertensZeroSet *zeros,
                                        size_t index,
                                        double *gamma,
                                        double *re_zeta_prime,
                                        double *im_zeta_prime);

/**
 * Zero-sum approximation of M(x) using zeros with γ ≤ t.
 *
 * # Safety
 * `zeros` must be a live handle and `out` valid for writes.
 */
enum MertensStatus mertens_zero_sum(const struct MertensZeroSet *zeros,
                                    double x,
                                    double t,
                                    double *out);

/**
 * β = Σ 2/|ρζ′(ρ)|² over the table plus the modeled tail.
 *
 * # Safety
 * `zeros` must be a live handle and `out` valid for writes.
 */
enum MertensStatus mertens_beta(const struct MertensZeroSet *zeros, double *out);

/**
 * ν̂(ξ) over the first `n` zeros.
 *
 * # Safety
 * `zeros` must be a live handle and `out` valid for writes.
 */
enum MertensStatus mertens_nu_hat(const struct MertensZeroSet *zeros,
                                  double xi,
                                  size_t n,
                                  double *out);

/**
 * Importance-sampled P(X ≥ v) for the series over the first `n_zeros` zeros.
 *
 * # Safety
 * `zeros` must be a live handle; the out-pointers must be valid for writes.
 */
enum MertensStatus mertens_tail_probability(const struct MertensZeroSet *zeros,
                                            size_t n_zeros,
                                            double v,
                                            size_t n_samples,
                                            uint64_t seed,
                                            double *estimate,
                                            double *stderr);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* MERTENS_H */
