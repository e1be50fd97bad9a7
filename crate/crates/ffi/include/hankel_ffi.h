#ifndef HANKEL_FFI_H
#define HANKEL_FFI_H

/* Generated by cbindgen. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

#define HK_CLASS_BOUNDED_TURNING 0

#define HK_CLASS_STARLIKE 1

#define HK_CLASS_CONVEX 2

#define HK_FUNCTIONAL_T 0

#define HK_FUNCTIONAL_FS 1

#define HK_FUNCTIONAL_H22 2

#define HK_FUNCTIONAL_H31 3

#define HK_MODEL_LZ 0

#define HK_MODEL_LZ_REAL 1

#define HK_MODEL_HERGLOTZ 2

#define HK_VARIANT_PAPER 0

#define HK_VARIANT_DERIVED 1

typedef enum HkStatus {
  HK_STATUS_OK = 0,
  HK_STATUS_NULL_POINTER = 1,
  HK_STATUS_INVALID_ARGUMENT = 2,
  HK_STATUS_OUT_OF_DOMAIN = 3,
  HK_STATUS_INSUFFICIENT_DATA = 4,
  HK_STATUS_NOT_NORMALIZED = 5,
  HK_STATUS_BUFFER_TOO_SMALL = 6,
  HK_STATUS_OVERFLOW = 7,
  HK_STATUS_NO_VALUE = 8,
  HK_STATUS_PANIC = 9,
} HkStatus;

typedef enum HkVerdict {
  HK_VERDICT_ATTAINS_WITHIN_TOL = 0,
  HK_VERDICT_BELOW_BOUND = 1,
  HK_VERDICT_EXCEEDS_BOUND = 2,
} HkVerdict;

/**
 * Opaque result of [`hk_audit`].
 */
typedef struct HkBoundReport HkBoundReport;

/**
 * Opaque search configuration.
 */
typedef struct HkSearchConfig HkSearchConfig;

typedef struct HkComplex {
  double re;
  double im;
} HkComplex;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failure on this thread, or null. The pointer stays
 * valid until the next call into this library from the same thread.
 */
const char *hk_last_error_message(void);

/**
 * Writes `c1, c2, c3` for the parameters `(c1, x, zeta)` into `out[0..3]`.
 *
 * # Safety
 * `out` must point to three writable `HkComplex` values.
 */
enum HkStatus hk_lz_expand(struct HkComplex c1,
                           struct HkComplex x,
                           struct HkComplex zeta,
                           struct HkComplex *out);

/**
 * Coefficients `a_0..a_n` of the class member generated by `c_1..c_{c_len}`.
 * `out_len` must be at least `n + 1`.
 *
 * # Safety
 * `c` must be valid for `c_len` reads and `out` for `out_len` writes.
 */
enum HkStatus hk_class_coeffs(int32_t class_,
                              const struct HkComplex *c,
                              size_t c_len,
                              size_t n,
                              struct HkComplex *out,
                              size_t out_len);

/**
 * Evaluates a functional on `a_0..a_{a_len - 1}` without cap checks.
 *
 * # Safety
 * `a` must be valid for `a_len` reads and `out` for one write.
 */
enum HkStatus hk_functional_eval(int32_t functional,
                                 const struct HkComplex *a,
                                 size_t a_len,
                                 struct HkComplex *out);

/**
 * Triangle-inequality ceiling for `|H_3(1)|`, reduced.
 *
 * # Safety
 * `num` and `den` must be writable.
 */
enum HkStatus hk_triangle_bound(int32_t class_, int64_t *num, int64_t *den);

/**
 * Exact coefficients `a_0..a_n` of an extremal function as fractions.
 * Normalization is not checked. `out_len` must be at least `n + 1`.
 *
 * # Safety
 * `num` and `den` must be valid for `out_len` writes.
 */
enum HkStatus hk_extremal_coeffs(int32_t class_,
                                 int32_t variant,
                                 size_t n,
                                 int64_t *num,
                                 int64_t *den,
                                 size_t out_len);

/**
 * New configuration with default settings. `atoms` is used only by the
 * Herglotz model. Returns null on an invalid model.
 */
struct HkSearchConfig *hk_search_config_new(int32_t model, size_t atoms);

/**
 * # Safety
 * `config` must be null or come from [`hk_search_config_new`].
 */
void hk_search_config_free(struct HkSearchConfig *config);

/**
 * Coarse grid points per axis, at least 3.
 *
 * # Safety
 * `config` must come from [`hk_search_config_new`].
 */
enum HkStatus hk_search_config_set_grid(struct HkSearchConfig *config, size_t value);

/**
 * Local refinements started from the best coarse points.
 *
 * # Safety
 * `config` must come from [`hk_search_config_new`].
 */
enum HkStatus hk_search_config_set_restarts(struct HkSearchConfig *config, size_t value);

/**
 * Seed of the coarse sample used when the grid is too large.
 *
 * # Safety
 * `config` must come from [`hk_search_config_new`].
 */
enum HkStatus hk_search_config_set_seed(struct HkSearchConfig *config, uint64_t value);

/**
 * Final refinement step and verdict tolerance.
 *
 * # Safety
 * `config` must come from [`hk_search_config_new`].
 */
enum HkStatus hk_search_config_set_tol(struct HkSearchConfig *config, double value);

/**
 * Largest coarse grid evaluated in full.
 *
 * # Safety
 * `config` must come from [`hk_search_config_new`].
 */
enum HkStatus hk_search_config_set_max_coarse_points(struct HkSearchConfig *config, size_t value);

/**
 * Maximizes `|functional|` over the class. On success `*out` receives a
 * report owned by the caller.
 *
 * # Safety
 * `config` must come from [`hk_search_config_new`]; `out` must be writable.
 */
enum HkStatus hk_audit(int32_t class_,
                       int32_t functional,
                       const struct HkSearchConfig *config,
                       struct HkBoundReport **out);

/**
 * # Safety
 * `report` must be null or come from [`hk_audit`].
 */
void hk_bound_report_free(struct HkBoundReport *report);

/**
 * Best `|functional|` found, or NaN for a null report.
 *
 * # Safety
 * `report` must be null or come from [`hk_audit`].
 */
double hk_bound_report_best_modulus(const struct HkBoundReport *report);

/**
 * # Safety
 * `report` must come from [`hk_audit`]; `out` must be writable.
 */
enum HkStatus hk_bound_report_verdict(const struct HkBoundReport *report, enum HkVerdict *out);

/**
 * Number of search parameters in the report, 0 for a null report.
 *
 * # Safety
 * `report` must be null or come from [`hk_audit`].
 */
size_t hk_bound_report_param_count(const struct HkBoundReport *report);

/**
 * # Safety
 * `report` must come from [`hk_audit`]; `out` must be valid for `len` writes.
 */
enum HkStatus hk_bound_report_params(const struct HkBoundReport *report, double *out, size_t len);

/**
 * Literature bound as a reduced fraction; [`HkStatus::NoValue`] when the
 * report has none.
 *
 * # Safety
 * `report` must come from [`hk_audit`]; `num` and `den` must be writable.
 */
enum HkStatus hk_bound_report_paper_bound(const struct HkBoundReport *report,
                                          int64_t *num,
                                          int64_t *den);

/**
 * The report as a JSON object, or null on failure. Free with
 * [`hk_string_free`].
 *
 * # Safety
 * `report` must be null or come from [`hk_audit`].
 */
char *hk_bound_report_to_json(const struct HkBoundReport *report);

/**
 * # Safety
 * `s` must be null or come from a string-returning function of this library.
 */
void hk_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HANKEL_FFI_H */
