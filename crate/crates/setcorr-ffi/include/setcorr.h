#ifndef SETCORR_H
#define SETCORR_H

/* Generated by cbindgen from the setcorr-ffi crate; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Status code of every fallible call.
typedef enum ScStatus {
  SC_STATUS_OK = 0,
  // Null pointer, bad enum value, or otherwise unusable argument.
  SC_STATUS_INVALID_ARGUMENT = 1,
  // Malformed JSON or text input.
  SC_STATUS_PARSE_ERROR = 2,
  // Structurally valid input with invalid content.
  SC_STATUS_DATA_ERROR = 3,
  // Numerical degeneracy (rank deficiency, out-of-range correlation).
  SC_STATUS_NUMERICAL_ERROR = 4,
  // Requested combination is outside the supported algebra.
  SC_STATUS_UNSUPPORTED = 5,
} ScStatus;

// Opaque convex body handle.
typedef struct ScBody ScBody;

// Opaque direction-set handle.
typedef struct ScDirectionSet ScDirectionSet;

// Dependence report with explicit definedness flags: `has_*` is 1 when
// the matching statistic is defined and 0 when its variance was
// degenerate.
typedef struct ScReport {
  size_t n;
  double cov_size;
  double cov_loc;
  double cov_loc_res;
  double cov_tot;
  double var_size_x;
  double var_loc_x;
  double var_loc_res_x;
  double var_tot_x;
  double var_size_y;
  double var_loc_y;
  double var_loc_res_y;
  double var_tot_y;
  double corr_size;
  double corr_loc;
  double corr_loc_res;
  double corr_tot;
  double kappa_size;
  double kappa_loc;
  double pi_size_x;
  double pi_loc_x;
  double pi_size_y;
  double pi_loc_y;
  double corr_steiner;
  uint8_t has_corr_size;
  uint8_t has_corr_loc;
  uint8_t has_corr_loc_res;
  uint8_t has_corr_tot;
  uint8_t has_kappa;
  uint8_t has_pi_x;
  uint8_t has_pi_y;
  uint8_t has_corr_steiner;
} ScReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the most recent failure on this thread. The pointer stays
// valid until the next failing call on the same thread.
const char *sc_last_error_message(void);

// Parse a body from its JSON representation.
// # Safety
// `json` must be null or a valid NUL-terminated C string.
enum ScStatus sc_body_from_json(const char *json, struct ScBody **out);

// Serialize a body to JSON; free the string with [`sc_string_free`].
// # Safety
// `body` must be a live handle from this library (or null).
enum ScStatus sc_body_to_json(const struct ScBody *body, char **out);

// # Safety
// `body` must be null or a handle from `sc_body_from_json` that has
// not been freed already.
void sc_body_free(struct ScBody *body);

// # Safety
// `s` must be null or a string returned by this library that has not
// been freed already.
void sc_string_free(char *s);

// Ambient dimension of a body (1 or 2).
// # Safety
// `body` must be a live handle; `out` must be writable.
enum ScStatus sc_body_dim(const struct ScBody *body, size_t *out);

// Support function of `body` in the given direction (`dim` entries, unit
// norm).
// # Safety
// `direction` must point to `dim` readable doubles; `body` must be a
// live handle; `out` must be writable.
enum ScStatus sc_body_support(const struct ScBody *body,
                              const double *direction,
                              size_t dim,
                              double *out);

// Steiner point of `body`. `out_coords` needs room for two values; the
// ambient dimension is written to `dim_out`.
// # Safety
// `out_coords` must have room for two doubles; `body` must be a live
// handle.
enum ScStatus sc_body_steiner(const struct ScBody *body, double *out_coords, size_t *dim_out);

// Deterministic equal-angle direction grid on the circle (`m` even, >= 4).
// # Safety
// `out` must be writable.
enum ScStatus sc_direction_set_equal_angle(size_t m, struct ScDirectionSet **out);

// Seeded antithetic sampling of `pairs` direction pairs in dimension
// `dim` (1 or 2).
// # Safety
// `out` must be writable.
enum ScStatus sc_direction_set_random_antithetic(size_t pairs,
                                                 uint64_t seed,
                                                 size_t dim,
                                                 struct ScDirectionSet **out);

// The two-point sphere in one dimension.
// # Safety
// `out` must be writable.
enum ScStatus sc_direction_set_two_point(struct ScDirectionSet **out);

// # Safety
// `ds` must be null or a live handle from this library.
size_t sc_direction_set_len(const struct ScDirectionSet *ds);

// # Safety
// `ds` must be null or a handle that has not been freed already.
void sc_direction_set_free(struct ScDirectionSet *ds);

// Full dependence report for two equally long body series sampled on the
// given direction set.
// # Safety
// `xs` and `ys` must point to `n_x` and `n_y` live body handles; `ds`
// must be a live handle; `out` must be writable.
enum ScStatus sc_dependence_report(const struct ScBody *const *xs,
                                   size_t n_x,
                                   const struct ScBody *const *ys,
                                   size_t n_y,
                                   const struct ScDirectionSet *ds,
                                   struct ScReport *out);

// Lag-correlation mixing proxy. `component`: 0 size, 1 loc, 2 loc_res,
// 3 tot, negative for the maximum over size/loc/tot.
// # Safety
// `xs` must point to `n` live body handles; `ds` must be a live
// handle; `out` must be writable.
enum ScStatus sc_lag_corr_proxy(const struct ScBody *const *xs,
                                size_t n,
                                const struct ScDirectionSet *ds,
                                size_t lag,
                                int32_t component,
                                double *out);

// Decoupled interval regression. `x` is row-major `n x p`; `beta_out` and
// `gamma_out` need room for `p` values each.
// # Safety
// `x` must hold `n * p` doubles (row-major), `c` and `r` must hold
// `n` doubles, and `beta_out`/`gamma_out` must have room for `p`
// doubles each.
enum ScStatus sc_interval_fit(const double *x,
                              size_t n,
                              size_t p,
                              const double *c,
                              const double *r,
                              double *beta_out,
                              double *gamma_out,
                              double *loss_out,
                              size_t *negative_radius_out);

// Robust feasibility of the JSON instance
// `{"rows": [{"a": [[lo,hi],...], "b": [lo,hi]}], "x": [...]}`.
// Per-row worst-case slacks are written to `slack_out` (capacity
// `slack_capacity`); the row count goes to `n_rows_out`.
// # Safety
// `instance_json` must be null or a valid NUL-terminated C string;
// `slack_out`, when non-null, must have room for `slack_capacity`
// doubles.
enum ScStatus sc_robust_feasible_json(const char *instance_json,
                                      int32_t *feasible_out,
                                      double *slack_out,
                                      size_t slack_capacity,
                                      size_t *n_rows_out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SETCORR_H */
