#ifndef DISCRETE_CURVES_H
#define DISCRETE_CURVES_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result code of every fallible call.
typedef enum DcStatus {
  DC_STATUS_OK = 0,
  DC_STATUS_NULL_POINTER = 1,
  DC_STATUS_INVALID_ARGUMENT = 2,
  DC_STATUS_ZERO_EDGE = 3,
  DC_STATUS_TOO_FEW_VERTICES = 4,
  DC_STATUS_INVALID_WINDING = 5,
  DC_STATUS_OPEN_CURVE = 6,
  DC_STATUS_CUSP = 7,
  DC_STATUS_SCHEME_INAPPLICABLE = 8,
  DC_STATUS_KAPPA_ZERO = 9,
  DC_STATUS_EDGE_COLLAPSE = 10,
  DC_STATUS_NOT_EQUILIBRIUM = 11,
  DC_STATUS_DEGENERATE = 12,
  DC_STATUS_BUFFER_TOO_SMALL = 13,
  DC_STATUS_INTERNAL = 14,
  DC_STATUS_PANIC = 15,
} DcStatus;

// Line-element scheme for `dc_vertex_curvature`.
typedef enum DcScheme {
  DC_SCHEME_VERTEX_OSCULATING = 0,
  DC_SCHEME_ARCLENGTH = 1,
  DC_SCHEME_HATAKEYAMA = 2,
  DC_SCHEME_HALF_EDGE_SUM = 3,
} DcScheme;

// Corner treatment for `dc_offset_length`.
typedef enum DcOffsetVariant {
  DC_OFFSET_VARIANT_SEGMENT = 0,
  DC_OFFSET_VARIANT_ARC = 1,
  DC_OFFSET_VARIANT_WEDGE = 2,
} DcOffsetVariant;

typedef enum DcFlowVerdict {
  DC_FLOW_VERDICT_CONVERGED = 0,
  DC_FLOW_VERDICT_MAX_STEPS = 1,
  DC_FLOW_VERDICT_DEGENERATED = 2,
} DcFlowVerdict;

// Opaque curve handle.
typedef struct DcCurve DcCurve;

typedef struct DcEquilibriumReport {
  bool is_equilibrium;
  double max_residual;
  double l0;
  double theta0;
  double kappa;
  size_t n;
  // `winding` is meaningful only when this is set.
  bool has_winding;
  int64_t winding;
  double length_spread;
  double angle_spread;
  double tolerance_used;
  int32_t sigma;
} DcEquilibriumReport;

typedef struct DcFlowConfig {
  double step_size;
  size_t max_steps;
  double grad_tolerance;
  // Skip the rescaling that restores the volume after each step.
  bool project_only;
  size_t record_every;
} DcFlowConfig;

typedef struct DcFlowResult {
  enum DcFlowVerdict verdict;
  size_t steps;
  double final_length;
  double final_volume;
  double final_gradnorm;
  double max_volume_drift;
  // Filled when `verdict` is `Converged`.
  struct DcEquilibriumReport report;
} DcFlowResult;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Static description of a status code. Never null.
const char *dc_status_message(enum DcStatus status);

// Message of the last failed call on this thread; empty after a success.
// Valid until the next call into this library on the same thread.
const char *dc_last_error_message(void);

// Library version as a static string.
const char *dc_version(void);

// Creates a curve from `n` interleaved coordinates `xy[2k], xy[2k+1]`.
//
// # Safety
// `xy` must point to `2 * n` readable doubles; `out` must be writable.
enum DcStatus dc_curve_new(const double *xy,
                           size_t n,
                           bool closed,
                           int32_t sigma,
                           struct DcCurve **out);

// Creates the regular polygon `a exp(i (2 pi m k / n + phase))`.
//
// # Safety
// `out` must be writable.
enum DcStatus dc_regular_polygon(size_t n,
                                 size_t m,
                                 double radius,
                                 double phase,
                                 int32_t sigma,
                                 struct DcCurve **out);

// Releases a handle. Null is ignored.
//
// # Safety
// `curve` must come from this library and not be used afterwards.
void dc_curve_free(struct DcCurve *curve);

// Number of vertices.
//
// # Safety
// `curve` must be a live handle and `out` writable.
enum DcStatus dc_curve_len(const struct DcCurve *curve, size_t *out);

// Copies the interleaved coordinates into `buf` (capacity `cap` doubles).
// `required` receives `2 * n` in every case where the handle is valid.
//
// # Safety
// `buf` must be writable for `cap` doubles; `required` writable.
enum DcStatus dc_curve_points(const struct DcCurve *curve,
                              double *buf,
                              size_t cap,
                              size_t *required);

// # Safety
// `curve` must be a live handle and `out` writable.
enum DcStatus dc_total_length(const struct DcCurve *curve, double *out);

// # Safety
// `curve` must be a live handle and `out` writable.
enum DcStatus dc_enclosed_volume(const struct DcCurve *curve, double *out);

// # Safety
// `curve` must be a live handle and `out` writable.
enum DcStatus dc_turning_number(const struct DcCurve *curve, int64_t *out);

// Vertex curvature `2 sin(theta_k / 2) / L_k` under `scheme`.
//
// # Safety
// `curve` must be a live handle and `out` writable.
enum DcStatus dc_vertex_curvature(const struct DcCurve *curve,
                                  enum DcScheme scheme,
                                  size_t k,
                                  double *out);

// Edge curvature `(tan(theta_k / 2) + tan(theta_{k+1} / 2)) / l_k`.
//
// # Safety
// `curve` must be a live handle and `out` writable.
enum DcStatus dc_edge_curvature(const struct DcCurve *curve, size_t k, double *out);

// Least-squares Lagrange multiplier `-<grad L, grad Vol> / |grad Vol|^2`.
//
// # Safety
// `curve` must be a live handle and `out` writable.
enum DcStatus dc_estimate_kappa(const struct DcCurve *curve, double *out);

// # Safety
// `curve` must be a live handle and `out` writable.
enum DcStatus dc_classify_equilibrium(const struct DcCurve *curve,
                                      double kappa,
                                      double tol,
                                      struct DcEquilibriumReport *out);

// Parallel curve `p_k + t N_k` as a new handle.
//
// # Safety
// `curve` must be a live handle and `out` writable.
enum DcStatus dc_parallel_curve(const struct DcCurve *curve, double t, struct DcCurve **out);

// # Safety
// `curve` must be a live handle and `out` writable.
enum DcStatus dc_offset_length(const struct DcCurve *curve,
                               double t,
                               enum DcOffsetVariant variant,
                               double *out);

// Eigenvalues `lambda_1 .. lambda_{n-1}` of the Jacobi matrix of
// `Gamma^{m,n}`. `len` receives `n - 1`.
//
// # Safety
// `buf` must be writable for `cap` doubles; `len` writable.
enum DcStatus dc_jacobi_eigenvalues(size_t n, size_t m, double *buf, size_t cap, size_t *len);

// # Safety
// `out` must be writable.
enum DcStatus dc_morse_index(size_t n, size_t m, size_t *out);

// Second variation of `Gamma^{m,n}(radius)` per unit `sum psi_k^2` along
// `psi_k = cos(2 pi k / n)`; negative means unstable.
//
// # Safety
// `out` must be writable.
enum DcStatus dc_instability_coefficient(size_t n, size_t m, double radius, double *out);

// Default flow parameters.
struct DcFlowConfig dc_flow_config_default(void);

// Runs the area-preserving descent. `out_curve` may be null; otherwise it
// receives a new handle with the final polygon.
//
// # Safety
// `curve` and `config` must be valid; `out` writable; `out_curve` null or writable.
enum DcStatus dc_run_flow(const struct DcCurve *curve,
                          const struct DcFlowConfig *config,
                          struct DcFlowResult *out,
                          struct DcCurve **out_curve);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DISCRETE_CURVES_H */
