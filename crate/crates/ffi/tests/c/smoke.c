#include <math.h>
#include <stdio.h>
#include "discrete_curves.h"

#define CHECK(cond)                                              \
  do {                                                           \
    if (!(cond)) {                                               \
      fprintf(stderr, "line %d: %s (%s)\n", __LINE__, #cond,     \
              dc_last_error_message());                          \
      return 1;                                                  \
    }                                                            \
  } while (0)

int main(void) {
  DcCurve *pent = NULL;
  CHECK(dc_regular_polygon(5, 2, 1.0, 0.0, -1, &pent) == DC_STATUS_OK);
  int64_t w = 0;
  CHECK(dc_turning_number(pent, &w) == DC_STATUS_OK && w == -2);

  double kappa = 0.0;
  CHECK(dc_estimate_kappa(pent, &kappa) == DC_STATUS_OK);
  DcEquilibriumReport report;
  CHECK(dc_classify_equilibrium(pent, kappa, 1e-9, &report) == DC_STATUS_OK);
  CHECK(report.is_equilibrium);

  size_t index = 0;
  CHECK(dc_morse_index(5, 2, &index) == DC_STATUS_OK && index == 2);
  double coef = 0.0;
  CHECK(dc_instability_coefficient(5, 2, 1.0, &coef) == DC_STATUS_OK);
  CHECK(fabs(coef + 5.428825) < 1e-6);

  double xy[6] = {0.0, 0.0, 1.0, 0.0, 1.0, 0.0};
  DcCurve *bad = NULL;
  CHECK(dc_curve_new(xy, 3, true, -1, &bad) == DC_STATUS_ZERO_EDGE);
  CHECK(bad == NULL);

  DcFlowConfig config = dc_flow_config_default();
  config.max_steps = 5;
  DcFlowResult result;
  CHECK(dc_run_flow(pent, &config, &result, NULL) == DC_STATUS_OK);
  CHECK(result.verdict == DC_FLOW_VERDICT_CONVERGED);

  dc_curve_free(pent);
  printf("ok %s\n", dc_version());
  return 0;
}
