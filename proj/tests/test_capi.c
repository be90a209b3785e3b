#include <stdio.h>
#include <string.h>

#include "finitude/finitude.h"

static int failures = 0;

#define EXPECT(cond)                                            \
  do {                                                          \
    if (!(cond)) {                                              \
      fprintf(stderr, "%s:%d: %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                               \
    }                                                           \
  } while (0)

int main(void) {
  finitude_context* ctx = finitude_context_create();
  EXPECT(ctx != NULL);
  EXPECT(strlen(finitude_version()) > 0);
  EXPECT(strcmp(finitude_error_name(FINITUDE_SYNTAX_ERROR), "SyntaxError") == 0);
  EXPECT(strcmp(finitude_error_name(999), "Unknown") == 0);

  EXPECT(finitude_context_set(ctx, "threads", "1") == FINITUDE_OK);
  EXPECT(finitude_context_set(ctx, "no_such_key", "1") == FINITUDE_INVALID_ARGUMENT);
  EXPECT(strstr(finitude_last_error(), "no_such_key") != NULL);
  EXPECT(finitude_context_load(ctx, "# comment\ncontinuation_tol = 1e-11\n") == FINITUDE_OK);
  EXPECT(strstr(finitude_context_json(ctx), "\"threads\":1") != NULL);

  finitude_report* r = finitude_analyze_algebraic(ctx, "y^5+y-x", 5, 0);
  EXPECT(r != NULL);
  EXPECT(finitude_report_exit_code(r) == 0);
  EXPECT(finitude_report_status(r) == FINITUDE_OK);
  EXPECT(strstr(finitude_report_json(r, -1), "\"S5\"") != NULL);
  EXPECT(strstr(finitude_report_text(r), "5-radicals: Representable") != NULL);
  finitude_report_destroy(r);

  r = finitude_analyze_algebraic(ctx, "y^", 0, 0);
  EXPECT(finitude_report_exit_code(r) == 64);
  EXPECT(finitude_report_status(r) == FINITUDE_SYNTAX_ERROR);
  finitude_report_destroy(r);

  const char* coeffs[] = {"0", "-1"};
  r = finitude_analyze_ode(ctx, coeffs, 2, "1");
  EXPECT(finitude_report_exit_code(r) == 0);
  EXPECT(strstr(finitude_report_json(r, -1), "\"satisfies_riccati\":true") != NULL);
  finitude_report_destroy(r);

  r = finitude_analyze_integrate(ctx, "1/(x^2-1)");
  EXPECT(finitude_report_exit_code(r) == 0);
  finitude_report_destroy(r);

  r = finitude_analyze_decompose(ctx, "x^5+x", 0);
  EXPECT(finitude_report_exit_code(r) == 1);
  finitude_report_destroy(r);

  r = finitude_analyze_fuchsian(ctx, "{\"poles\": [[0, 0]], \"matrices\": [[[[0.5, 0]]]]}");
  EXPECT(finitude_report_exit_code(r) == 0);
  finitude_report_destroy(r);

  r = finitude_analyze_fuchsian(ctx, "{\"poles\": [");
  EXPECT(finitude_report_status(r) == FINITUDE_SYNTAX_ERROR);
  finitude_report_destroy(r);

  r = finitude_analyze_puiseux(ctx, "y^2-x^3", NULL, NULL);
  EXPECT(finitude_report_exit_code(r) == 0);
  finitude_report_destroy(r);

  EXPECT(finitude_analyze_integrate(ctx, NULL) == NULL);
  EXPECT(strlen(finitude_last_error()) > 0);
  EXPECT(finitude_analyze_integrate(NULL, "x") == NULL);
  EXPECT(finitude_report_exit_code(NULL) == 2);
  finitude_report_destroy(NULL);
  finitude_context_destroy(ctx);

  if (failures == 0) printf("capi: all checks passed\n");
  return failures == 0 ? 0 : 1;
}
