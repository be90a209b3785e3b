#ifndef FINITUDE_H
#define FINITUDE_H

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define FINITUDE_API __declspec(dllexport)
#else
#define FINITUDE_API __attribute__((visibility("default")))
#endif

/* Error codes shared with reports ("error.number"). */
typedef enum finitude_status {
  FINITUDE_OK = 0,
  FINITUDE_SYNTAX_ERROR = 1,
  FINITUDE_UNDECLARED_VARIABLE = 2,
  FINITUDE_NON_POLYNOMIAL_EXPONENT = 3,
  FINITUDE_ZERO_POLYNOMIAL = 4,
  FINITUDE_DEGREE_TOO_LOW = 5,
  FINITUDE_ITERATION_LIMIT_EXCEEDED = 6,
  FINITUDE_NON_EXACT_CENTER = 7,
  FINITUDE_ORDER_TOO_SMALL = 8,
  FINITUDE_NUMERIC_BREAKDOWN = 9,
  FINITUDE_SQUARE_FREE_REQUIRED = 10,
  FINITUDE_BASE_POINT_TOO_CLOSE = 11,
  FINITUDE_PATH_COLLISION = 12,
  FINITUDE_SINGULAR_ON_PATH = 13,
  FINITUDE_DEGREE_TOO_LARGE = 14,
  FINITUDE_SEARCH_BUDGET_EXCEEDED = 15,
  FINITUDE_NOT_TRANSITIVE = 16,
  FINITUDE_NOT_APPLICABLE = 17,
  FINITUDE_REDUCIBLE_INPUT = 18,
  FINITUDE_UNSUPPORTED_GROUP = 19,
  FINITUDE_RATIONALIZATION_FAILED = 20,
  FINITUDE_ORDER_TOO_LARGE = 21,
  FINITUDE_NOT_HOMOGENEOUS = 22,
  FINITUDE_NONE_FOUND = 23,
  FINITUDE_BOUND_EXCEEDED = 24,
  FINITUDE_STEP_SIZE_UNDERFLOW = 25,
  FINITUDE_TOLERANCE_AMBIGUOUS = 26,
  FINITUDE_INVALID_ARGUMENT = 27,
  FINITUDE_IRRATIONAL_POLE = 28,
  FINITUDE_DIVISION_BY_ZERO = 29,
  FINITUDE_IO_ERROR = 30
} finitude_status;

typedef struct finitude_context finitude_context;
typedef struct finitude_report finitude_report;

FINITUDE_API const char* finitude_version(void);
FINITUDE_API const char* finitude_error_name(int code);

/* Message of the last failed call on this thread, or "" when none. */
FINITUDE_API const char* finitude_last_error(void);

/* Context with default settings; threads are capped by FINITUDE_THREADS. */
FINITUDE_API finitude_context* finitude_context_create(void);
FINITUDE_API void finitude_context_destroy(finitude_context* ctx);
FINITUDE_API finitude_status finitude_context_set(finitude_context* ctx, const char* key, const char* value);
/* Lines of key = value; '#' starts a comment. */
FINITUDE_API finitude_status finitude_context_load(finitude_context* ctx, const char* text);
/* Effective settings as a JSON object; owned by the context. */
FINITUDE_API const char* finitude_context_json(finitude_context* ctx);

/* Each analysis returns a report, or NULL with finitude_last_error set when an
   argument is NULL. Analysis failures are carried inside the report. k <= 0
   means no k-radicals question; NULL optional strings are omitted. */
FINITUDE_API finitude_report* finitude_analyze_algebraic(finitude_context* ctx, const char* curve, int k,
                                                         int tower);
FINITUDE_API finitude_report* finitude_analyze_ode(finitude_context* ctx, const char* const* coeffs, int order,
                                                   const char* check);
FINITUDE_API finitude_report* finitude_analyze_integrate(finitude_context* ctx, const char* integrand);
FINITUDE_API finitude_report* finitude_analyze_decompose(finitude_context* ctx, const char* polynomial, int k);
FINITUDE_API finitude_report* finitude_analyze_fuchsian(finitude_context* ctx, const char* system_json);
/* Reads the system from a file; an unreadable file gives an IoError report. */
FINITUDE_API finitude_report* finitude_analyze_fuchsian_file(finitude_context* ctx, const char* path);
FINITUDE_API finitude_report* finitude_analyze_puiseux(finitude_context* ctx, const char* curve, const char* point,
                                                       const char* order);

/* Strings are owned by the report. */
FINITUDE_API const char* finitude_report_json(finitude_report* report, int indent);
FINITUDE_API const char* finitude_report_text(finitude_report* report);
/* 0 Representable, 1 NotRepresentable, 2 Undecided or failure, 64 input error. */
FINITUDE_API int finitude_report_exit_code(const finitude_report* report);
/* Error number of a failed analysis, FINITUDE_OK otherwise. */
FINITUDE_API finitude_status finitude_report_status(const finitude_report* report);
FINITUDE_API void finitude_report_destroy(finitude_report* report);

#ifdef __cplusplus
}
#endif

#endif
