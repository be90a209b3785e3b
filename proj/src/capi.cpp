#include "finitude/finitude.h"

#include <string>
#include <vector>

#include "finitude/error.hpp"
#include "finitude/report.hpp"

using finitude::Json;

struct finitude_context {
  finitude::Config config;
  std::string json;
};

struct finitude_report {
  Json report;
  std::string json;
  std::string text;
};

namespace {

thread_local std::string last_error;

finitude_status set_error(finitude_status code, std::string message) {
  last_error = std::move(message);
  return code;
}

template <class F>
finitude_status guarded(F&& f) {
  try {
    f();
    last_error.clear();
    return FINITUDE_OK;
  } catch (const finitude::Error& e) {
    return set_error(static_cast<finitude_status>(e.code()), e.what());
  } catch (const std::exception& e) {
    return set_error(FINITUDE_INVALID_ARGUMENT, e.what());
  }
}

template <class F>
finitude_report* make_report(finitude_context* ctx, F&& f) {
  if (ctx == nullptr) {
    set_error(FINITUDE_INVALID_ARGUMENT, "context is NULL");
    return nullptr;
  }
  try {
    auto* r = new finitude_report;
    r->report = f(ctx->config);
    last_error.clear();
    return r;
  } catch (const std::exception& e) {
    set_error(FINITUDE_INVALID_ARGUMENT, e.what());
    return nullptr;
  }
}

bool missing(const char* s, const char* what) {
  if (s != nullptr) return false;
  set_error(FINITUDE_INVALID_ARGUMENT, std::string(what) + " is NULL");
  return true;
}

}  // namespace

extern "C" {

const char* finitude_version(void) { return FINITUDE_VERSION; }

const char* finitude_error_name(int code) {
  if (code < 0 || code > FINITUDE_IO_ERROR) return "Unknown";
  return finitude::error_code_name(static_cast<finitude::ErrorCode>(code));
}

const char* finitude_last_error(void) { return last_error.c_str(); }

finitude_context* finitude_context_create(void) {
  try {
    auto* ctx = new finitude_context;
    ctx->config = finitude::default_config();
    return ctx;
  } catch (const std::exception& e) {
    set_error(FINITUDE_INVALID_ARGUMENT, e.what());
    return nullptr;
  }
}

void finitude_context_destroy(finitude_context* ctx) { delete ctx; }

finitude_status finitude_context_set(finitude_context* ctx, const char* key, const char* value) {
  if (ctx == nullptr) return set_error(FINITUDE_INVALID_ARGUMENT, "context is NULL");
  if (key == nullptr || value == nullptr) return set_error(FINITUDE_INVALID_ARGUMENT, "key or value is NULL");
  finitude::Config next = ctx->config;
  const auto status = guarded([&] { next.set(key, value); });
  if (status == FINITUDE_OK) ctx->config = next;
  return status;
}

finitude_status finitude_context_load(finitude_context* ctx, const char* text) {
  if (ctx == nullptr) return set_error(FINITUDE_INVALID_ARGUMENT, "context is NULL");
  if (text == nullptr) return set_error(FINITUDE_INVALID_ARGUMENT, "text is NULL");
  finitude::Config next = ctx->config;
  const auto status = guarded([&] { next.load(text); });
  if (status == FINITUDE_OK) ctx->config = next;
  return status;
}

const char* finitude_context_json(finitude_context* ctx) {
  if (ctx == nullptr) return nullptr;
  ctx->json = ctx->config.to_json().dump();
  return ctx->json.c_str();
}

finitude_report* finitude_analyze_algebraic(finitude_context* ctx, const char* curve, int k, int tower) {
  if (missing(curve, "curve")) return nullptr;
  return make_report(ctx, [&](const finitude::Config& c) {
    finitude::AlgebraicRequest req{curve, std::nullopt, tower != 0};
    if (k > 0) req.k = k;
    return finitude::algebraic_report(req, c);
  });
}

finitude_report* finitude_analyze_ode(finitude_context* ctx, const char* const* coeffs, int order, const char* check) {
  if (order < 0 || (order > 0 && coeffs == nullptr)) {
    set_error(FINITUDE_INVALID_ARGUMENT, "coefficients are missing");
    return nullptr;
  }
  for (int i = 0; i < order; ++i)
    if (missing(coeffs[i], "coefficient")) return nullptr;
  return make_report(ctx, [&](const finitude::Config& c) {
    finitude::OdeRequest req;
    req.coeffs.assign(coeffs, coeffs + order);
    if (check != nullptr) req.check = check;
    return finitude::ode_report(req, c);
  });
}

finitude_report* finitude_analyze_integrate(finitude_context* ctx, const char* integrand) {
  if (missing(integrand, "integrand")) return nullptr;
  return make_report(ctx, [&](const finitude::Config& c) { return finitude::integrate_report(integrand, c); });
}

finitude_report* finitude_analyze_decompose(finitude_context* ctx, const char* polynomial, int k) {
  if (missing(polynomial, "polynomial")) return nullptr;
  return make_report(ctx, [&](const finitude::Config& c) {
    finitude::DecomposeRequest req{polynomial, std::nullopt};
    if (k > 0) req.k = k;
    return finitude::decompose_report(req, c);
  });
}

finitude_report* finitude_analyze_fuchsian(finitude_context* ctx, const char* system_json) {
  if (missing(system_json, "system")) return nullptr;
  return make_report(ctx, [&](const finitude::Config& c) { return finitude::fuchsian_report(system_json, c); });
}

finitude_report* finitude_analyze_fuchsian_file(finitude_context* ctx, const char* path) {
  if (missing(path, "path")) return nullptr;
  return make_report(ctx, [&](const finitude::Config& c) { return finitude::fuchsian_file_report(path, c); });
}

finitude_report* finitude_analyze_puiseux(finitude_context* ctx, const char* curve, const char* point,
                                          const char* order) {
  if (missing(curve, "curve")) return nullptr;
  return make_report(ctx, [&](const finitude::Config& c) {
    finitude::PuiseuxRequest req;
    req.curve = curve;
    if (point != nullptr) req.point = point;
    if (order != nullptr) req.order = order;
    return finitude::puiseux_report(req, c);
  });
}

const char* finitude_report_json(finitude_report* report, int indent) {
  if (report == nullptr) return nullptr;
  report->json = report->report.dump(indent < 0 ? -1 : indent);
  return report->json.c_str();
}

const char* finitude_report_text(finitude_report* report) {
  if (report == nullptr) return nullptr;
  report->text = finitude::render_text(report->report);
  return report->text.c_str();
}

int finitude_report_exit_code(const finitude_report* report) {
  return report == nullptr ? 2 : finitude::report_exit_code(report->report);
}

finitude_status finitude_report_status(const finitude_report* report) {
  if (report == nullptr || !report->report.contains("error")) return FINITUDE_OK;
  const int n = report->report["error"].value("number", static_cast<int>(FINITUDE_INVALID_ARGUMENT));
  return n < 0 ? FINITUDE_INVALID_ARGUMENT : static_cast<finitude_status>(n);
}

void finitude_report_destroy(finitude_report* report) { delete report; }

}  // extern "C"
