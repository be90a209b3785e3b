#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace finitude {

using Json = nlohmann::ordered_json;

/// Tolerances and budgets shared by all commands. Every field can be set by
/// name from a key=value config text; reports echo the effective values.
struct Config {
  double continuation_tol = 1e-10;
  double match_fraction = 1.0 / 3.0;
  int max_group_degree = 32;
  int witness_min_bound = 10;
  int tower_points = 100;
  double tower_tol = 1e-8;
  double fuchsian_tol = 1e-10;
  double triangular_tol = 1e-8;
  int puiseux_order = 4;
  int threads = 1;

  /// Throws InvalidArgument for unknown keys or malformed values.
  void set(const std::string& key, const std::string& value);
  /// Lines of key = value; '#' starts a comment.
  void load(const std::string& text);
  Json to_json() const;
};

/// Default configuration with threads capped by FINITUDE_THREADS.
Config default_config();

struct AlgebraicRequest {
  std::string curve;
  std::optional<int> k;
  bool tower = false;
};

struct OdeRequest {
  std::vector<std::string> coeffs;  // a_1 .. a_n
  std::optional<std::string> check;  // candidate u to verify
};

struct DecomposeRequest {
  std::string polynomial;
  std::optional<int> k;
};

struct PuiseuxRequest {
  std::string curve;
  std::string point = "0";  // Gaussian rational, or "inf"
  std::optional<std::string> order;
};

/// Reports never throw: failures become {"status": "error", "error": {...}}
/// with an exit code of 64 for input errors and 2 otherwise.
Json algebraic_report(const AlgebraicRequest& req, const Config& config);
Json ode_report(const OdeRequest& req, const Config& config);
Json integrate_report(const std::string& expr, const Config& config);
Json decompose_report(const DecomposeRequest& req, const Config& config);
/// System text: {"poles": [[re, im], ...], "matrices": [[[[re, im], ...], ...], ...]}.
Json fuchsian_report(const std::string& system_json, const Config& config);
/// Reads the system from a file; an unreadable file is reported as IoError.
Json fuchsian_file_report(const std::string& path, const Config& config);
Json puiseux_report(const PuiseuxRequest& req, const Config& config);

/// Human-readable rendering of a report.
std::string render_text(const Json& report);

/// Exit code carried by a report: 0 Representable, 1 NotRepresentable,
/// 2 Undecided or computational failure, 64 input error.
int report_exit_code(const Json& report);

}  // namespace finitude
