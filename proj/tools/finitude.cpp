#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "finitude/finitude.h"
#include "json.hpp"

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

namespace {

constexpr int kUsageExit = 64;

struct Invocation {
  std::string command;
  std::string expr;
  int k = 0;
  bool tower = false;
  int order = 0;
  std::vector<std::string> coeffs;
  std::string check;
  std::string point = "0";
  std::string series_order;
  std::string file;
  std::string corpus_dir;
  int jobs = 0;
  bool repeat = false;
  std::string dump_dir;
  bool json = false;
  std::string config_file;
  std::vector<std::string> settings;
};

struct ContextDeleter {
  void operator()(finitude_context* c) const { finitude_context_destroy(c); }
};
struct ReportDeleter {
  void operator()(finitude_report* r) const { finitude_report_destroy(r); }
};
using ContextPtr = std::unique_ptr<finitude_context, ContextDeleter>;
using ReportPtr = std::unique_ptr<finitude_report, ReportDeleter>;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void define(CLI::App& app, Invocation& inv) {
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string(finitude_version()));
  app.add_flag("--json", inv.json, "Print the machine-readable report");
  app.add_option("--config", inv.config_file, "key = value file with tolerances and budgets");
  app.add_option("--set", inv.settings, "Override one setting, key=value");

  auto* alg = app.add_subcommand("algebraic", "Radical and k-radical representability of y(x) with P(x, y) = 0");
  alg->add_option("curve", inv.expr, "Polynomial in x and y")->required();
  alg->add_option("--k", inv.k, "Also decide representability by k-radicals")->check(CLI::PositiveNumber);
  alg->add_flag("--tower", inv.tower, "Build and verify a radical expression for one branch");

  auto* ode = app.add_subcommand("ode", "Generalized Riccati equation and rational witnesses of a linear ODE");
  ode->add_option("order", inv.order, "Order n")->required()->check(CLI::Range(1, 12));
  ode->add_option("coefficients", inv.coeffs, "a_1 .. a_n of y^(n) + a_1 y^(n-1) + ... + a_n y = 0")->required();
  ode->add_option("--check", inv.check, "Candidate u to test against the Riccati equation");

  auto* integ = app.add_subcommand("integrate", "Liouville form of the integral of a rational function");
  integ->add_option("integrand", inv.expr, "Rational function of x")->required();

  auto* dec = app.add_subcommand("decompose", "Ritt decomposition and inversion by radicals");
  dec->add_option("polynomial", inv.expr, "Polynomial in x")->required();
  dec->add_option("--k", inv.k, "Also decide inversion by k-radicals")->check(CLI::PositiveNumber);

  auto* fuchs = app.add_subcommand("fuchsian", "Monodromy and small-norm verdict of a Fuchsian system");
  fuchs->add_option("file", inv.file, "JSON file with \"poles\" and \"matrices\"")->required();

  auto* pui = app.add_subcommand("puiseux", "Newton polygon and Puiseux expansions of P(x, y) = 0");
  pui->add_option("curve", inv.expr, "Polynomial in x and y")->required();
  pui->add_option("--at", inv.point, "Expansion point: a Gaussian rational or inf")->capture_default_str();
  pui->add_option("--order", inv.series_order, "Truncation order in the local parameter");

  auto* corpus = app.add_subcommand("corpus", "Run the regression cases of a directory");
  corpus->add_option("dir", inv.corpus_dir, "Directory of *.case files")->required()->check(CLI::ExistingDirectory);
  corpus->add_option("--jobs", inv.jobs, "Parallel cases (default: thread cap)")->check(CLI::NonNegativeNumber);
  corpus->add_flag("--repeat", inv.repeat, "Rerun each case and require an identical report");
  corpus->add_option("--dump", inv.dump_dir, "Write each report to DIR/<case>.json");

  for (auto* sub : {alg, ode, integ, dec, fuchs, pui, corpus}) {
    sub->callback([&inv, sub] { inv.command = sub->get_name(); });
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

ContextPtr make_context(const Invocation& inv) {
  ContextPtr ctx(finitude_context_create());
  if (!ctx) throw std::runtime_error(finitude_last_error());
  if (!inv.config_file.empty()) {
    const std::string text = read_file(inv.config_file);
    if (finitude_context_load(ctx.get(), text.c_str()) != FINITUDE_OK)
      throw UsageError(inv.config_file + ": " + finitude_last_error());
  }
  for (const auto& s : inv.settings) {
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw UsageError("--set expects key=value, got '" + s + "'");
    if (finitude_context_set(ctx.get(), s.substr(0, eq).c_str(), s.substr(eq + 1).c_str()) != FINITUDE_OK)
      throw UsageError(finitude_last_error());
  }
  return ctx;
}

ReportPtr analyze(finitude_context* ctx, const Invocation& inv) {
  finitude_report* r = nullptr;
  if (inv.command == "algebraic") {
    r = finitude_analyze_algebraic(ctx, inv.expr.c_str(), inv.k, inv.tower ? 1 : 0);
  } else if (inv.command == "ode") {
    if (static_cast<int>(inv.coeffs.size()) != inv.order)
      throw UsageError("ode of order " + std::to_string(inv.order) + " needs " + std::to_string(inv.order) +
                       " coefficients, got " + std::to_string(inv.coeffs.size()));
    std::vector<const char*> c;
    for (const auto& s : inv.coeffs) c.push_back(s.c_str());
    r = finitude_analyze_ode(ctx, c.data(), inv.order, inv.check.empty() ? nullptr : inv.check.c_str());
  } else if (inv.command == "integrate") {
    r = finitude_analyze_integrate(ctx, inv.expr.c_str());
  } else if (inv.command == "decompose") {
    r = finitude_analyze_decompose(ctx, inv.expr.c_str(), inv.k);
  } else if (inv.command == "fuchsian") {
    r = finitude_analyze_fuchsian_file(ctx, inv.file.c_str());
  } else if (inv.command == "puiseux") {
    r = finitude_analyze_puiseux(ctx, inv.expr.c_str(), inv.point.c_str(),
                                 inv.series_order.empty() ? nullptr : inv.series_order.c_str());
  } else {
    throw UsageError("unknown command " + inv.command);
  }
  if (r == nullptr) throw std::runtime_error(finitude_last_error());
  return ReportPtr(r);
}

// Corpus cases: "args:", "exit:", "expect: /pointer = json" or
// "expect: /pointer contains json" lines; '#' starts a comment line.
struct Expectation {
  std::string pointer;
  std::string op;
  Json value;
};

struct Case {
  std::string name;
  std::string args;
  int exit = 0;
  std::vector<Expectation> expectations;
};

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  return s.substr(a, s.find_last_not_of(" \t\r\n") - a + 1);
}

Case load_case(const fs::path& path) {
  Case c;
  c.name = path.stem().string();
  std::istringstream in(read_file(path.string()));
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto colon = line.find(':');
    if (colon == std::string::npos) throw UsageError(path.string() + ": malformed line '" + line + "'");
    const std::string key = line.substr(0, colon), rest = trim(line.substr(colon + 1));
    if (key == "args") {
      c.args = rest;
    } else if (key == "exit") {
      c.exit = std::stoi(rest);
    } else if (key == "expect") {
      Expectation e;
      const auto space = rest.find(' ');
      e.pointer = rest.substr(0, space);
      std::string tail = space == std::string::npos ? "" : trim(rest.substr(space));
      if (tail.rfind("contains ", 0) == 0) {
        e.op = "contains";
        tail = tail.substr(9);
      } else if (tail.rfind("= ", 0) == 0) {
        e.op = "=";
        tail = tail.substr(2);
      } else {
        throw UsageError(path.string() + ": expectation needs '=' or 'contains'");
      }
      e.value = Json::parse(tail);
      c.expectations.push_back(std::move(e));
    } else {
      throw UsageError(path.string() + ": unknown key '" + key + "'");
    }
  }
  if (c.args.empty()) throw UsageError(path.string() + ": missing args");
  return c;
}

bool holds(const Json& report, const Expectation& e, std::string& why) {
  const Json::json_pointer ptr(e.pointer);
  if (!report.is_object()) {
    why = "no report to check " + e.pointer + " against";
    return false;
  }
  if (!report.contains(ptr)) {
    why = e.pointer + " is missing";
    return false;
  }
  const Json& actual = report.at(ptr);
  bool ok = false;
  if (e.op == "=") {
    ok = actual == e.value;
  } else if (actual.is_array()) {
    ok = std::find(actual.begin(), actual.end(), e.value) != actual.end();
  } else if (actual.is_string() && e.value.is_string()) {
    ok = actual.get<std::string>().find(e.value.get<std::string>()) != std::string::npos;
  }
  if (!ok) why = e.pointer + " is " + actual.dump() + ", expected " + e.op + " " + e.value.dump();
  return ok;
}

// Usage errors give exit 64 and a null report, as on the command line.
Json run_case(const Case& c, const Invocation& outer, int& exit_code) {
  Invocation inv;
  CLI::App app("finitude");
  define(app, inv);
  try {
    app.parse(c.args, false);
    if (inv.command == "corpus") throw UsageError("corpus cases cannot run the corpus command");
    // Relative paths inside a case are relative to the corpus directory.
    const auto anchor = [&](std::string& path) {
      if (!path.empty() && fs::path(path).is_relative()) path = (fs::path(outer.corpus_dir) / path).string();
    };
    anchor(inv.file);
    anchor(inv.config_file);
    if (inv.config_file.empty()) inv.config_file = outer.config_file;
    inv.settings.insert(inv.settings.begin(), outer.settings.begin(), outer.settings.end());
    const ContextPtr ctx = make_context(inv);
    const ReportPtr r = analyze(ctx.get(), inv);
    exit_code = finitude_report_exit_code(r.get());
    return Json::parse(finitude_report_json(r.get(), -1));
  } catch (const CLI::ParseError&) {
    exit_code = kUsageExit;
  } catch (const UsageError&) {
    exit_code = kUsageExit;
  }
  return nullptr;
}

int run_corpus(const Invocation& inv) {
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(inv.corpus_dir))
    if (entry.is_regular_file() && entry.path().extension() == ".case") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  if (files.empty()) throw UsageError("no .case files in " + inv.corpus_dir);
  if (!inv.dump_dir.empty()) fs::create_directories(inv.dump_dir);

  int jobs = inv.jobs;
  if (jobs <= 0) {
    const ContextPtr ctx = make_context(inv);
    jobs = Json::parse(finitude_context_json(ctx.get())).value("threads", 1);
  }
  jobs = std::max(1, std::min(jobs, static_cast<int>(files.size())));

  std::vector<std::string> lines(files.size());
  std::vector<bool> passed(files.size(), false);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < files.size(); i = next++) {
      std::string name = files[i].stem().string(), why;
      try {
        const Case c = load_case(files[i]);
        int code = 0;
        Json report = run_case(c, inv, code);
        bool ok = code == c.exit;
        if (!ok) why = "exit " + std::to_string(code) + ", expected " + std::to_string(c.exit);
        for (const auto& e : c.expectations)
          if (ok && !holds(report, e, why)) ok = false;
        if (ok && inv.repeat) {
          int again_code = 0;
          Json again = run_case(c, inv, again_code), first = report;
          if (first.is_object()) first.erase("timing");
          if (again.is_object()) again.erase("timing");
          if (again != first || again_code != code) {
            ok = false;
            why = "rerun produced a different report";
          }
        }
        if (!inv.dump_dir.empty() && !report.is_null()) {
          std::ofstream out(fs::path(inv.dump_dir) / (name + ".json"));
          out << report.dump(2) << "\n";
        }
        passed[i] = ok;
      } catch (const std::exception& e) {
        why = e.what();
      }
      lines[i] = (passed[i] ? "PASS " : "FAIL ") + name + (why.empty() ? "" : ": " + why);
    }
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  const auto good = std::count(passed.begin(), passed.end(), true);
  for (const auto& l : lines) std::cout << l << "\n";
  std::cout << good << "/" << files.size() << " cases passed\n";
  return good == static_cast<long>(files.size()) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  Invocation inv;
  CLI::App app("Decides solvability in finite terms: radicals, quadratures and Fuchsian systems.", "finitude");
  define(app, inv);
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageExit;
  }

  try {
    if (inv.command == "corpus") return run_corpus(inv);
    const ContextPtr ctx = make_context(inv);
    const ReportPtr r = analyze(ctx.get(), inv);
    if (inv.json) std::cout << finitude_report_json(r.get(), 2) << "\n";
    if (finitude_report_status(r.get()) != FINITUDE_OK) {
      std::cerr << "finitude: " << finitude_report_text(r.get());
    } else if (!inv.json) {
      std::cout << finitude_report_text(r.get());
    }
    return finitude_report_exit_code(r.get());
  } catch (const UsageError& e) {
    std::cerr << "finitude: " << e.what() << "\n";
    return kUsageExit;
  } catch (const std::exception& e) {
    std::cerr << "finitude: " << e.what() << "\n";
    return 2;
  }
}
