#include "finitude/report.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>
#include <thread>

#include "finitude/differential.hpp"
#include "finitude/error.hpp"
#include "finitude/fuchsian.hpp"
#include "finitude/monodromy.hpp"
#include "finitude/parser.hpp"
#include "finitude/puiseux.hpp"
#include "finitude/solvability.hpp"

namespace finitude {

namespace {

using C = std::complex<double>;

// Adding 0.0 turns -0.0 into 0.0.
Json complex_json(C z) { return Json::array({z.real() + 0.0, z.imag() + 0.0}); }

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

double parse_double(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != value.size() || !(v > 0.0))
    fail(ErrorCode::InvalidArgument, "config key " + key + " needs a positive number, got '" + value + "'");
  return v;
}

int parse_int(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  long v = 0;
  try {
    v = std::stol(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != value.size() || v < 1 || v > 1000000)
    fail(ErrorCode::InvalidArgument, "config key " + key + " needs a positive integer, got '" + value + "'");
  return static_cast<int>(v);
}

bool input_error(ErrorCode c) {
  switch (c) {
    case ErrorCode::SyntaxError:
    case ErrorCode::UndeclaredVariable:
    case ErrorCode::NonPolynomialExponent:
    case ErrorCode::ZeroPolynomial:
    case ErrorCode::DegreeTooLow:
    case ErrorCode::NotHomogeneous:
    case ErrorCode::OrderTooLarge:
    case ErrorCode::InvalidArgument:
    case ErrorCode::DivisionByZero:
    case ErrorCode::IoError:
      return true;
    default:
      return false;
  }
}

int verdict_exit(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::Representable:
      return 0;
    case VerdictStatus::NotRepresentable:
      return 1;
    case VerdictStatus::Undecided:
      return 2;
  }
  return 2;
}

// Result body: fills the result object and returns the primary verdict, if any.
using Body = std::function<std::optional<VerdictStatus>(Json& result)>;

Json run(const std::string& command, Json input, const Config& config, const Body& body) {
  Json r;
  r["tool"] = "finitude";
  r["version"] = FINITUDE_VERSION;
  r["command"] = command;
  r["input"] = std::move(input);
  r["config"] = config.to_json();
  const auto start = std::chrono::steady_clock::now();
  try {
    Json result = Json::object();
    const auto verdict = body(result);
    r["status"] = "ok";
    r["verdict"] = verdict ? Json(verdict_status_name(*verdict)) : Json(nullptr);
    r["exit_code"] = verdict ? verdict_exit(*verdict) : 0;
    r["result"] = std::move(result);
  } catch (const Error& e) {
    r["status"] = "error";
    r["verdict"] = nullptr;
    r["exit_code"] = input_error(e.code()) ? 64 : 2;
    Json err = {{"code", error_code_name(e.code())}, {"number", static_cast<int>(e.code())}, {"message", e.what()}};
    if (const auto* s = dynamic_cast<const SyntaxError*>(&e)) err["position"] = s->position();
    r["error"] = std::move(err);
  } catch (const std::exception& e) {
    r["status"] = "error";
    r["verdict"] = nullptr;
    r["exit_code"] = 2;
    r["error"] = {{"code", "InternalError"}, {"number", -1}, {"message", e.what()}};
  }
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  r["timing"] = {{"elapsed_ms", ms}};
  return r;
}

MonodromyOptions monodromy_options(const Config& c) {
  MonodromyOptions o;
  o.tol = c.continuation_tol;
  o.match_fraction = c.match_fraction;
  o.max_degree = c.max_group_degree;
  o.threads = c.threads;
  return o;
}

Json group_json(const GroupWitness& g) {
  Json gens = Json::array();
  for (const auto& p : g.generators) gens.push_back(perm_to_cycles(p));
  return {{"degree", g.degree},     {"order", g.order.get_str()},          {"name", g.name},
          {"solvable", g.solvable}, {"almost_solvable", g.almost_solvable}, {"generators", gens}};
}

Json factors_json(const std::vector<CompositionFactor>& fs) {
  Json out = Json::array();
  for (const auto& f : fs)
    out.push_back({{"name", f.name}, {"order", f.order.get_str()}, {"abelian", f.abelian}, {"min_degree", f.min_degree}});
  return out;
}

Json tower_json(const RadicalTower& t) {
  return {{"expression", radical::to_string(t.expression)},
          {"construction", t.construction},
          {"branch_convention", kBranchConvention},
          {"base_point", complex_json(t.base_point)},
          {"root_label", t.root_label},
          {"rationalized", t.rationalized},
          {"points_checked", t.points_checked},
          {"max_error", t.max_error}};
}

Json verdict_json(const Verdict& v) {
  Json out = {{"status", verdict_status_name(v.status)}, {"reason", v.reason}};
  if (v.code) out["code"] = error_code_name(*v.code);
  if (!v.factors.empty()) out["composition_factors"] = factors_json(v.factors);
  if (v.certificate) out["certificate"] = tower_json(*v.certificate);
  return out;
}

Json interval_json(const ComplexInterval& i) { return {{"center", complex_json(i.center)}, {"radius", i.radius}}; }

GR parse_constant(const std::string& text) {
  const Polynomial p = parse_polynomial(text);
  if (p.degree() > 0) fail(ErrorCode::InvalidArgument, "expected a constant, got '" + text + "'");
  return p.coeff(0);
}

Json class_json(const PrimitiveClass& c) {
  Json out = {{"kind", primitive_kind_name(c.kind)}, {"degree", c.n}};
  if (c.outer) out["outer"] = c.outer->to_string("u");
  if (c.inner) out["inner"] = c.inner->to_string("x");
  if (!c.ambiguity.empty()) out["ambiguity"] = c.ambiguity;
  return out;
}

Json matrix_json(const CMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(complex_json(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

C complex_from(const Json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    fail(ErrorCode::InvalidArgument, where + " must be a [re, im] pair");
  return {j[0].get<double>(), j[1].get<double>()};
}

FuchsianSystem parse_system(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const std::exception& e) {
    fail(ErrorCode::SyntaxError, std::string("system is not valid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("poles") || !j.contains("matrices") || !j["poles"].is_array() ||
      !j["matrices"].is_array())
    fail(ErrorCode::InvalidArgument, "system needs arrays \"poles\" and \"matrices\"");
  FuchsianSystem sys;
  for (std::size_t i = 0; i < j["poles"].size(); ++i)
    sys.poles.push_back(complex_from(j["poles"][i], "pole " + std::to_string(i + 1)));
  for (std::size_t k = 0; k < j["matrices"].size(); ++k) {
    const Json& m = j["matrices"][k];
    const std::string where = "matrix " + std::to_string(k + 1);
    if (!m.is_array() || m.empty()) fail(ErrorCode::InvalidArgument, where + " must be a non-empty list of rows");
    const auto n = static_cast<Eigen::Index>(m.size());
    CMatrix a(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
      const Json& row = m[static_cast<std::size_t>(r)];
      if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n)
        fail(ErrorCode::InvalidArgument, where + " must be square");
      for (Eigen::Index c = 0; c < n; ++c) a(r, c) = complex_from(row[static_cast<std::size_t>(c)], where);
    }
    sys.residues.push_back(a);
  }
  sys.validate();
  return sys;
}

std::string fixed(double v) {
  std::ostringstream s;
  s.precision(6);
  s << v;
  return s.str();
}

std::string complex_text(const Json& z) {
  double re = z[0].get<double>(), im = z[1].get<double>();
  const double scale = std::hypot(re, im);
  if (std::abs(re) <= 1e-12 * scale) re = 0.0;
  if (std::abs(im) <= 1e-12 * scale) im = 0.0;
  if (im == 0.0) return fixed(re);
  if (re == 0.0) return fixed(im) + "*I";
  return fixed(re) + (im < 0 ? " - " : " + ") + fixed(std::abs(im)) + "*I";
}

}  // namespace

void Config::set(const std::string& key, const std::string& raw) {
  const std::string value = trim(raw);
  if (key == "continuation_tol") continuation_tol = parse_double(key, value);
  else if (key == "match_fraction") match_fraction = parse_double(key, value);
  else if (key == "max_group_degree") max_group_degree = parse_int(key, value);
  else if (key == "witness_min_bound") witness_min_bound = parse_int(key, value);
  else if (key == "tower_points") tower_points = parse_int(key, value);
  else if (key == "tower_tol") tower_tol = parse_double(key, value);
  else if (key == "fuchsian_tol") fuchsian_tol = parse_double(key, value);
  else if (key == "triangular_tol") triangular_tol = parse_double(key, value);
  else if (key == "puiseux_order") puiseux_order = parse_int(key, value);
  else if (key == "threads") threads = parse_int(key, value);
  else fail(ErrorCode::InvalidArgument, "unknown config key '" + key + "'");
}

void Config::load(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      fail(ErrorCode::InvalidArgument, "config line " + std::to_string(number) + " is not key = value");
    set(trim(line.substr(0, eq)), line.substr(eq + 1));
  }
}

Json Config::to_json() const {
  return {{"continuation_tol", continuation_tol}, {"match_fraction", match_fraction},
          {"max_group_degree", max_group_degree}, {"witness_min_bound", witness_min_bound},
          {"tower_points", tower_points},         {"tower_tol", tower_tol},
          {"fuchsian_tol", fuchsian_tol},         {"triangular_tol", triangular_tol},
          {"puiseux_order", puiseux_order},       {"threads", threads}};
}

Config default_config() {
  Config c;
  c.threads = std::max(1, static_cast<int>(std::thread::hardware_concurrency()));
  if (const char* env = std::getenv("FINITUDE_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && cap >= 1) c.threads = std::min(c.threads, static_cast<int>(cap));
  }
  return c;
}

Json algebraic_report(const AlgebraicRequest& req, const Config& config) {
  Json input = {{"curve", req.curve}, {"k", req.k ? Json(*req.k) : Json(nullptr)}, {"tower", req.tower}};
  return run("algebraic", input, config, [&](Json& out) -> std::optional<VerdictStatus> {
    if (req.k && *req.k < 1) fail(ErrorCode::InvalidArgument, "k must be at least 1");
    const BivariatePolynomial p = parse_bivariate(req.curve).primitive_part_y();
    if (p.degree_y() < 1) fail(ErrorCode::DegreeTooLow, "curve must involve y");
    out["curve"] = p.to_string();
    out["degree_y"] = p.degree_y();
    MonodromyAction m;
    try {
      m = monodromy_group(p, monodromy_options(config));
    } catch (const Error& e) {
      if (e.code() == ErrorCode::SquareFreeRequired) fail(ErrorCode::ReducibleInput, "curve has a repeated factor in y");
      throw;
    }
    out["base_point"] = complex_json(m.base_point);
    Json singular = Json::array();
    for (const auto& s : m.singular.points) singular.push_back(interval_json(s));
    out["singular_points"] = singular;
    Json branches = Json::array();
    for (const auto& r : m.roots) branches.push_back(complex_json(r));
    out["branches"] = branches;
    Json loops = Json::array();
    for (std::size_t i = 0; i < m.loops.size(); ++i)
      loops.push_back({{"encircled", m.loops[i].encircled}, {"permutation", perm_to_cycles(m.generators[i])}});
    out["loops"] = loops;
    out["group"] = group_json(describe_group(m.group));
    out["transitive"] = m.transitive;
    Json orbits = Json::array();
    for (const auto& o : m.orbit_groups) orbits.push_back({{"points", o.points}, {"order", o.group.order().get_str()}});
    out["orbits"] = orbits;
    if (!m.transitive) {
      out["reason"] = "monodromy is not transitive: the curve is reducible in y";
      return VerdictStatus::Undecided;
    }
    TowerOptions topts;
    topts.verification_points = config.tower_points;
    topts.verification_tol = config.tower_tol;
    topts.certificate = req.tower;
    topts.monodromy = monodromy_options(config);
    const Verdict rv = radicals_verdict(p, m, topts);
    Json verdicts = {{"radicals", verdict_json(rv)}};
    VerdictStatus primary = rv.status;
    if (req.k) {
      const Verdict kv = k_radicals_verdict(m, *req.k);
      Json kj = verdict_json(kv);
      kj["k"] = *req.k;
      verdicts["k_radicals"] = kj;
      primary = kv.status;
    }
    out["verdicts"] = verdicts;
    return primary;
  });
}

Json ode_report(const OdeRequest& req, const Config& config) {
  Json input = {{"coefficients", req.coeffs}, {"check", req.check ? Json(*req.check) : Json(nullptr)}};
  return run("ode", input, config, [&](Json& out) -> std::optional<VerdictStatus> {
    if (req.coeffs.empty()) fail(ErrorCode::InvalidArgument, "at least one coefficient is required");
    LinearODE ode;
    for (const auto& c : req.coeffs) ode.coeffs.push_back(parse_rational_function(c));
    out["order"] = ode.order();
    out["riccati"] = generalized_riccati(ode).to_string();
    bool verified = false;
    if (req.check) {
      const RationalFunction u = parse_rational_function(*req.check);
      verified = verify_exp_integral_witness(ode, u);
      out["check"] = {{"u", u.to_string()}, {"satisfies_riccati", verified}};
    }
    if (ode.order() == 1) {
      out["witnesses"] = Json::array({(-ode.coeffs[0]).to_string()});
      out["reason"] = "first-order equations are solved by one quadrature";
      return VerdictStatus::Representable;
    }
    if (ode.order() != 2) {
      out["reason"] = verified ? "the candidate solves the generalized Riccati equation; reduction of order over the "
                                 "extended field is not evaluated"
                               : "witness search covers second-order equations only";
      return VerdictStatus::Undecided;
    }
    WitnessOptions wopts;
    wopts.min_bound = config.witness_min_bound;
    wopts.threads = config.threads;
    const WitnessSearch s = rational_witness_search(ode, wopts);
    Json ws = Json::array();
    for (const auto& w : s.witnesses) ws.push_back(w.to_string());
    out["witnesses"] = ws;
    out["search"] = {{"bound", s.bound},
                     {"families", s.families},
                     {"status", s.status ? Json(error_code_name(*s.status)) : Json(nullptr)},
                     {"notes", s.notes}};
    if (!s.witnesses.empty() || verified) {
      out["reason"] = "a rational solution u of the Riccati equation gives y = exp(integral(u)); reduction of order "
                      "then solves the equation by quadratures";
      return VerdictStatus::Representable;
    }
    out["reason"] = "no rational Riccati solution within the degree bound; this does not prove unsolvability";
    return VerdictStatus::Undecided;
  });
}

Json integrate_report(const std::string& expr, const Config& config) {
  return run("integrate", {{"integrand", expr}}, config, [&](Json& out) -> std::optional<VerdictStatus> {
    const RationalFunction f = parse_rational_function(expr);
    out["integrand"] = f.to_string();
    const LiouvilleForm form = integrate_rational(f);
    out["rational_part"] = form.r0.to_string();
    Json logs = Json::array();
    for (const auto& t : form.logs) logs.push_back({{"lambda", t.lambda.to_string()}, {"argument", t.arg.to_string()}});
    out["logs"] = logs;
    Json alg = Json::array();
    for (const auto& s : form.algebraic_logs) {
      Json lambdas = Json::array();
      for (const auto& i : s.lambdas) lambdas.push_back(interval_json(i));
      alg.push_back({{"minimal_polynomial", s.minimal.to_string("z")},
                     {"argument", log_argument_string(s)},
                     {"lambdas", lambdas}});
    }
    out["algebraic_logs"] = alg;
    out["verified"] = liouville_derivative(form) == f;
    return VerdictStatus::Representable;
  });
}

Json decompose_report(const DecomposeRequest& req, const Config& config) {
  Json input = {{"polynomial", req.polynomial}, {"k", req.k ? Json(*req.k) : Json(nullptr)}};
  return run("decompose", input, config, [&](Json& out) -> std::optional<VerdictStatus> {
    if (req.k && *req.k < 1) fail(ErrorCode::InvalidArgument, "k must be at least 1");
    const Polynomial f = parse_polynomial(req.polynomial);
    out["polynomial"] = f.to_string();
    const Verdict v = invertible_by_radicals(f, monodromy_options(config));
    Json chain = Json::array();
    if (v.chain)
      for (const auto& g : v.chain->factors) chain.push_back(g.to_string());
    out["chain"] = chain;
    Json classes = Json::array();
    for (const auto& c : v.classes) classes.push_back(class_json(c));
    out["classes"] = classes;
    Json rj = verdict_json(v);
    if (v.group) rj["group"] = group_json(*v.group);
    Json verdicts = {{"radicals", rj}};
    VerdictStatus primary = v.status;
    if (req.k) {
      const Verdict kv = invertible_by_k_radicals(f, *req.k, monodromy_options(config));
      Json kj = verdict_json(kv);
      kj["k"] = *req.k;
      if (kv.group) kj["group"] = group_json(*kv.group);
      verdicts["k_radicals"] = kj;
      primary = kv.status;
    }
    out["verdicts"] = verdicts;
    return primary;
  });
}

Json fuchsian_report(const std::string& system_json, const Config& config) {
  Json echo;
  try {
    echo = Json::parse(system_json);
  } catch (const std::exception&) {
    echo = system_json;
  }
  return run("fuchsian", {{"system", echo}}, config, [&](Json& out) -> std::optional<VerdictStatus> {
    const FuchsianSystem sys = parse_system(system_json);
    out["dimension"] = sys.dimension();
    FuchsianOptions fo;
    fo.tol = config.fuchsian_tol;
    fo.threads = config.threads;
    const MonodromyMatrices m = system_monodromy(sys, fo);
    out["base_point"] = complex_json(m.base_point);
    Json loops = Json::array();
    for (const auto& l : m.loops)
      loops.push_back({{"encircled", l.loop.encircled},
                       {"pole", complex_json(sys.poles[static_cast<std::size_t>(l.loop.encircled)])},
                       {"matrix", matrix_json(l.matrix)},
                       {"condition", l.condition},
                       {"steps", l.steps},
                       {"rejected", l.rejected}});
    out["loops"] = loops;
    const FuchsianVerdict v = small_norm_verdict(sys, config.triangular_tol);
    const Triangularization& t = v.triangularization;
    Json tri = {{"triangularizable", t.triangularizable}, {"ambiguous", t.ambiguous}};
    if (t.triangularizable && t.basis.size() > 0) {
      tri["basis"] = matrix_json(t.basis);
      tri["max_below_diagonal"] = t.max_below;
    }
    if (!t.triangularizable)
      tri["obstruction"] = {{"generators", t.obstruction_generators}, {"dimension", t.obstruction_space.cols()}};
    out["triangularization"] = tri;
    out["max_residue_norm"] = v.max_norm;
    out["conditional"] = v.conditional;
    out["reason"] = v.reason;
    out["schedule"] = v.schedule;
    return v.status;
  });
}

Json fuchsian_file_report(const std::string& path, const Config& config) {
  std::ifstream in(path);
  if (!in) {
    return run("fuchsian", {{"file", path}}, config, [&](Json&) -> std::optional<VerdictStatus> {
      fail(ErrorCode::IoError, "cannot read " + path);
    });
  }
  std::stringstream text;
  text << in.rdbuf();
  Json r = fuchsian_report(text.str(), config);
  r["input"]["file"] = path;
  return r;
}

Json puiseux_report(const PuiseuxRequest& req, const Config& config) {
  Json input = {{"curve", req.curve}, {"point", req.point}, {"order", req.order ? Json(*req.order) : Json(nullptr)}};
  return run("puiseux", input, config, [&](Json& out) -> std::optional<VerdictStatus> {
    const BivariatePolynomial p = parse_bivariate(req.curve);
    const std::string pt = trim(req.point);
    const ExpansionPoint point =
        pt == "inf" || pt == "infinity" || pt == "oo" ? ExpansionPoint::at_infinity() : ExpansionPoint::at(parse_constant(pt));
    const Rational order = req.order ? Rational::from_string(trim(*req.order)) : Rational(config.puiseux_order);
    out["curve"] = p.to_string();
    out["point"] = point.infinity ? "infinity" : point.exact->to_string();
    const NewtonPolygon poly = newton_polygon(p, point);
    Json vertices = Json::array(), edges = Json::array();
    for (const auto& v : poly.vertices) vertices.push_back(Json::array({v.i, v.j}));
    for (const auto& e : poly.edges) edges.push_back({{"slope", e.slope.to_string()}, {"length", e.length}});
    out["newton_polygon"] = {{"vertices", vertices}, {"edges", edges}};
    const auto series = puiseux_expand(p, point, order);
    Json sj = Json::array();
    for (const auto& s : series) {
      Json terms = Json::array();
      for (std::size_t k = 0; k < s.coefficients.size(); ++k)
        terms.push_back({{"exponent", s.exponent(k).to_string()}, {"coefficient", complex_json(s.coefficients[k])}});
      sj.push_back({{"cycle", s.cycle},
                    {"ramification", s.ramification},
                    {"leading_exponent", s.leading_exponent.to_string()},
                    {"truncation_order", s.truncation_order.to_string()},
                    {"residual", s.residual},
                    {"terms", terms}});
    }
    out["series"] = sj;
    out["ramification"] = ramification_multiset(series);
    return std::nullopt;
  });
}

int report_exit_code(const Json& report) { return report.value("exit_code", 2); }

std::string render_text(const Json& r) {
  std::ostringstream o;
  const std::string command = r.value("command", "");
  if (r.value("status", "") == "error") {
    const Json& e = r["error"];
    o << "error " << e.value("code", "") << ": " << e.value("message", "") << "\n";
    return o.str();
  }
  const Json& x = r["result"];
  if (command == "algebraic") {
    o << "curve: " << x["curve"].get<std::string>() << "\n";
    o << "base point: " << complex_text(x["base_point"]) << "\n";
    o << "singular points (" << x["singular_points"].size() << "):";
    for (const auto& s : x["singular_points"]) o << " " << complex_text(s["center"]);
    o << "\n";
    for (const auto& l : x["loops"])
      o << "  loop around point " << l["encircled"].get<int>() + 1 << ": " << l["permutation"].get<std::string>() << "\n";
    const Json& g = x["group"];
    o << "group: " << g["name"].get<std::string>() << ", order " << g["order"].get<std::string>()
      << (g["solvable"].get<bool>() ? ", solvable" : ", not solvable") << "\n";
    if (x.contains("verdicts")) {
      for (const auto& [name, v] : x["verdicts"].items()) {
        o << (name == "radicals" ? "radicals" : std::to_string(v["k"].get<int>()) + "-radicals") << ": "
          << v["status"].get<std::string>() << " (" << v["reason"].get<std::string>() << ")\n";
        if (v.contains("certificate")) {
          o << "  y = " << v["certificate"]["expression"].get<std::string>() << "\n";
          o << "  branch: " << v["certificate"]["branch_convention"].get<std::string>() << ", root "
            << v["certificate"]["root_label"].get<int>() + 1 << " at the base point\n";
        }
      }
    } else {
      o << "verdict: " << r["verdict"].get<std::string>() << " (" << x["reason"].get<std::string>() << ")\n";
    }
  } else if (command == "ode") {
    o << "generalized Riccati: " << x["riccati"].get<std::string>() << " = 0\n";
    if (x.contains("check"))
      o << "candidate u = " << x["check"]["u"].get<std::string>() << ": "
        << (x["check"]["satisfies_riccati"].get<bool>() ? "solves" : "does not solve") << " the Riccati equation\n";
    if (x.contains("witnesses")) {
      o << "rational witnesses:";
      if (x["witnesses"].empty()) o << " none";
      for (const auto& w : x["witnesses"]) o << " " << w.get<std::string>();
      o << "\n";
    }
    if (x.contains("search"))
      for (const auto& n : x["search"]["notes"]) o << "  note: " << n.get<std::string>() << "\n";
    o << "verdict: " << r["verdict"].get<std::string>() << " (" << x["reason"].get<std::string>() << ")\n";
  } else if (command == "integrate") {
    std::vector<std::string> parts;
    if (x["rational_part"] != "0") parts.push_back(x["rational_part"].get<std::string>());
    for (const auto& t : x["logs"])
      parts.push_back("(" + t["lambda"].get<std::string>() + ")*log(" + t["argument"].get<std::string>() + ")");
    for (const auto& s : x["algebraic_logs"])
      parts.push_back("sum(z*log(" + s["argument"].get<std::string>() + "), " +
                      s["minimal_polynomial"].get<std::string>() + " = 0)");
    o << "integral of " << x["integrand"].get<std::string>() << " =\n  ";
    if (parts.empty()) o << "0";
    for (std::size_t i = 0; i < parts.size(); ++i) o << (i ? " + " : "") << parts[i];
    o << "\nderivative check: " << (x["verified"].get<bool>() ? "exact" : "FAILED") << "\n";
  } else if (command == "decompose") {
    o << "polynomial: " << x["polynomial"].get<std::string>() << "\n";
    o << "chain (innermost first):";
    for (const auto& c : x["chain"]) o << " [" << c.get<std::string>() << "]";
    o << "\n";
    for (const auto& c : x["classes"]) o << "  degree " << c["degree"].get<int>() << ": " << c["kind"].get<std::string>() << "\n";
    for (const auto& [name, v] : x["verdicts"].items())
      o << "invertible by " << (name == "radicals" ? "radicals" : std::to_string(v["k"].get<int>()) + "-radicals")
        << ": " << v["status"].get<std::string>() << " (" << v["reason"].get<std::string>() << ")\n";
  } else if (command == "fuchsian") {
    o << "dimension " << x["dimension"].get<int>() << ", base point " << complex_text(x["base_point"]) << "\n";
    for (const auto& l : x["loops"]) {
      o << "loop around " << complex_text(l["pole"]) << " (condition " << fixed(l["condition"].get<double>()) << "):\n";
      for (const auto& row : l["matrix"]) {
        o << "   ";
        for (const auto& z : row) o << " [" << complex_text(z) << "]";
        o << "\n";
      }
    }
    o << "common flag: " << (x["triangularization"]["triangularizable"].get<bool>() ? "yes" : "no")
      << (x["triangularization"]["ambiguous"].get<bool>() ? " (near tolerance)" : "") << "\n";
    for (const auto& s : x["schedule"]) o << "  " << s.get<std::string>() << "\n";
    o << "verdict: " << r["verdict"].get<std::string>() << (x["conditional"].get<bool>() ? " (conditional)" : "") << "\n  "
      << x["reason"].get<std::string>() << "\n";
  } else if (command == "puiseux") {
    const std::string at = x["point"].get<std::string>();
    std::string base = "x";
    if (at != "infinity" && at != "0") {
      const bool simple = at.find_first_of("+- ", 1) == std::string::npos;
      if (simple && at[0] == '-') base = "(x + " + at.substr(1) + ")";
      else if (simple) base = "(x - " + at + ")";
      else if (at[0] == '(') base = "(x - " + at + ")";
      else base = "(x - (" + at + "))";
    }
    o << "expansions of " << x["curve"].get<std::string>() << " at " << at << "\n";
    for (const auto& s : x["series"]) {
      o << "  cycle " << s["cycle"].get<int>() << ", ramification " << s["ramification"].get<int>() << ": ";
      bool first = true;
      for (const auto& t : s["terms"]) {
        if (t["coefficient"][0] == 0.0 && t["coefficient"][1] == 0.0) continue;
        o << (first ? "" : " + ") << "(" << complex_text(t["coefficient"]) << ")*" << base << "^(" << t["exponent"].get<std::string>() << ")";
        first = false;
      }
      if (first) o << "0";
      o << " + ...\n";
    }
    o << "ramification:";
    for (const auto& e : x["ramification"]) o << " " << e.get<int>();
    o << "\n";
  }
  return o.str();
}

}  // namespace finitude
