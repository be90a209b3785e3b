#include "finitude/differential.hpp"

#include <algorithm>
#include <climits>

#include "finitude/parallel.hpp"

namespace finitude {

namespace {

using RF = RationalFunction;

JetMonomial trimmed(JetMonomial m) {
  while (!m.empty() && m.back() == 0) m.pop_back();
  return m;
}

std::string jet_name(int k) {
  if (k <= 3) return "u" + std::string(static_cast<std::size_t>(k), '\'');
  return "u(" + std::to_string(k) + ")";
}

std::string monomial_string(const JetMonomial& m) {
  std::string out;
  for (std::size_t k = 0; k < m.size(); ++k) {
    if (m[k] == 0) continue;
    if (!out.empty()) out += "*";
    out += jet_name(static_cast<int>(k));
    if (m[k] > 1) out += "^" + std::to_string(m[k]);
  }
  return out;
}

// Coefficient text and whether it needs parentheses as a factor.
std::pair<std::string, bool> coefficient_string(const RF& c) {
  const std::string s = c.to_string();
  const bool single = c.is_polynomial() && [&] {
    int nonzero = 0;
    for (const auto& v : c.numerator().coeffs()) nonzero += v.is_zero() ? 0 : 1;
    return nonzero <= 1;
  }();
  return {s, !single};
}

Polynomial lcm(const Polynomial& a, const Polynomial& b) { return (a * b).exact_div(gcd(a, b)).monic(); }

// Exact Gaussian elimination; free unknowns are set to zero.
std::optional<std::vector<GR>> solve_linear(std::vector<std::vector<GR>> a, std::vector<GR> b, std::size_t unknowns) {
  const std::size_t rows = a.size();
  std::vector<int> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < unknowns && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c].is_zero()) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    std::swap(b[p], b[r]);
    const GR inv = GR(1) / a[r][c];
    for (std::size_t k = c; k < unknowns; ++k) a[r][k] *= inv;
    b[r] *= inv;
    for (std::size_t q = 0; q < rows; ++q) {
      if (q == r || a[q][c].is_zero()) continue;
      const GR f = a[q][c];
      for (std::size_t k = c; k < unknowns; ++k) a[q][k] -= f * a[r][k];
      b[q] -= f * b[r];
    }
    pivot_col.push_back(static_cast<int>(c));
    ++r;
  }
  for (std::size_t q = r; q < rows; ++q)
    if (!b[q].is_zero()) return std::nullopt;
  std::vector<GR> x(unknowns, GR(0));
  for (std::size_t q = 0; q < r; ++q) x[static_cast<std::size_t>(pivot_col[q])] = b[q];
  return x;
}

// Laurent data r = sum_k c[k] t^(valuation + k) in t = x - c (or t = 1/x).
struct Laurent {
  int valuation = 0;
  std::vector<GR> c;
};

int lowest_index(const Polynomial& p) {
  int k = 0;
  while (p.coeff(k).is_zero()) ++k;
  return k;
}

std::vector<GR> series_quotient(const Polynomial& num, const Polynomial& den, int count) {
  std::vector<GR> q(static_cast<std::size_t>(count), GR(0));
  const GR d0 = den.coeff(0);
  for (int k = 0; k < count; ++k) {
    GR acc = num.coeff(k);
    for (int i = 1; i <= k; ++i) acc -= den.coeff(i) * q[static_cast<std::size_t>(k - i)];
    q[static_cast<std::size_t>(k)] = acc / d0;
  }
  return q;
}

Polynomial strip_low(const Polynomial& p, int k) {
  std::vector<GR> c(p.coeffs().begin() + k, p.coeffs().end());
  return Polynomial(c);
}

Laurent laurent_at(const RF& r, const GR& c, int count) {
  const Polynomial n = r.numerator().shift(c);
  const Polynomial d = r.denominator().shift(c);
  const int vn = lowest_index(n);
  const int vd = lowest_index(d);
  return {vn - vd, series_quotient(strip_low(n, vn), strip_low(d, vd), count)};
}

Polynomial reversed(const Polynomial& p) {
  std::vector<GR> c = p.coeffs();
  std::reverse(c.begin(), c.end());
  return Polynomial(c);
}

Laurent laurent_at_infinity(const RF& r, int count) {
  const Polynomial n = reversed(r.numerator());
  const Polynomial d = reversed(r.denominator());
  return {r.denominator().degree() - r.numerator().degree(), series_quotient(n, d, count)};
}

std::optional<std::vector<GR>> series_sqrt(const std::vector<GR>& s, int count) {
  const auto s0 = s[0].sqrt();
  if (!s0) return std::nullopt;
  std::vector<GR> out{*s0};
  for (int k = 1; k < count; ++k) {
    GR acc = k < static_cast<int>(s.size()) ? s[static_cast<std::size_t>(k)] : GR(0);
    for (int i = 1; i < k; ++i) acc -= out[static_cast<std::size_t>(i)] * out[static_cast<std::size_t>(k - i)];
    out.push_back(acc / (GR(2) * out[0]));
  }
  return out;
}

// One local choice: contribution to omega and the exponent alpha.
struct LocalOption {
  RF part;
  GR alpha;
};

struct LocalData {
  std::vector<LocalOption> options;
  bool irrational = false;
};

void add_option(LocalData& d, const RF& part, const GR& alpha) {
  for (const auto& o : d.options)
    if (o.part == part && o.alpha == alpha) return;
  d.options.push_back({part, alpha});
}

// Options for 1 + 4b under the square root: alpha = 1/2 +- sqrt(1 + 4b)/2.
void double_pole_options(LocalData& d, const GR& b) {
  const auto s = (GR(1) + GR(4) * b).sqrt();
  if (!s) {
    d.irrational = true;
    return;
  }
  const GR half(Rational(1, 2));
  add_option(d, RF(0L), half + half * *s);
  add_option(d, RF(0L), half - half * *s);
}

LocalData pole_data(const RF& r, const GR& c, int order) {
  LocalData d;
  if (order == 1) {
    add_option(d, RF(0L), GR(1));
    return d;
  }
  if (order == 2) {
    double_pole_options(d, laurent_at(r, c, 1).c[0]);
    return d;
  }
  const int nu = order / 2;
  const Laurent l = laurent_at(r, c, nu + 1);
  const auto s = series_sqrt(l.c, nu - 1);
  if (!s) {
    d.irrational = true;
    return d;
  }
  // [sqrt r]_c = sum_{i <= nu-2} s_i (x - c)^(i - nu)
  const Polynomial t = Polynomial({-c, GR(1)});
  RF part(0L);
  for (int i = 0; i <= nu - 2; ++i) part += RF(Polynomial(s->at(static_cast<std::size_t>(i))), t.pow(nu - i));
  GR sq(0);
  for (int i = 0; i <= nu - 2; ++i) {
    const int j = nu - 1 - i;
    if (j >= 0 && j <= nu - 2) sq += s->at(static_cast<std::size_t>(i)) * s->at(static_cast<std::size_t>(j));
  }
  const GR b = l.c[static_cast<std::size_t>(nu - 1)] - sq;
  const GR a = s->at(0);
  const GR half(Rational(1, 2));
  add_option(d, part, half * (b / a + GR(nu)));
  add_option(d, -part, half * (-b / a + GR(nu)));
  return d;
}

LocalData infinity_data(const RF& r) {
  LocalData d;
  if (r.is_zero()) {
    add_option(d, RF(0L), GR(0));
    add_option(d, RF(0L), GR(1));
    return d;
  }
  const int o = r.order_at_infinity();
  if (o > 2) {
    add_option(d, RF(0L), GR(0));
    add_option(d, RF(0L), GR(1));
    return d;
  }
  if (o == 2) {
    double_pole_options(d, laurent_at_infinity(r, 1).c[0]);
    return d;
  }
  const int nu = -o / 2;
  const Laurent l = laurent_at_infinity(r, nu + 2);
  const auto s = series_sqrt(l.c, nu + 1);
  if (!s) {
    d.irrational = true;
    return d;
  }
  std::vector<GR> poly(static_cast<std::size_t>(nu + 1));
  for (int i = 0; i <= nu; ++i) poly[static_cast<std::size_t>(nu - i)] = s->at(static_cast<std::size_t>(i));
  const RF part{Polynomial(poly)};
  GR sq(0);
  for (int i = 0; i <= nu; ++i) {
    const int j = nu + 1 - i;
    if (j >= 0 && j <= nu) sq += s->at(static_cast<std::size_t>(i)) * s->at(static_cast<std::size_t>(j));
  }
  const GR b = l.c[static_cast<std::size_t>(nu + 1)] - sq;
  const GR a = s->at(0);
  const GR half(Rational(1, 2));
  add_option(d, part, half * (b / a - GR(nu)));
  add_option(d, -part, half * (-b / a - GR(nu)));
  return d;
}

// Monic P of degree d with P'' + 2 w P' + (w' + w^2 - r) P = 0.
std::optional<Polynomial> polynomial_factor(const RF& w, const RF& r, int d) {
  const RF theta = w.derivative() + w * w - r;
  std::vector<RF> images;
  Polynomial common(GR(1));
  for (int k = 0; k <= d; ++k) {
    const Polynomial xk = Polynomial::monomial(GR(1), k);
    const RF img = RF(xk.derivative().derivative()) + RF(GR(2)) * w * RF(xk.derivative()) + theta * RF(xk);
    common = lcm(common, img.denominator());
    images.push_back(img);
  }
  std::vector<Polynomial> nums;
  int rows = 0;
  for (const auto& img : images) {
    nums.push_back(img.numerator() * common.exact_div(img.denominator()));
    rows = std::max(rows, nums.back().degree() + 1);
  }
  std::vector<std::vector<GR>> a(static_cast<std::size_t>(rows), std::vector<GR>(static_cast<std::size_t>(d), GR(0)));
  std::vector<GR> b(static_cast<std::size_t>(rows), GR(0));
  for (int i = 0; i < rows; ++i) {
    for (int k = 0; k < d; ++k) a[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] = nums[static_cast<std::size_t>(k)].coeff(i);
    b[static_cast<std::size_t>(i)] = -nums[static_cast<std::size_t>(d)].coeff(i);
  }
  const auto sol = solve_linear(a, b, static_cast<std::size_t>(d));
  if (!sol) return std::nullopt;
  std::vector<GR> c = *sol;
  c.push_back(GR(1));
  return Polynomial(c);
}

// Element of Q(i)[x][z]/(q) as its z-coefficients, lowest first.
using ZVector = std::vector<Polynomial>;

ZVector times_z(ZVector v, const Polynomial& q) {
  const std::size_t m = static_cast<std::size_t>(q.degree());
  v.insert(v.begin(), Polynomial());
  const Polynomial top = v[m];
  v.resize(m);
  for (std::size_t k = 0; k < m; ++k) v[k] -= top * q.coeff(static_cast<int>(k));
  return v;
}

// S(z, x) reduced modulo q; the bivariate stores powers of x in its y-slot
// and z in its x-slot.
ZVector to_zvector(const BivariatePolynomial& s, const Polynomial& q) {
  ZVector out(static_cast<std::size_t>(q.degree()));
  for (int j = 0; j <= s.degree_y(); ++j) {
    const Polynomial cz = s.y_coeff(j) % q;
    for (int k = 0; k <= cz.degree(); ++k) out[static_cast<std::size_t>(k)] += Polynomial::monomial(cz.coeff(k), j);
  }
  return out;
}

// Tr(z * S_x / S) over the roots of q, by fraction-free elimination of the
// multiplication-by-S matrix.
RF trace_term(const AlgebraicLogSum& s) {
  const Polynomial& q = s.minimal;
  const std::size_t m = static_cast<std::size_t>(q.degree());
  std::vector<std::vector<Polynomial>> a(m, std::vector<Polynomial>(m + 1));
  ZVector col = to_zvector(s.arg, q);
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t i = 0; i < m; ++i) a[i][j] = col[i];
    col = times_z(col, q);
  }
  const ZVector rhs = times_z(to_zvector(s.arg.derivative_y(), q), q);
  for (std::size_t i = 0; i < m; ++i) a[i][m] = rhs[i];

  Polynomial prev(GR(1));
  for (std::size_t k = 0; k < m; ++k) {
    std::size_t p = k;
    while (p < m && a[p][k].is_zero()) ++p;
    if (p == m) fail(ErrorCode::NumericBreakdown, "log argument is not invertible modulo its minimal polynomial");
    std::swap(a[p], a[k]);
    for (std::size_t i = k + 1; i < m; ++i) {
      for (std::size_t j = k + 1; j <= m; ++j) a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]).exact_div(prev);
      a[i][k] = Polynomial();
    }
    prev = a[k][k];
  }
  std::vector<RF> w(m);
  for (std::size_t k = m; k-- > 0;) {
    RF acc(a[k][m]);
    for (std::size_t j = k + 1; j < m; ++j) acc -= RF(a[k][j]) * w[j];
    w[k] = acc / RF(a[k][k]);
  }
  // power sums of the roots of the monic minimal polynomial
  const int n = static_cast<int>(m);
  std::vector<GR> ps(m, GR(0));
  ps[0] = GR(n);
  for (int k = 1; k < n; ++k) {
    GR acc = GR(k) * q.coeff(n - k);
    for (int i = 1; i < k; ++i) acc += q.coeff(n - i) * ps[static_cast<std::size_t>(k - i)];
    ps[static_cast<std::size_t>(k)] = -acc;
  }
  RF out(0L);
  for (std::size_t k = 0; k < m; ++k) out += w[k] * RF(ps[k]);
  return out;
}

BivariatePolynomial reduce_coeffs(const BivariatePolynomial& s, const Polynomial& q) {
  std::vector<Polynomial> ys;
  for (const auto& c : s.y_coeffs()) ys.push_back(c % q);
  return BivariatePolynomial(ys);
}

BivariatePolynomial divide_coeffs(const BivariatePolynomial& s, const Polynomial& g) {
  std::vector<Polynomial> ys;
  for (const auto& c : s.y_coeffs()) ys.push_back(c.exact_div(g));
  return BivariatePolynomial(ys);
}

Polynomial eval_coeffs(const BivariatePolynomial& s, const GR& z) {
  std::vector<GR> c;
  for (const auto& cz : s.y_coeffs()) c.push_back(cz(z));
  return Polynomial(c);
}

}  // namespace

bool JetOrder::operator()(const JetMonomial& a, const JetMonomial& b) const {
  const std::size_t n = std::max(a.size(), b.size());
  for (std::size_t k = n; k-- > 0;) {
    const int ea = k < a.size() ? a[k] : 0;
    const int eb = k < b.size() ? b[k] : 0;
    if (ea != eb) return ea > eb;
  }
  return false;
}

DifferentialPolynomial::DifferentialPolynomial(const RF& c) {
  if (!c.is_zero()) terms_.emplace(JetMonomial{}, c);
}

DifferentialPolynomial DifferentialPolynomial::jet(int order) {
  DifferentialPolynomial out;
  JetMonomial m(static_cast<std::size_t>(order + 1), 0);
  m.back() = 1;
  out.terms_.emplace(m, RF(1L));
  return out;
}

void DifferentialPolynomial::add_term(const JetMonomial& m, const RF& c) {
  if (c.is_zero()) return;
  const JetMonomial t = trimmed(m);
  auto it = terms_.find(t);
  if (it == terms_.end()) {
    terms_.emplace(t, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

int DifferentialPolynomial::jet_order() const {
  int out = -1;
  for (const auto& [m, c] : terms_) out = std::max(out, static_cast<int>(m.size()) - 1);
  return out;
}

int DifferentialPolynomial::degree() const {
  int out = terms_.empty() ? -1 : 0;
  for (const auto& [m, c] : terms_) {
    int d = 0;
    for (int e : m) d += e;
    out = std::max(out, d);
  }
  return out;
}

DifferentialPolynomial DifferentialPolynomial::homogeneous_part(int degree) const {
  DifferentialPolynomial out;
  for (const auto& [m, c] : terms_) {
    int d = 0;
    for (int e : m) d += e;
    if (d == degree) out.terms_.emplace(m, c);
  }
  return out;
}

RF DifferentialPolynomial::coeff(const JetMonomial& m) const {
  const auto it = terms_.find(trimmed(m));
  return it == terms_.end() ? RF(0L) : it->second;
}

DifferentialPolynomial DifferentialPolynomial::derivative() const {
  DifferentialPolynomial out;
  for (const auto& [m, c] : terms_) {
    out.add_term(m, c.derivative());
    for (std::size_t k = 0; k < m.size(); ++k) {
      if (m[k] == 0) continue;
      JetMonomial n = m;
      n[k] -= 1;
      if (n.size() <= k + 1) n.resize(k + 2, 0);
      n[k + 1] += 1;
      out.add_term(n, c * RF(static_cast<long>(m[k])));
    }
  }
  return out;
}

RF DifferentialPolynomial::evaluate(const RF& u) const {
  std::vector<RF> jets{u};
  for (int k = 0; k < jet_order(); ++k) jets.push_back(jets.back().derivative());
  RF out(0L);
  for (const auto& [m, c] : terms_) {
    RF t = c;
    for (std::size_t k = 0; k < m.size(); ++k)
      if (m[k] > 0) t *= jets[k].pow(m[k]);
    out += t;
  }
  return out;
}

DifferentialPolynomial& DifferentialPolynomial::operator+=(const DifferentialPolynomial& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

DifferentialPolynomial& DifferentialPolynomial::operator-=(const DifferentialPolynomial& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

DifferentialPolynomial& DifferentialPolynomial::operator*=(const DifferentialPolynomial& o) {
  DifferentialPolynomial out;
  for (const auto& [ma, ca] : terms_) {
    for (const auto& [mb, cb] : o.terms_) {
      JetMonomial m(std::max(ma.size(), mb.size()), 0);
      for (std::size_t k = 0; k < ma.size(); ++k) m[k] += ma[k];
      for (std::size_t k = 0; k < mb.size(); ++k) m[k] += mb[k];
      out.add_term(m, ca * cb);
    }
  }
  *this = std::move(out);
  return *this;
}

DifferentialPolynomial DifferentialPolynomial::pow(int e) const {
  DifferentialPolynomial out(RF(1L));
  for (int k = 0; k < e; ++k) out *= *this;
  return out;
}

std::string DifferentialPolynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [m, c] : terms_) {
    const std::string mono = monomial_string(m);
    auto [cs, complex] = coefficient_string(c);
    std::string term;
    bool negative = false;
    if (mono.empty()) {
      term = cs;
      if (!complex && term.front() == '-') {
        negative = true;
        term = term.substr(1);
      }
    } else if (cs == "1") {
      term = mono;
    } else if (cs == "-1") {
      negative = true;
      term = mono;
    } else if (complex) {
      term = "(" + cs + ")*" + mono;
    } else {
      if (cs.front() == '-') {
        negative = true;
        cs = cs.substr(1);
      }
      term = cs + "*" + mono;
    }
    if (out.empty()) out = negative ? "-" + term : term;
    else out += (negative ? " - " : " + ") + term;
  }
  return out;
}

std::vector<DifferentialPolynomial> d_sequence(int n) {
  if (n < 0) fail(ErrorCode::InvalidArgument, "order must be nonnegative");
  if (n > kMaxJetOrder) fail(ErrorCode::OrderTooLarge, "order " + std::to_string(n) + " exceeds " + std::to_string(kMaxJetOrder));
  std::vector<DifferentialPolynomial> d{DifferentialPolynomial(RF(1L))};
  const DifferentialPolynomial u = DifferentialPolynomial::jet(0);
  for (int k = 0; k < n; ++k) d.push_back(d.back().derivative() + u * d.back());
  return d;
}

DifferentialPolynomial generalized_riccati(const LinearODE& ode) {
  const int n = ode.order();
  if (n < 1) fail(ErrorCode::InvalidArgument, "equation order must be at least 1");
  const auto d = d_sequence(n);
  DifferentialPolynomial out = d[static_cast<std::size_t>(n)];
  for (int i = 1; i <= n; ++i)
    out += DifferentialPolynomial(ode.coeffs[static_cast<std::size_t>(i - 1)]) * d[static_cast<std::size_t>(n - i)];
  return out;
}

std::vector<std::string> generalized_riccati_symbolic(int n) {
  if (n < 1) fail(ErrorCode::InvalidArgument, "equation order must be at least 1");
  const auto d = d_sequence(n);
  std::vector<std::string> out;
  for (int i = 0; i <= n; ++i) {
    const std::string symbol = i == 0 ? "" : "a_" + std::to_string(i);
    for (const auto& [m, c] : d[static_cast<std::size_t>(n - i)].terms()) {
      std::string coeff = c == RF(1L) ? "" : c.to_string();
      std::string mono = monomial_string(m);
      std::string term = symbol;
      for (const auto* part : {&coeff, &mono}) {
        if (part->empty()) continue;
        term += (term.empty() ? "" : "*") + *part;
      }
      out.push_back(term.empty() ? "1" : term);
    }
  }
  return out;
}

JetSubstitution from_sparse(const SparsePolynomial& q) {
  JetSubstitution out;
  for (const auto& [e, c] : q)
    if (!c.is_zero()) out.emplace(e, RF(c));
  return out;
}

DifferentialPolynomial generalized_riccati_homogeneous(const JetSubstitution& q) {
  int degree = -1;
  int n = 0;
  bool any = false;
  for (const auto& [e, c] : q) {
    if (c.is_zero()) continue;
    any = true;
    int d = 0;
    for (int v : e) d += v;
    if (degree >= 0 && d != degree) fail(ErrorCode::NotHomogeneous, "polynomial is not homogeneous");
    degree = d;
    for (std::size_t k = 0; k < e.size(); ++k)
      if (e[k] > 0) n = std::max(n, static_cast<int>(k));
  }
  if (!any) fail(ErrorCode::ZeroPolynomial, "zero polynomial");
  const auto d = d_sequence(n);
  DifferentialPolynomial out;
  for (const auto& [e, c] : q) {
    if (c.is_zero()) continue;
    DifferentialPolynomial t(c);
    for (std::size_t k = 0; k < e.size(); ++k)
      if (e[k] > 0) t *= d[k].pow(e[k]);
    out += t;
  }
  return out;
}

XiWeight xi_weighted_check(const JetSubstitution& q) {
  XiWeight out;
  bool first = true;
  for (const auto& [e, c] : q) {
    if (c.is_zero()) continue;
    int w = 0;
    for (std::size_t k = 0; k < e.size(); ++k) w += static_cast<int>(k) * e[k];
    if (first || w > out.weight) {
      out.weight = w;
      out.top_sum = c;
    } else if (w == out.weight) {
      out.top_sum += c;
    }
    first = false;
  }
  if (first) fail(ErrorCode::ZeroPolynomial, "zero polynomial");
  out.satisfied = !out.top_sum.is_zero();
  return out;
}

bool verify_exp_integral_witness(const LinearODE& ode, const RF& u) {
  return generalized_riccati(ode).evaluate(u).is_zero();
}

WitnessSearch rational_witness_search(const LinearODE& ode, const WitnessOptions& options) {
  if (ode.order() != 2) fail(ErrorCode::InvalidArgument, "witness search needs a second-order equation");
  const RF& a1 = ode.coeffs[0];
  const RF& a2 = ode.coeffs[1];
  // v = u + a1/2 solves v' + v^2 = r
  const RF r = a1 * a1 / RF(4L) + a1.derivative() / RF(2L) - a2;
  WitnessSearch out;

  const Polynomial& den = r.denominator();
  const auto poles = gaussian_rational_roots(den);
  int located = 0;
  for (const auto& [c, m] : poles) located += m;
  if (located != den.degree()) {
    out.status = ErrorCode::IrrationalPole;
    out.notes.push_back("normal form has poles outside Q(i)");
    return out;
  }
  std::vector<LocalData> local;
  std::vector<GR> centers;
  int pole_total = 0;
  for (const auto& [c, m] : poles) {
    pole_total += m;
    if (m > 2 && m % 2 == 1) {
      out.status = ErrorCode::NoneFound;
      out.notes.push_back("pole of odd order " + std::to_string(m) + " at " + c.to_string());
      return out;
    }
    local.push_back(pole_data(r, c, m));
    centers.push_back(c);
  }
  const int o_inf = r.is_zero() ? INT_MAX : r.order_at_infinity();
  if (o_inf < 2 && o_inf % 2 != 0) {
    out.status = ErrorCode::NoneFound;
    out.notes.push_back("odd order " + std::to_string(o_inf) + " at infinity");
    return out;
  }
  const LocalData inf = infinity_data(r);
  out.bound = std::max(options.min_bound, pole_total + (o_inf == INT_MAX ? 0 : std::abs(o_inf)) + 2);

  bool irrational = inf.irrational || inf.options.empty();
  for (const auto& d : local) irrational = irrational || d.irrational;
  std::vector<std::size_t> sizes;
  std::size_t families = inf.options.size();
  for (const auto& d : local) {
    sizes.push_back(d.options.size());
    families *= d.options.size();
  }
  out.families = static_cast<int>(families);

  struct Outcome {
    std::optional<RF> witness;
    bool over_bound = false;
  };
  std::vector<Outcome> results(families);
  parallel_for(families, options.threads, [&](std::size_t index) {
    std::size_t rest = index;
    const LocalOption& at_inf = inf.options[rest % inf.options.size()];
    rest /= inf.options.size();
    GR d = at_inf.alpha;
    RF w = at_inf.part;
    for (std::size_t k = 0; k < local.size(); ++k) {
      const LocalOption& o = local[k].options[rest % sizes[k]];
      rest /= sizes[k];
      d -= o.alpha;
      w += o.part + RF(Polynomial(o.alpha), Polynomial({-centers[k], GR(1)}));
    }
    if (!d.is_real() || !d.re().is_integer() || d.re().sign() < 0) return;
    const long degree = d.re().numerator().get_si();
    if (degree > out.bound) {
      results[index].over_bound = true;
      return;
    }
    const auto p = polynomial_factor(w, r, static_cast<int>(degree));
    if (!p) return;
    const RF u = w + RF(p->derivative(), *p) - a1 / RF(2L);
    if (verify_exp_integral_witness(ode, u)) results[index].witness = u;
  });

  bool over = false;
  for (const auto& res : results) {
    over = over || res.over_bound;
    if (!res.witness) continue;
    if (std::find(out.witnesses.begin(), out.witnesses.end(), *res.witness) == out.witnesses.end())
      out.witnesses.push_back(*res.witness);
  }
  std::sort(out.witnesses.begin(), out.witnesses.end(),
            [](const RF& a, const RF& b) { return a.to_string() < b.to_string(); });
  if (irrational) out.notes.push_back("local exponents outside Q(i) were skipped");
  if (over) out.notes.push_back("some families need a polynomial factor above the degree bound");
  if (out.witnesses.empty()) out.status = over ? ErrorCode::BoundExceeded : irrational ? ErrorCode::IrrationalPole : ErrorCode::NoneFound;
  return out;
}

LiouvilleForm integrate_rational(const RF& f) {
  LiouvilleForm out;
  if (f.is_zero()) return out;
  auto [q, a] = f.numerator().divmod(f.denominator());
  out.r0 = RF(q.integral());
  if (a.is_zero()) return out;

  // Hermite reduction (linear version)
  Polynomial d = f.denominator();
  Polynomial dm = gcd(d, d.derivative());
  const Polynomial ds = d.exact_div(dm);
  while (dm.degree() > 0) {
    const Polynomial dm2 = gcd(dm, dm.derivative());
    const Polynomial dms = dm.exact_div(dm2);
    const Polynomial lhs = -(ds * dm.derivative()).exact_div(dm);
    auto [b, c] = extended_euclid(lhs, dms, a);
    a = c - b.derivative() * ds.exact_div(dms);
    out.r0 += RF(b, dm);
    dm = dm2;
  }
  auto [q2, rem] = a.divmod(ds);
  out.r0 += RF(q2.integral());
  if (rem.is_zero()) return out;
  const RF h(rem, ds);
  const Polynomial A = h.numerator();
  const Polynomial D = h.denominator();

  // Lazard-Rioboo-Trager: z plays the x-slot, x the y-slot
  std::vector<Polynomial> dcol, gcol;
  const Polynomial dd = D.derivative();
  for (int j = 0; j <= D.degree(); ++j) dcol.push_back(Polynomial(D.coeff(j)));
  for (int j = 0; j < D.degree(); ++j) gcol.push_back(Polynomial({A.coeff(j), -dd.coeff(j)}));
  const BivariatePolynomial Db(dcol), Gb(gcol);
  const Polynomial R = resultant_y(Db, Gb);
  const auto subres = subresultants_y(Db, Gb);
  for (const auto& [Q, i] : squarefree_factorization(R)) {
    if (Q.degree() < 1) continue;
    BivariatePolynomial S;
    if (i == D.degree()) {
      S = Db;
    } else {
      S = subres[static_cast<std::size_t>(i)];
      for (const auto& [Aj, j] : squarefree_factorization(S.y_coeff(i)))
        S = divide_coeffs(S, gcd(Aj, Q).pow(j));
    }
    S = reduce_coeffs(S, Q);
    Polynomial rest = Q;
    for (const auto& [lambda, mult] : gaussian_rational_roots(Q)) {
      (void)mult;
      out.logs.push_back({lambda, eval_coeffs(S, lambda).monic()});
      rest = rest.exact_div(Polynomial({-lambda, GR(1)}));
    }
    if (rest.degree() > 0) {
      AlgebraicLogSum s;
      s.minimal = rest.monic();
      s.arg = reduce_coeffs(S, s.minimal);
      for (const auto& c : distinct_roots(s.minimal)) s.lambdas.push_back(c.interval);
      out.algebraic_logs.push_back(s);
    }
  }
  return out;
}

RF liouville_derivative(const LiouvilleForm& form) {
  RF out = form.r0.derivative();
  for (const auto& t : form.logs) out += RF(t.lambda) * RF(t.arg.derivative(), t.arg);
  for (const auto& s : form.algebraic_logs) out += trace_term(s);
  return out;
}

std::string log_argument_string(const AlgebraicLogSum& s) { return s.arg.to_string("z", "x"); }

}  // namespace finitude
