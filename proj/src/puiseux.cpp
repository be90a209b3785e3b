#include "finitude/puiseux.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>

#include "finitude/error.hpp"
#include "finitude/roots.hpp"

namespace finitude {

namespace {

using cl = std::complex<long double>;

// a[j][i] is the coefficient of t^i y^j; m[j][i] bounds the size of the terms
// that produced it, so |a| <= tol * m means "zero up to rounding".
struct Grid {
  std::vector<std::vector<cl>> a;
  std::vector<std::vector<long double>> m;
  std::optional<std::vector<std::vector<GR>>> exact;

  int columns() const { return static_cast<int>(a.size()); }
  int width(int j) const { return static_cast<int>(a[static_cast<std::size_t>(j)].size()); }
  cl at(int j, int i) const { return i < width(j) ? a[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] : cl(0); }
  long double mag(int j, int i) const {
    return i < width(j) ? m[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] : 0.0L;
  }
  bool negligible(int j, int i, double tol) const {
    return std::abs(at(j, i)) <= static_cast<long double>(tol) * mag(j, i);
  }
};

long double binomial(int n, int k) {
  long double r = 1;
  for (int t = 1; t <= k; ++t) r = r * static_cast<long double>(n - k + t) / t;
  return r;
}

Grid grid_from_exact(const std::vector<std::vector<GR>>& e) {
  Grid g;
  g.exact = e;
  for (const auto& col : e) {
    std::vector<cl> a;
    std::vector<long double> m;
    for (const auto& v : col) {
      a.push_back(v.to_complex_ld());
      m.push_back(std::abs(a.back()));
    }
    g.a.push_back(a);
    g.m.push_back(m);
  }
  return g;
}

Grid top_level_grid(const BivariatePolynomial& p, const ExpansionPoint& point) {
  const int n = p.degree_y();
  if (point.infinity) {
    const int dx = p.degree_x();
    std::vector<std::vector<GR>> e(static_cast<std::size_t>(n + 1), std::vector<GR>(static_cast<std::size_t>(dx + 1)));
    for (int j = 0; j <= n; ++j)
      for (int i = 0; i <= dx; ++i) e[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = p.coeff(dx - i, j);
    return grid_from_exact(e);
  }
  if (point.exact) {
    const BivariatePolynomial s = p.shift_x(*point.exact);
    const int dx = std::max(0, s.degree_x());
    std::vector<std::vector<GR>> e(static_cast<std::size_t>(n + 1), std::vector<GR>(static_cast<std::size_t>(dx + 1)));
    for (int j = 0; j <= n; ++j)
      for (int i = 0; i <= dx; ++i) e[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = s.coeff(i, j);
    return grid_from_exact(e);
  }
  const cl x0(point.value.real(), point.value.imag());
  const long double ax0 = std::abs(x0);
  Grid g;
  const int dx = std::max(0, p.degree_x());
  for (int j = 0; j <= n; ++j) {
    const auto c = p.y_coeff(j).to_complex_ld();
    std::vector<cl> a(static_cast<std::size_t>(dx + 1));
    std::vector<long double> m(static_cast<std::size_t>(dx + 1));
    for (int i = 0; i < static_cast<int>(c.size()); ++i) {
      cl pw = 1;
      long double apw = 1;
      for (int k = i; k < static_cast<int>(c.size()); ++k) {
        const long double b = binomial(k, i);
        a[static_cast<std::size_t>(i)] += b * c[static_cast<std::size_t>(k)] * pw;
        m[static_cast<std::size_t>(i)] += b * std::abs(c[static_cast<std::size_t>(k)]) * apw;
        pw *= x0;
        apw *= ax0;
      }
    }
    g.a.push_back(a);
    g.m.push_back(m);
  }
  return g;
}

std::vector<PolygonVertex> lower_hull(const Grid& g, int jmax, double tol) {
  std::vector<PolygonVertex> pts;
  for (int j = 0; j <= jmax && j < g.columns(); ++j)
    for (int i = 0; i < g.width(j); ++i)
      if (!g.negligible(j, i, tol)) {
        pts.push_back({i, j});
        break;
      }
  std::vector<PolygonVertex> hull;
  for (const auto& pt : pts) {
    while (hull.size() >= 2) {
      const auto& a = hull[hull.size() - 2];
      const auto& b = hull.back();
      const long cross = static_cast<long>(b.j - a.j) * (pt.i - a.i) - static_cast<long>(b.i - a.i) * (pt.j - a.j);
      if (cross > 0) break;
      hull.pop_back();
    }
    hull.push_back(pt);
  }
  return hull;
}

struct Cluster {
  cl value;
  int mult = 1;
};

std::vector<cl> derivative(const std::vector<cl>& c) {
  std::vector<cl> d;
  for (std::size_t k = 1; k < c.size(); ++k) d.push_back(c[k] * static_cast<long double>(k));
  return d;
}

cl horner(const std::vector<cl>& c, cl z) {
  cl acc = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
  return acc;
}

// Newton on the (mult-1)-th derivative, where a repeated root is simple.
cl refine_repeated(const std::vector<cl>& psi, cl z, int mult) {
  std::vector<cl> f = psi;
  for (int k = 1; k < mult; ++k) f = derivative(f);
  const std::vector<cl> df = derivative(f);
  for (int it = 0; it < 40; ++it) {
    const cl d = horner(df, z);
    if (d == cl(0)) break;
    const cl step = horner(f, z) / d;
    z -= step;
    if (std::abs(step) <= 1e-19L * std::max<long double>(1, std::abs(z))) break;
  }
  return z;
}

std::vector<Cluster> edge_roots(const std::vector<cl>& psi, const std::optional<Polynomial>& exact,
                                const PuiseuxOptions& opt) {
  std::vector<Cluster> out;
  if (exact) {
    for (const auto& r : distinct_roots(*exact, 1e-9)) {
      const cl z(r.interval.center.real(), r.interval.center.imag());
      out.push_back({refine_repeated(psi, z, r.multiplicity), r.multiplicity});
    }
    return out;
  }
  const auto z = aberth_roots(psi);
  std::vector<int> owner(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) owner[i] = static_cast<int>(i);
  std::function<int(int)> find = [&](int v) { return owner[static_cast<std::size_t>(v)] == v ? v : owner[static_cast<std::size_t>(v)] = find(owner[static_cast<std::size_t>(v)]); };
  for (std::size_t i = 0; i < z.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (std::abs(z[i] - z[j]) <= static_cast<long double>(opt.cluster_tol) * std::max<long double>(1, std::abs(z[i])))
        owner[static_cast<std::size_t>(find(static_cast<int>(i)))] = find(static_cast<int>(j));
  std::map<int, std::pair<cl, int>> groups;
  for (std::size_t i = 0; i < z.size(); ++i) {
    auto& gr = groups[find(static_cast<int>(i))];
    gr.first += z[i];
    gr.second += 1;
  }
  for (const auto& [root, acc] : groups) {
    const cl mean = acc.first / static_cast<long double>(acc.second);
    out.push_back({acc.second > 1 ? refine_repeated(psi, mean, acc.second) : refine_repeated(psi, mean, 1), acc.second});
  }
  return out;
}

// F(tau^q, tau^p (c + w)) / tau^shift.
Grid substitute(const Grid& g, int q, int p, cl c, int shift) {
  const int cols = g.columns();
  int width = 1;
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < g.width(j); ++i)
      if (g.at(j, i) != cl(0)) width = std::max(width, q * i + p * j - shift + 1);
  Grid out;
  out.a.assign(static_cast<std::size_t>(cols), std::vector<cl>(static_cast<std::size_t>(width)));
  out.m.assign(static_cast<std::size_t>(cols), std::vector<long double>(static_cast<std::size_t>(width)));
  std::vector<cl> cpow(static_cast<std::size_t>(cols + 1), 1);
  std::vector<long double> apow(static_cast<std::size_t>(cols + 1), 1);
  for (int k = 1; k <= cols; ++k) {
    cpow[static_cast<std::size_t>(k)] = cpow[static_cast<std::size_t>(k - 1)] * c;
    apow[static_cast<std::size_t>(k)] = apow[static_cast<std::size_t>(k - 1)] * std::abs(c);
  }
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < g.width(j); ++i) {
      const cl v = g.at(j, i);
      if (v == cl(0)) continue;
      const int e = q * i + p * j - shift;
      if (e < 0) continue;
      const long double mv = g.mag(j, i);
      for (int k = 0; k <= j; ++k) {
        const long double b = binomial(j, k);
        out.a[static_cast<std::size_t>(k)][static_cast<std::size_t>(e)] += b * v * cpow[static_cast<std::size_t>(j - k)];
        out.m[static_cast<std::size_t>(k)][static_cast<std::size_t>(e)] += b * mv * apow[static_cast<std::size_t>(j - k)];
      }
    }
  return out;
}

// A branch y = prefix(tau) + tau^m * w(tau) with x - x0 = tau^Q (or 1/x = tau^Q),
// where w solves tail(tau, w) = 0 with w(0) = 0 and a simple root there.
struct RawBranch {
  int q_total = 1;
  std::map<int, cl> prefix;
  int m = 0;
  std::optional<Grid> tail;  // empty when w == 0 exactly
};

struct Expander {
  const PuiseuxOptions& opt;
  std::vector<RawBranch> out;

  void run(const Grid& g, int jmax, int depth, int q_total, const std::map<int, cl>& prefix, int m) {
    if (depth > opt.max_depth)
      fail(ErrorCode::NumericBreakdown, "repeated initial terms persist beyond the recursion depth limit");
    const auto hull = lower_hull(g, jmax, opt.zero_tol);
    if (hull.empty()) fail(ErrorCode::NumericBreakdown, "local polynomial vanishes numerically");
    if (hull.front().j > 0) {
      if (depth == 0 && hull.front().j > 1)
        fail(ErrorCode::SquareFreeRequired, "y divides the polynomial more than once");
      out.push_back({q_total, prefix, m, std::nullopt});
    }
    for (std::size_t e = 0; e + 1 < hull.size(); ++e) {
      const auto& v1 = hull[e];
      const auto& v2 = hull[e + 1];
      const Rational gamma(mpz_class(v1.i - v2.i), mpz_class(v2.j - v1.j));
      const int p = static_cast<int>(gamma.numerator().get_si());
      const int q = static_cast<int>(gamma.denominator().get_si());
      const int steps = (v2.j - v1.j) / q;
      std::vector<cl> psi(static_cast<std::size_t>(steps + 1));
      std::optional<Polynomial> exact_psi;
      std::vector<GR> exact_coeffs;
      for (int k = 0; k <= steps; ++k) {
        const int j = v1.j + k * q;
        const int i = v1.i - k * p;
        psi[static_cast<std::size_t>(k)] = g.negligible(j, i, opt.zero_tol) ? cl(0) : g.at(j, i);
        if (g.exact) exact_coeffs.push_back(i < g.width(j) ? (*g.exact)[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] : GR(0));
      }
      if (g.exact) exact_psi = Polynomial(exact_coeffs);
      const int shift = q * v1.i + p * v1.j;
      for (const auto& root : edge_roots(psi, exact_psi, opt)) {
        const long double r = std::abs(root.value);
        const long double a = std::arg(root.value);
        for (int l = 0; l < q; ++l) {
          const cl c = std::polar(std::pow(r, 1.0L / q), (a + 2 * std::numbers::pi_v<long double> * l) / q);
          Grid next = substitute(g, q, p, c, shift);
          for (int j = 0; j < root.mult && j < next.columns(); ++j)
            if (next.width(j) > 0) next.a[static_cast<std::size_t>(j)][0] = 0;
          std::map<int, cl> pre;
          for (const auto& [k, v] : prefix) pre[k * q] = v;
          const int m_next = m * q + p;
          pre[m_next] += c;
          if (root.mult == 1) {
            out.push_back({q_total * q, pre, m_next, std::move(next)});
          } else {
            run(next, root.mult, depth + 1, q_total * q, pre, m_next);
          }
        }
      }
    }
  }
};

// Coefficients b_1..b_count of the root w(tau) = sum b_k tau^k of tail(tau, w) = 0.
std::vector<cl> solve_tail(const Grid& g, int count, const PuiseuxOptions& opt) {
  std::vector<cl> w(static_cast<std::size_t>(count + 1));
  if (count <= 0) return w;
  const cl lin = g.at(1, 0);
  const long double scale = std::max(g.mag(1, 0), std::numeric_limits<long double>::min());
  if (std::abs(lin) * static_cast<long double>(opt.condition_limit) <= scale)
    fail(ErrorCode::NumericBreakdown,
         "ill-conditioned coefficient solve, condition estimate " +
             std::to_string(static_cast<double>(scale / std::max(std::abs(lin), std::numeric_limits<long double>::min()))));
  const int cols = g.columns();
  // pw[j][r] = [tau^r] w^j
  std::vector<std::vector<cl>> pw(static_cast<std::size_t>(cols), std::vector<cl>(static_cast<std::size_t>(count + 1)));
  pw[0][0] = 1;
  for (int k = 1; k <= count; ++k) {
    for (int j = 2; j < cols; ++j) {
      cl acc = 0;
      for (int s = 1; s < k; ++s) acc += w[static_cast<std::size_t>(s)] * pw[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(k - s)];
      pw[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] = acc;
    }
    cl sum = 0;
    for (int j = 0; j < cols; ++j)
      for (int i = 0; i <= k && i < g.width(j); ++i) {
        if (j == 1 && i == 0) continue;
        const cl a = g.at(j, i);
        if (a == cl(0)) continue;
        sum += a * pw[static_cast<std::size_t>(j)][static_cast<std::size_t>(k - i)];
      }
    w[static_cast<std::size_t>(k)] = -sum / lin;
    pw[1][static_cast<std::size_t>(k)] = w[static_cast<std::size_t>(k)];
  }
  return w;
}

struct Laurent {
  int low = 0;
  std::vector<cl> c;
};

// Coefficients of y(tau) from exponent `low` through `high`.
Laurent assemble(const RawBranch& b, int high, const PuiseuxOptions& opt) {
  std::map<int, cl> terms = b.prefix;
  if (b.tail) {
    const auto w = solve_tail(*b.tail, high - b.m, opt);
    for (int k = 1; k < static_cast<int>(w.size()); ++k) terms[b.m + k] += w[static_cast<std::size_t>(k)];
  }
  Laurent out;
  int low = high;
  for (const auto& [k, v] : terms)
    if (v != cl(0)) {
      low = std::min(low, k);
      break;
    }
  out.low = low;
  out.c.assign(static_cast<std::size_t>(std::max(0, high - low + 1)), 0);
  for (const auto& [k, v] : terms)
    if (k >= low && k <= high) out.c[static_cast<std::size_t>(k - low)] = v;
  return out;
}

// Largest |R_e| / M_e over exponents e <= limit of F(tau^Q, y(tau)), and the
// first exponent where that ratio exceeds tol.
std::pair<double, std::optional<int>> residual(const Grid& f, int q_total, const Laurent& y, int limit, double tol) {
  const int cols = f.columns();
  std::map<int, cl> r;
  std::map<int, long double> mag;
  Laurent pw{0, {1}};
  Laurent apw{0, {1}};
  for (int j = 0; j < cols; ++j) {
    if (j > 0) {
      Laurent next{pw.low + y.low, std::vector<cl>(pw.c.size() + y.c.size() - 1)};
      Laurent anext{pw.low + y.low, std::vector<cl>(pw.c.size() + y.c.size() - 1)};
      for (std::size_t a = 0; a < pw.c.size(); ++a)
        for (std::size_t b = 0; b < y.c.size(); ++b) {
          next.c[a + b] += pw.c[a] * y.c[b];
          anext.c[a + b] += std::abs(apw.c[a]) * std::abs(y.c[b]);
        }
      pw = std::move(next);
      apw = std::move(anext);
    }
    for (int i = 0; i < f.width(j); ++i) {
      const cl a = f.at(j, i);
      if (a == cl(0)) continue;
      for (std::size_t k = 0; k < pw.c.size(); ++k) {
        const int e = q_total * i + pw.low + static_cast<int>(k);
        if (e > limit) break;
        r[e] += a * pw.c[k];
        mag[e] += f.mag(j, i) * std::abs(apw.c[k]);
      }
    }
  }
  double worst = 0.0;
  std::optional<int> first_bad;
  for (const auto& [e, v] : r) {
    const long double m = mag[e];
    const double ratio = m > 0 ? static_cast<double>(std::abs(v) / m) : 0.0;
    worst = std::max(worst, ratio);
    if (ratio > tol && !first_bad) first_bad = e;
  }
  return {worst, first_bad};
}

bool series_less(const PuiseuxSeries& a, const PuiseuxSeries& b) {
  if (a.leading_exponent != b.leading_exponent) return a.leading_exponent < b.leading_exponent;
  const auto ca = a.coefficients.empty() ? std::complex<double>() : a.coefficients[0];
  const auto cb = b.coefficients.empty() ? std::complex<double>() : b.coefficients[0];
  if (ca.real() != cb.real()) return ca.real() < cb.real();
  return ca.imag() < cb.imag();
}

}  // namespace

Rational PuiseuxSeries::exponent(std::size_t k) const {
  const Rational step(mpz_class(static_cast<long>(k)), mpz_class(ramification));
  return at_infinity ? leading_exponent - step : leading_exponent + step;
}

NewtonPolygon newton_polygon(const BivariatePolynomial& p, const ExpansionPoint& point, bool require_exact) {
  if (p.is_zero()) fail(ErrorCode::ZeroPolynomial, "Newton polygon of the zero polynomial");
  if (p.degree_y() < 1) fail(ErrorCode::DegreeTooLow, "polynomial does not involve y");
  ExpansionPoint pt = point;
  if (!pt.infinity && !pt.exact && require_exact) {
    const auto g = GR::recognize(pt.value, 1e-15);
    if (!g) fail(ErrorCode::NonExactCenter, "center is not a Gaussian rational");
    pt = ExpansionPoint::at(*g);
  }
  const Grid g = top_level_grid(p, pt);
  const PuiseuxOptions opt;
  NewtonPolygon out;
  out.numeric = !pt.infinity && !pt.exact;
  out.vertices = lower_hull(g, p.degree_y(), opt.zero_tol);
  if (!out.vertices.empty()) out.zero_branches = out.vertices.front().j;
  for (std::size_t e = 0; e + 1 < out.vertices.size(); ++e) {
    const auto& a = out.vertices[e];
    const auto& b = out.vertices[e + 1];
    Rational slope(mpz_class(a.i - b.i), mpz_class(b.j - a.j));
    if (pt.infinity) slope = -slope;
    out.edges.push_back({slope, b.j - a.j});
  }
  return out;
}

std::vector<PuiseuxSeries> puiseux_expand(const BivariatePolynomial& p, const ExpansionPoint& point,
                                          const Rational& order, const PuiseuxOptions& opt) {
  if (p.is_zero()) fail(ErrorCode::ZeroPolynomial, "expansion of the zero polynomial");
  if (p.degree_y() < 1) fail(ErrorCode::DegreeTooLow, "polynomial does not involve y");
  const Grid top = top_level_grid(p, point);
  Expander ex{opt, {}};
  ex.run(top, p.degree_y(), 0, 1, {}, 0);
  if (static_cast<int>(ex.out.size()) != p.degree_y())
    fail(ErrorCode::NumericBreakdown, "branch count differs from the degree in y");

  std::vector<PuiseuxSeries> series;
  std::vector<long> lows;
  for (const auto& b : ex.out) {
    const int qt = b.q_total;
    const int limit = static_cast<int>((order * Rational(qt)).floor().get_si());
    int lead = limit + 1;
    for (const auto& [k, v] : b.prefix)
      if (v != cl(0)) {
        lead = k;
        break;
      }
    const bool zero_branch = lead > limit && !b.tail && b.prefix.empty();
    if (!zero_branch && lead > limit)
      fail(ErrorCode::OrderTooSmall, "requested order lies below a leading exponent");
    int high = limit;
    Laurent y = assemble(b, high, opt);
    auto [worst, bad] = residual(top, qt, y, limit, opt.residual_tol);
    for (int attempt = 0; attempt < 6 && bad && b.tail; ++attempt) {
      high += std::max(1, limit + 1 - *bad);
      y = assemble(b, high, opt);
      std::tie(worst, bad) = residual(top, qt, y, limit, opt.residual_tol);
    }
    PuiseuxSeries s;
    s.ramification = qt;
    s.at_infinity = point.infinity;
    s.truncation_order = Rational(mpz_class(high), mpz_class(qt));
    s.residual = worst;
    if (zero_branch || y.c.empty()) {
      s.leading_exponent = point.infinity ? -s.truncation_order : s.truncation_order;
    } else {
      const Rational lead_t(mpz_class(y.low), mpz_class(qt));
      s.leading_exponent = point.infinity ? -lead_t : lead_t;
      for (const auto& v : y.c) s.coefficients.emplace_back(static_cast<double>(v.real()), static_cast<double>(v.imag()));
    }
    lows.push_back(y.low);
    series.push_back(std::move(s));
  }

  // Ramification classes: a loop around the point sends tau to tau * exp(2 pi i / Q).
  const std::size_t nb = series.size();
  std::vector<int> image(nb, -1);
  for (std::size_t a = 0; a < nb; ++a) {
    const auto& s = series[a];
    if (s.coefficients.empty()) {
      image[a] = static_cast<int>(a);
      continue;
    }
    const int qt = s.ramification;
    const long low = lows[a];
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t b = 0; b < nb; ++b) {
      const auto& t = series[b];
      if (t.ramification != qt || t.leading_exponent != s.leading_exponent) continue;
      const std::size_t len = std::min(s.coefficients.size(), t.coefficients.size());
      // Coefficients below zero_tol of the series magnitude count as zero.
      double floor = 1e-300;
      for (std::size_t k = 0; k < len; ++k)
        floor = std::max({floor, opt.zero_tol * std::abs(s.coefficients[k]), opt.zero_tol * std::abs(t.coefficients[k])});
      double d = 0.0;
      for (std::size_t k = 0; k < len; ++k) {
        const auto rot = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(low + static_cast<long>(k)) / qt);
        const auto u = s.coefficients[k] * rot;
        const double sc = std::max({std::abs(u), std::abs(t.coefficients[k]), floor});
        d = std::max(d, std::abs(u - t.coefficients[k]) / sc);
      }
      if (d < best) {
        best = d;
        image[a] = static_cast<int>(b);
      }
    }
    if (!(best < 1e-6)) fail(ErrorCode::NumericBreakdown, "conjugate series not found");
  }
  std::vector<int> cycle(nb, -1), length(nb, 0);
  int next_id = 0;
  for (std::size_t a = 0; a < nb; ++a) {
    if (cycle[a] >= 0) continue;
    std::size_t v = a;
    int len = 0;
    while (cycle[v] < 0) {
      cycle[v] = next_id;
      ++len;
      v = static_cast<std::size_t>(image[v]);
    }
    if (v != a) fail(ErrorCode::NumericBreakdown, "conjugation is not a permutation of the branches");
    for (std::size_t b = 0; b < nb; ++b)
      if (cycle[b] == next_id) length[b] = len;
    ++next_id;
  }
  for (std::size_t a = 0; a < nb; ++a) {
    auto& s = series[a];
    s.cycle = cycle[a];
    const int e = length[a];
    if (e == s.ramification || s.coefficients.empty()) continue;
    if (s.ramification % e != 0) fail(ErrorCode::NumericBreakdown, "cycle length does not divide the denominator");
    const int stride = s.ramification / e;
    std::vector<std::complex<double>> c;
    for (std::size_t k = 0; k < s.coefficients.size(); k += static_cast<std::size_t>(stride)) c.push_back(s.coefficients[k]);
    s.coefficients = c;
    s.ramification = e;
  }

  std::vector<std::size_t> idx(nb);
  for (std::size_t a = 0; a < nb; ++a) idx[a] = a;
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return series_less(series[a], series[b]); });
  std::vector<PuiseuxSeries> sorted;
  std::map<int, int> renumber;
  for (std::size_t a : idx) {
    auto s = series[a];
    auto it = renumber.find(s.cycle);
    if (it == renumber.end()) it = renumber.emplace(s.cycle, static_cast<int>(renumber.size())).first;
    s.cycle = it->second;
    sorted.push_back(std::move(s));
  }
  return sorted;
}

std::vector<int> ramification_multiset(const std::vector<PuiseuxSeries>& series) {
  std::map<int, int> sizes;
  for (const auto& s : series) sizes[s.cycle] += 1;
  std::vector<int> out;
  for (const auto& [id, n] : sizes) out.push_back(n);
  std::sort(out.rbegin(), out.rend());
  return out;
}

}  // namespace finitude
