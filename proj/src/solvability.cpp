#include "finitude/solvability.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "finitude/puiseux.hpp"
#include "finitude/rational_function.hpp"
#include "finitude/roots.hpp"

namespace finitude {

namespace {

using C = std::complex<double>;
using RF = RationalFunction;
namespace rad = radical;

long factorial(int n) {
  long f = 1;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

bool is_even(const Perm& p) {
  return (static_cast<int>(p.size()) - static_cast<int>(perm_cycle_type(p).size())) % 2 == 0;
}

std::optional<Perm> find_full_cycle_element(const PermGroup& g) {
  const int n = g.degree();
  std::optional<Perm> found;
  g.for_each_element([&](const Perm& e) {
    if (perm_cycle_type(e) == std::vector<int>{n}) {
      found = e;
      return false;
    }
    return true;
  });
  return found;
}

bool is_dihedral_action(const PermGroup& g, const Perm& sigma) {
  const int n = g.degree();
  if (g.order() != 2 * n || n < 3) return false;
  const Perm inv = perm_inverse(sigma);
  bool ok = false;
  g.for_each_element([&](const Perm& t) {
    if (perm_is_identity(perm_mul(t, t)) && !perm_is_identity(t) &&
        perm_mul(perm_mul(t, sigma), t) == inv) {
      ok = true;
      return false;
    }
    return true;
  });
  return ok;
}

Radical rf_expr(const RF& r) {
  if (r.is_polynomial()) return rad::polynomial(r.numerator());
  return rad::quotient(rad::polynomial(r.numerator()), rad::polynomial(r.denominator()));
}

// Coefficients of sum_j a_j (z + t)^j.
std::vector<RF> shift_coeffs(const std::vector<RF>& a, const RF& t) {
  const std::size_t n = a.size();
  std::vector<RF> out(n, RF(0L));
  for (std::size_t j = 0; j < n; ++j) {
    long binom = 1;
    for (std::size_t i = 0; i <= j; ++i) {
      out[i] += a[j] * RF(binom) * t.pow(static_cast<int>(j - i));
      binom = binom * static_cast<long>(j - i) / static_cast<long>(i + 1);
    }
  }
  return out;
}

// A root of z^3 + p z + q.
Radical depressed_cubic(const RF& p, const RF& q) {
  if (p.is_zero()) return rad::root(3, rf_expr(-q));
  const RF inner = q * q / RF(4L) + p.pow(3) / RF(27L);
  const Radical u = rad::root(3, rad::sum({rf_expr(-q / RF(2L)), rad::root(2, rf_expr(inner))}));
  return rad::difference(u, rad::quotient(rf_expr(p / RF(3L)), u));
}

// A root of the monic cubic with coefficients a[0..3].
Radical monic_cubic(const std::vector<RF>& a) {
  const RF t = -a[2] / RF(3L);
  const auto d = shift_coeffs(a, t);
  return rad::sum({depressed_cubic(d[1], d[0]), rf_expr(t)});
}

Radical monic_quartic(const std::vector<RF>& a) {
  const RF t = -a[3] / RF(4L);
  const auto d = shift_coeffs(a, t);
  const RF& r = d[0];
  const RF& q = d[1];
  const RF& p = d[2];
  Radical z;
  if (q.is_zero()) {
    z = rad::root(2, rad::product({rad::constant(GR(Rational(1, 2))),
                                   rad::sum({rf_expr(-p), rad::root(2, rf_expr(p * p - RF(4L) * r))})}));
  } else {
    const Radical m = monic_cubic({-q * q / RF(8L), p * p / RF(4L) - r, p, RF(1L)});
    const Radical s = rad::root(2, rad::product({rad::constant(GR(2)), m}));
    const Radical inner = rad::sum({rad::product({rad::constant(GR(-2)), m}), rf_expr(RF(-2L) * p),
                                    rad::quotient(rf_expr(RF(-2L) * q), s)});
    z = rad::product({rad::constant(GR(Rational(1, 2))), rad::sum({s, rad::root(2, inner)})});
  }
  return rad::sum({z, rf_expr(t)});
}

// Interpolated polynomial, exact when every coefficient was recognized.
struct Interpolant {
  std::vector<C> values;
  std::optional<Polynomial> exact;
  bool zero = false;

  Radical expr(bool allow_exact) const {
    if (allow_exact && exact) return rad::polynomial(*exact);
    return rad::floating_polynomial(values);
  }
};

Interpolant make_interpolant(std::vector<C> coeffs) {
  Interpolant out;
  double scale = 0.0;
  for (const auto& c : coeffs) scale = std::max(scale, std::abs(c));
  if (scale == 0.0) {
    out.zero = true;
    out.exact = Polynomial();
    return out;
  }
  std::vector<GR> exact;
  bool ok = true;
  for (auto& c : coeffs) {
    if (std::abs(c) <= 1e-10 * scale) {
      c = 0.0;
      exact.push_back(GR(0));
      continue;
    }
    const auto g = GR::recognize(c, 1e-9, 100000);
    if (!g) ok = false;
    else exact.push_back(*g);
  }
  while (!coeffs.empty() && coeffs.back() == 0.0) coeffs.pop_back();
  out.values = coeffs;
  if (ok) out.exact = Polynomial(exact);
  return out;
}

struct CircleSamples {
  std::vector<C> points;
  std::vector<std::vector<C>> fibers;
  double radius = 1.0;
  double angle = 0.0;
};

double angle_gap(double a, double b) {
  double d = std::fmod(std::abs(a - b), 2 * std::numbers::pi);
  return std::min(d, 2 * std::numbers::pi - d);
}

CircleSamples sample_circle(const BivariatePolynomial& p, const MonodromyAction& m, int count,
                            const MonodromyOptions& options) {
  std::vector<C> sing;
  for (const auto& s : m.singular.points) sing.push_back(s.center);
  CircleSamples out;
  double best = -1.0;
  for (int k = 0; k <= 40; ++k) {
    const double r = 0.5 * std::pow(4.0, k / 40.0);
    double gap = 1e300;
    for (const auto& s : sing)
      if (std::abs(s) > 0) gap = std::min(gap, std::abs(std::log(std::abs(s) / r)));
    if (gap > best + 1e-12) {
      best = gap;
      out.radius = r;
    }
  }
  best = -1.0;
  for (int k = 0; k < 360; ++k) {
    const double th = 2 * std::numbers::pi * k / 360.0;
    double gap = 1e300;
    for (const auto& s : sing)
      if (std::abs(s) > 0) gap = std::min(gap, angle_gap(std::arg(s), th));
    if (gap > best + 1e-12) {
      best = gap;
      out.angle = th;
    }
  }
  const C b = m.base_point;
  const double rb = std::abs(b);
  const double b_arg = std::arg(b);
  std::vector<C> path{b};
  const int arc_steps = 64;
  double sweep = out.angle - b_arg;
  while (sweep > std::numbers::pi) sweep -= 2 * std::numbers::pi;
  while (sweep < -std::numbers::pi) sweep += 2 * std::numbers::pi;
  for (int k = 1; k <= arc_steps; ++k) path.push_back(std::polar(rb, b_arg + sweep * k / arc_steps));
  const int radial_steps = 32;
  for (int k = 1; k <= radial_steps; ++k)
    path.push_back(std::polar(rb + (out.radius - rb) * k / radial_steps, out.angle));
  const std::size_t circle_start = path.size() - 1;
  const int per = std::max(1, (256 + count - 1) / count);
  for (int k = 1; k < count * per; ++k)
    path.push_back(std::polar(out.radius, out.angle + 2 * std::numbers::pi * k / (count * per)));
  const auto fibers = track_path(p, path, m.roots, options);
  for (int k = 0; k < count; ++k) {
    const std::size_t idx = circle_start + static_cast<std::size_t>(k * per);
    out.points.push_back(path[idx]);
    out.fibers.push_back(fibers[idx]);
  }
  return out;
}

// Coefficients up to degree bound from values on the sampled circle; throws
// NumericBreakdown when the values are not those of a polynomial of that degree.
// Values negligible against the reference magnitude give the zero polynomial.
std::vector<C> interpolate(const CircleSamples& s, const std::vector<C>& values, int bound, double reference) {
  const int count = static_cast<int>(values.size());
  std::vector<C> coeffs(static_cast<std::size_t>(count));
  double scale = 0.0;
  for (const auto& v : values) scale = std::max(scale, std::abs(v));
  if (scale <= 1e-11 * reference) return std::vector<C>(static_cast<std::size_t>(bound + 1), 0.0);
  for (int j = 0; j < count; ++j) {
    std::complex<long double> acc = 0;
    for (int k = 0; k < count; ++k) {
      const long double ang = -2.0L * std::numbers::pi_v<long double> * j * k / count;
      acc += std::complex<long double>(values[static_cast<std::size_t>(k)].real(),
                                       values[static_cast<std::size_t>(k)].imag()) *
             std::polar(1.0L, ang);
    }
    acc /= static_cast<long double>(count);
    acc *= std::polar(std::pow(static_cast<long double>(s.radius), -j), static_cast<long double>(-j * s.angle));
    coeffs[static_cast<std::size_t>(j)] = C(static_cast<double>(acc.real()), static_cast<double>(acc.imag()));
  }
  for (int j = bound + 1; j < count; ++j)
    if (std::abs(coeffs[static_cast<std::size_t>(j)]) * std::pow(s.radius, j) > 1e-7 * std::max(scale, 1e-300))
fail(ErrorCode::NumericBreakdown, "resolvent values exceed the degree bound");
  coeffs.resize(static_cast<std::size_t>(bound + 1));
  return coeffs;
}

std::vector<C> random_points(double radius, const std::vector<C>& avoid, int count, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-radius, radius);
  std::vector<C> out;
  const double margin = 1e-3 * (1.0 + radius);
  while (static_cast<int>(out.size()) < count) {
    const C x(u(rng), u(rng));
    if (std::abs(x) > radius) continue;
    bool near = false;
    for (const auto& s : avoid) near = near || std::abs(x - s) < margin;
    if (!near) out.push_back(x);
  }
  return out;
}

double nearest_root_error(const BivariatePolynomial& p, C x, C v, int* label = nullptr,
                          const std::vector<C>* fiber_values = nullptr) {
  std::vector<C> roots;
  if (fiber_values) {
    roots = *fiber_values;
  } else {
    const auto coeffs = p.at_x(x);
    std::vector<std::complex<long double>> ld(coeffs.begin(), coeffs.end());
    for (const auto& r : aberth_roots(ld)) roots.emplace_back(static_cast<double>(r.real()), static_cast<double>(r.imag()));
  }
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < roots.size(); ++k) {
    const double e = std::abs(v - roots[k]) / std::max(1.0, std::abs(roots[k]));
    if (e < best) {
      best = e;
      if (label) *label = static_cast<int>(k);
    }
  }
  return std::isfinite(best) ? best : std::numeric_limits<double>::infinity();
}

// Resolvent data along the sampled circle for a labeling by powers of sigma.
struct Resolvents {
  std::vector<std::vector<C>> r;  // r[m][k]
  double fiber_scale = 0.0;
  double unit = 1.0;  // magnitude of lc * y on the circle
  double ref(int degree) const { return std::pow(unit, degree); }
};

Resolvents resolvents(const CircleSamples& s, const std::vector<int>& order, const Polynomial& lc) {
  const int n = static_cast<int>(order.size());
  Resolvents out;
  for (const auto& fib : s.fibers) {
    std::vector<C> rk(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
      C acc = 0.0;
      for (int j = 0; j < n; ++j)
        acc += std::polar(1.0, -2 * std::numbers::pi * j * k / n) * fib[static_cast<std::size_t>(order[static_cast<std::size_t>(j)])];
      rk[static_cast<std::size_t>(k)] = acc / static_cast<double>(n);
    }
    for (const auto& y : fib) out.fiber_scale = std::max(out.fiber_scale, std::abs(y));
    out.r.push_back(rk);
  }
  double cmax = 0.0;
  for (const auto& x : s.points) cmax = std::max(cmax, std::abs(lc.eval(x)));
  out.unit = cmax * std::max(1.0, out.fiber_scale);
  return out;
}

std::vector<int> cycle_order(const Perm& sigma) {
  std::vector<int> order{0};
  for (std::size_t k = 1; k < sigma.size(); ++k) order.push_back(sigma[static_cast<std::size_t>(order.back())]);
  return order;
}

int gcd_int(int a, int b) { return b == 0 ? a : gcd_int(b, a % b); }

struct TowerBuild {
  Radical exact;
  Radical floating;
  bool has_exact = true;
};

TowerBuild cyclic_tower(const BivariatePolynomial& p, const CircleSamples& s, const Perm& sigma, int bound) {
  const int n = p.degree_y();
  const Polynomial& lc = p.leading_y();
  const Radical r0 = rad::quotient(rad::polynomial(-p.y_coeff(n - 1)), rad::polynomial(lc * GR(n)));
  for (int a = 1; a < n; ++a) {
    if (gcd_int(a, n) != 1) continue;
    const auto res = resolvents(s, cycle_order(perm_pow(sigma, a)), lc);
    const std::size_t count = s.points.size();
    double r1max = 0.0;
    for (const auto& rk : res.r) r1max = std::max(r1max, std::abs(rk[1]));
    if (r1max < 1e-7 * std::max(1.0, res.fiber_scale)) continue;
    std::vector<C> av(count);
    for (std::size_t m = 0; m < count; ++m) av[m] = std::pow(lc.eval(s.points[m]) * res.r[m][1], n);
    const Interpolant A = make_interpolant(interpolate(s, av, bound, res.ref(n)));
    std::vector<Interpolant> B;
    for (int k = 2; k < n; ++k) {
      std::vector<C> bv(count);
      for (std::size_t m = 0; m < count; ++m)
        bv[m] = std::pow(lc.eval(s.points[m]), n) * res.r[m][static_cast<std::size_t>(k)] *
                std::pow(res.r[m][1], n - k);
      B.push_back(make_interpolant(interpolate(s, bv, bound, res.ref(n))));
    }
    TowerBuild out;
    for (bool exact : {true, false}) {
      const Radical rho = rad::root(n, A.expr(exact));
      std::vector<Radical> terms{r0, rad::quotient(rho, rad::polynomial(lc))};
      for (int k = 2; k < n; ++k) {
        const Interpolant& bk = B[static_cast<std::size_t>(k - 2)];
        if (bk.zero) continue;
        terms.push_back(rad::quotient(rad::product({bk.expr(exact), rad::power(rho, k)}),
                                      rad::product({A.expr(exact), rad::polynomial(lc.pow(k))})));
      }
      (exact ? out.exact : out.floating) = rad::sum(terms);
    }
    out.has_exact = A.exact.has_value();
    for (const auto& bk : B) out.has_exact = out.has_exact && bk.exact.has_value();
    return out;
  }
  fail(ErrorCode::UnsupportedGroup, "every primitive resolvent vanishes");
}

TowerBuild dihedral_tower(const BivariatePolynomial& p, const CircleSamples& s, const Perm& sigma, int bound) {
  const int n = p.degree_y();
  const Polynomial& lc = p.leading_y();
  const Radical r0 = rad::quotient(rad::polynomial(-p.y_coeff(n - 1)), rad::polynomial(lc * GR(n)));
  const std::size_t count = s.points.size();
  for (int a = 1; 2 * a < n + 1; ++a) {
    if (gcd_int(a, n) != 1) continue;
    const auto res = resolvents(s, cycle_order(perm_pow(sigma, a)), lc);
    const auto r = [&](std::size_t m, int k) { return res.r[m][static_cast<std::size_t>(((k % n) + n) % n)]; };
    double r1max = 0.0;
    double wmax = 0.0;
    double smax = 0.0;
    std::vector<C> p2(count), sn(count), wsq(count);
    for (std::size_t m = 0; m < count; ++m) {
      const C c = lc.eval(s.points[m]);
      const C u = std::pow(c * r(m, 1), n);
      const C v = std::pow(c * r(m, -1), n);
      r1max = std::max(r1max, std::min(std::abs(r(m, 1)), std::abs(r(m, -1))));
      p2[m] = c * c * r(m, 1) * r(m, -1);
      sn[m] = u + v;
      wsq[m] = (u - v) * (u - v);
      wmax = std::max(wmax, std::abs(u - v));
      smax = std::max(smax, std::abs(u) + std::abs(v));
    }
    if (r1max < 1e-7 * std::max(1.0, res.fiber_scale) || wmax < 1e-7 * smax) continue;
    const Interpolant P2 = make_interpolant(interpolate(s, p2, bound, res.ref(2)));
    const Interpolant Sn = make_interpolant(interpolate(s, sn, bound, res.ref(n)));
    const Interpolant Wsq = make_interpolant(interpolate(s, wsq, bound, res.ref(2 * n)));
    std::vector<Interpolant> NU, NVW;
    for (int k = 1; k < n; ++k) {
      std::vector<C> nu(count), nvw(count);
      for (std::size_t m = 0; m < count; ++m) {
        const C c = lc.eval(s.points[m]);
        const C cu = std::pow(c * r(m, 1), n);
        const C cv = std::pow(c * r(m, -1), n);
        const C ck = std::pow(c, k + 1);
        const C plus = r(m, k) * std::pow(r(m, -1), k);
        const C minus = r(m, -k) * std::pow(r(m, 1), k);
        nu[m] = ck * (plus + minus);
        nvw[m] = ck * (plus - minus) * (cu - cv);
      }
      NU.push_back(make_interpolant(interpolate(s, nu, bound, res.ref(k + 1))));
      NVW.push_back(make_interpolant(interpolate(s, nvw, bound, res.ref(k + 1 + n))));
    }
    TowerBuild out;
    for (bool exact : {true, false}) {
      const Radical wr = rad::root(2, Wsq.expr(exact));
      const Radical rho = rad::root(n, rad::product({rad::constant(GR(Rational(1, 2))), rad::sum({Sn.expr(exact), wr})}));
      std::vector<Radical> terms;
      for (int k = 1; k < n; ++k) {
        const Interpolant& nu = NU[static_cast<std::size_t>(k - 1)];
        const Interpolant& nvw = NVW[static_cast<std::size_t>(k - 1)];
        std::vector<Radical> num;
        if (!nu.zero) num.push_back(nu.expr(exact));
        if (!nvw.zero) num.push_back(rad::quotient(nvw.expr(exact), wr));
        if (num.empty()) continue;
        terms.push_back(rad::quotient(rad::product({rad::sum(num), rad::power(rho, k)}),
                                      rad::product({rad::constant(GR(2)), rad::power(P2.expr(exact), k)})));
      }
      (exact ? out.exact : out.floating) =
          rad::sum({r0, rad::quotient(rad::sum(terms), rad::polynomial(lc))});
    }
    out.has_exact = P2.exact && Sn.exact && Wsq.exact;
    for (const auto& v : NU) out.has_exact = out.has_exact && v.exact.has_value();
    for (const auto& v : NVW) out.has_exact = out.has_exact && v.exact.has_value();
    return out;
  }
  fail(ErrorCode::UnsupportedGroup, "dihedral resolvents degenerate");
}

// ceil(factor * n * max(0, h + deg lc)) where h is the largest growth exponent at infinity.
int growth_bound(const BivariatePolynomial& p, int factor) {
  const auto poly = newton_polygon(p, ExpansionPoint::at_infinity());
  Rational h(0);
  bool first = true;
  for (const auto& e : poly.edges) {
    if (first || e.slope > h) h = e.slope;
    first = false;
  }
  Rational e = h + Rational(p.leading_y().degree());
  if (e.sign() < 0) e = Rational(0);
  const Rational total = e * Rational(factor * p.degree_y());
  mpz_class f = total.floor();
  if (!total.is_integer()) f += 1;
  return static_cast<int>(f.get_si());
}

bool is_binomial(const BivariatePolynomial& p) {
  for (int j = 1; j < p.degree_y(); ++j)
    if (!p.y_coeff(j).is_zero()) return false;
  return !p.y_coeff(0).is_zero();
}

std::vector<C> singular_centers(const MonodromyAction& m) {
  std::vector<C> out;
  for (const auto& s : m.singular.points) out.push_back(s.center);
  return out;
}

bool numeric_code(ErrorCode c) {
  switch (c) {
    case ErrorCode::NumericBreakdown:
    case ErrorCode::BasePointTooClose:
    case ErrorCode::PathCollision:
    case ErrorCode::SingularOnPath:
    case ErrorCode::IterationLimitExceeded:
    case ErrorCode::StepSizeUnderflow:
    case ErrorCode::ToleranceAmbiguous:
    case ErrorCode::DegreeTooLarge:
      return true;
    default:
      return false;
  }
}

}  // namespace

GroupWitness describe_group(const PermGroup& g) {
  GroupWitness w;
  w.degree = g.degree();
  w.order = g.order();
  w.generators = g.generators();
  w.solvable = is_solvable(g);
  const int n = g.degree();
  bool all_even = true;
  for (const auto& p : g.generators()) all_even = all_even && is_even(p);
  if (w.order == 1) {
    w.name = "trivial";
  } else if (n <= 20 && w.order == factorial(n)) {
    w.name = "S" + std::to_string(n);
  } else if (n <= 20 && n >= 3 && all_even && w.order == factorial(n) / 2) {
    w.name = "A" + std::to_string(n);
  } else if (w.order == n && g.is_transitive() && find_full_cycle_element(g)) {
    w.name = "C" + std::to_string(n);
  } else if (w.order == 2 * n && g.is_transitive()) {
    const auto sigma = find_full_cycle_element(g);
    w.name = sigma && is_dihedral_action(g, *sigma) ? "D" + std::to_string(n) : "group of order " + w.order.get_str();
  } else {
    w.name = "group of order " + w.order.get_str();
  }
  return w;
}

const char* verdict_status_name(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::Representable:
      return "Representable";
    case VerdictStatus::NotRepresentable:
      return "NotRepresentable";
    case VerdictStatus::Undecided:
      return "Undecided";
  }
  return "Undecided";
}

double max_root_deviation(const BivariatePolynomial& p, const Radical& e, double radius,
                          const std::vector<C>& avoid, int points, unsigned seed) {
  double worst = 0.0;
  for (const auto& x : random_points(radius, avoid, points, seed))
    worst = std::max(worst, nearest_root_error(p, x, radical::evaluate(e, x)));
  return worst;
}

RadicalTower radical_tower(const BivariatePolynomial& input, const TowerOptions& options) {
  const BivariatePolynomial p = input.primitive_part_y();
  return radical_tower(p, monodromy_group(p, options.monodromy), options);
}

RadicalTower radical_tower(const BivariatePolynomial& input, const MonodromyAction& m, const TowerOptions& options) {
  const BivariatePolynomial p = input.primitive_part_y();
  const int n = p.degree_y();
  if (n < 1) fail(ErrorCode::DegreeTooLow, "curve has no y-dependence");
  if (!m.transitive) fail(ErrorCode::ReducibleInput, "monodromy is not transitive");
  const PermGroup& g = m.group;
  if (!is_solvable(g)) fail(ErrorCode::UnsupportedGroup, "monodromy group is not solvable");

  RadicalTower out;
  out.base_point = m.base_point;
  std::vector<RF> a;
  for (int j = 0; j <= n; ++j) a.push_back(RF(p.y_coeff(j), p.leading_y()));

  std::vector<Radical> candidates;
  if (n == 1) {
    out.construction = "linear";
    candidates.push_back(rf_expr(-a[0]));
  } else if (is_binomial(p)) {
    out.construction = "binomial";
    candidates.push_back(rad::root(n, rf_expr(-a[0])));
  } else if (n == 2) {
    out.construction = "quadratic";
    const Polynomial& c2 = p.y_coeff(2);
    const Polynomial& c1 = p.y_coeff(1);
    const Polynomial& c0 = p.y_coeff(0);
    candidates.push_back(rad::quotient(rad::sum({rad::polynomial(-c1), rad::root(2, rad::polynomial(c1 * c1 - GR(4) * c2 * c0))}),
                                       rad::polynomial(GR(2) * c2)));
  } else if (n == 3) {
    out.construction = "cardano";
    candidates.push_back(monic_cubic(a));
  } else if (n == 4) {
    out.construction = "ferrari";
    candidates.push_back(monic_quartic(a));
  } else {
    const auto sigma = find_full_cycle_element(g);
    const bool cyclic = sigma && g.order() == n;
    const bool dihedral = sigma && !cyclic && is_dihedral_action(g, *sigma);
    if (!cyclic && !dihedral)
      fail(ErrorCode::UnsupportedGroup, "solvable monodromy of degree " + std::to_string(n) +
                                            " that is neither cyclic nor dihedral");
    const int bound = growth_bound(p, cyclic ? 1 : 2);
    const int count = std::max(16, 2 * bound + 8);
    const auto samples = sample_circle(p, m, count, options.monodromy);
    const TowerBuild t = cyclic ? cyclic_tower(p, samples, *sigma, bound) : dihedral_tower(p, samples, *sigma, bound);
    out.construction = cyclic ? "cyclic" : "dihedral";
    if (t.has_exact) candidates.push_back(t.exact);
    candidates.push_back(t.floating);
  }

  const auto avoid = singular_centers(m);
  const double radius = std::max(1.0, std::abs(m.base_point));
  for (std::size_t idx = 0; idx < candidates.size(); ++idx) {
    const Radical& e = candidates[idx];
    int label = -1;
    const double base_err = nearest_root_error(p, m.base_point, radical::evaluate(e, m.base_point), &label, &m.roots);
    if (!(base_err <= options.verification_tol)) continue;
    const double err = std::max(base_err, max_root_deviation(p, e, radius, avoid, options.verification_points, options.seed));
    if (!(err <= options.verification_tol)) continue;
    out.expression = e;
    out.root_label = label;
    out.rationalized = !radical::has_floating(e);
    out.points_checked = options.verification_points + 1;
    out.max_error = err;
    return out;
  }
  fail(ErrorCode::NumericBreakdown, "radical expression does not match the tracked roots");
}

Verdict radicals_verdict(const BivariatePolynomial& input, const TowerOptions& options) {
  const BivariatePolynomial p = input.primitive_part_y();
  MonodromyAction m;
  try {
    m = monodromy_group(p, options.monodromy);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::SquareFreeRequired) fail(ErrorCode::ReducibleInput, "curve has a repeated factor in y");
    if (!numeric_code(e.code())) throw;
    Verdict v;
    v.code = e.code();
    v.reason = std::string("monodromy computation failed: ") + e.what();
    return v;
  }
  return radicals_verdict(p, m, options);
}

Verdict radicals_verdict(const BivariatePolynomial& input, const MonodromyAction& m, const TowerOptions& options) {
  const BivariatePolynomial p = input.primitive_part_y();
  Verdict v;
  if (!m.transitive) fail(ErrorCode::ReducibleInput, "monodromy is not transitive: the curve is reducible in y");
  v.group = describe_group(m.group);
  if (!v.group->solvable) {
    v.status = VerdictStatus::NotRepresentable;
    v.reason = "monodromy group " + v.group->name + " of order " + v.group->order.get_str() + " is not solvable";
    try {
      v.factors = composition_factors(m.group);
    } catch (const Error&) {
    }
    return v;
  }
  v.status = VerdictStatus::Representable;
  if (!options.certificate) {
    v.reason = "monodromy group " + v.group->name + " is solvable";
    return v;
  }
  try {
    v.certificate = radical_tower(p, m, options);
    v.reason = "monodromy group " + v.group->name + " is solvable; " + v.certificate->construction + " tower";
    if (!v.certificate->rationalized) v.code = ErrorCode::RationalizationFailed;
  } catch (const Error& e) {
    v.reason = "monodromy group " + v.group->name + " is solvable; tower unavailable: " + e.what();
    v.code = e.code();
  }
  return v;
}

Verdict k_radicals_verdict(const BivariatePolynomial& input, int k, const MonodromyOptions& options) {
  if (k < 1) fail(ErrorCode::InvalidArgument, "k must be at least 1");
  const BivariatePolynomial p = input.primitive_part_y();
  MonodromyAction m;
  try {
    m = monodromy_group(p, options);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::SquareFreeRequired) fail(ErrorCode::ReducibleInput, "curve has a repeated factor in y");
    if (!numeric_code(e.code())) throw;
    Verdict v;
    v.code = e.code();
    v.reason = std::string("monodromy computation failed: ") + e.what();
    return v;
  }
  return k_radicals_verdict(m, k);
}

Verdict k_radicals_verdict(const MonodromyAction& m, int k) {
  if (k < 1) fail(ErrorCode::InvalidArgument, "k must be at least 1");
  if (!m.transitive) fail(ErrorCode::ReducibleInput, "monodromy is not transitive: the curve is reducible in y");
  Verdict v;
  v.group = describe_group(m.group);
  try {
    const KSolvability ks = is_k_solvable(m.group, k);
    v.status = ks.value ? VerdictStatus::Representable : VerdictStatus::NotRepresentable;
    v.factors = ks.witness;
    v.reason = ks.reason.empty() ? std::string(ks.value ? "monodromy group is " : "monodromy group is not ") +
                                       std::to_string(k) + "-solvable"
                                 : ks.reason;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::SearchBudgetExceeded) throw;
    v.status = VerdictStatus::Undecided;
    v.code = e.code();
    v.reason = e.what();
  }
  return v;
}

}  // namespace finitude
