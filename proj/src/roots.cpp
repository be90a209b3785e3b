#include "finitude/roots.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>

#include "finitude/error.hpp"

namespace finitude {

namespace {

using cld = std::complex<long double>;

std::vector<cld> companion_seeds(const std::vector<cld>& c) {
  const int n = static_cast<int>(c.size()) - 1;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  const std::complex<double> lc(static_cast<double>(c[n].real()), static_cast<double>(c[n].imag()));
  for (int i = 1; i < n; ++i) m(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) {
    std::complex<double> ci(static_cast<double>(c[i].real()), static_cast<double>(c[i].imag()));
    m(i, n - 1) = -ci / lc;
  }
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(m, false);
  std::vector<cld> seeds(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    std::complex<double> e = es.info() == Eigen::Success ? es.eigenvalues()(i)
                                                         : std::polar(1.0, 2.0 * M_PI * (i + 0.25) / n);
    seeds[static_cast<std::size_t>(i)] = cld(e.real(), e.imag());
  }
  // Break exact coincidences so the Aberth correction is defined.
  for (std::size_t i = 0; i < seeds.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (std::abs(seeds[i] - seeds[j]) < 1e-14L * (1 + std::abs(seeds[i])))
        seeds[i] += cld(1e-8L * (i + 1), 1e-8L * static_cast<long double>(j + 1));
  return seeds;
}

void eval_with_derivative(const std::vector<cld>& c, cld z, cld& p, cld& dp) {
  p = 0;
  dp = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    dp = dp * z + p;
    p = p * z + *it;
  }
}

// Running-error bound for Horner evaluation in long double.
long double horner_error(const std::vector<cld>& c, cld z) {
  long double az = std::abs(z), acc = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * az + std::abs(*it);
  return 4.0L * static_cast<long double>(c.size()) * std::numeric_limits<long double>::epsilon() * acc;
}

bool by_center(const RootCluster& a, const RootCluster& b) {
  if (a.interval.center.real() != b.interval.center.real())
    return a.interval.center.real() < b.interval.center.real();
  return a.interval.center.imag() < b.interval.center.imag();
}

// Complex numbers over mpf_class for refining badly conditioned clusters.
struct MpComplex {
  mpf_class re, im;
};

constexpr unsigned kRefineBits = 320;

mpf_class mpf(long double v) {
  mpf_class out(0, kRefineBits);
  out = static_cast<double>(v);
  out += static_cast<double>(v - static_cast<long double>(static_cast<double>(v)));
  return out;
}

MpComplex mp_mul(const MpComplex& a, const MpComplex& b) {
  MpComplex out{mpf_class(0, kRefineBits), mpf_class(0, kRefineBits)};
  out.re = a.re * b.re - a.im * b.im;
  out.im = a.re * b.im + a.im * b.re;
  return out;
}

MpComplex mp_div(const MpComplex& a, const MpComplex& b) {
  mpf_class d(b.re * b.re + b.im * b.im, kRefineBits);
  MpComplex out{mpf_class(0, kRefineBits), mpf_class(0, kRefineBits)};
  out.re = (a.re * b.re + a.im * b.im) / d;
  out.im = (a.im * b.re - a.re * b.im) / d;
  return out;
}

double mp_abs(const MpComplex& a) {
  mpf_class n(a.re * a.re + a.im * a.im, kRefineBits);
  return std::sqrt(n.get_d());
}

// Weierstrass iteration at high precision; returns refined centers and the
// inclusion radii n * |W_i| plus the representation error of the centers.
void refine_cluster(const Polynomial& factor, std::vector<cld>& z, std::vector<double>& radius) {
  const int n = factor.degree();
  std::vector<MpComplex> c;
  for (const auto& g : factor.coeffs())
    c.push_back({mpf_class(g.re().value(), kRefineBits), mpf_class(g.im().value(), kRefineBits)});
  std::vector<MpComplex> w;
  for (const auto& v : z) w.push_back({mpf(v.real()), mpf(v.imag())});
  std::vector<MpComplex> corr(static_cast<std::size_t>(n));
  auto corrections = [&] {
    for (int i = 0; i < n; ++i) {
      MpComplex val{c[static_cast<std::size_t>(n)].re, c[static_cast<std::size_t>(n)].im};
      for (int k = n - 1; k >= 0; --k) {
        val = mp_mul(val, w[static_cast<std::size_t>(i)]);
        val.re += c[static_cast<std::size_t>(k)].re;
        val.im += c[static_cast<std::size_t>(k)].im;
      }
      MpComplex den{c[static_cast<std::size_t>(n)].re, c[static_cast<std::size_t>(n)].im};
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        MpComplex diff{mpf_class(w[static_cast<std::size_t>(i)].re - w[static_cast<std::size_t>(j)].re, kRefineBits),
                       mpf_class(w[static_cast<std::size_t>(i)].im - w[static_cast<std::size_t>(j)].im, kRefineBits)};
        den = mp_mul(den, diff);
      }
      corr[static_cast<std::size_t>(i)] = mp_div(val, den);
    }
  };
  for (int it = 0; it < 12; ++it) {
    corrections();
    double largest = 0;
    for (int i = 0; i < n; ++i) {
      w[static_cast<std::size_t>(i)].re -= corr[static_cast<std::size_t>(i)].re;
      w[static_cast<std::size_t>(i)].im -= corr[static_cast<std::size_t>(i)].im;
      largest = std::max(largest, mp_abs(corr[static_cast<std::size_t>(i)]));
    }
    if (largest < 1e-60) break;
  }
  corrections();
  radius.assign(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < n; ++i) {
    const auto& wi = w[static_cast<std::size_t>(i)];
    z[static_cast<std::size_t>(i)] = cld(static_cast<long double>(wi.re.get_d()), static_cast<long double>(wi.im.get_d()));
    const double rep = std::abs(std::complex<double>(mpf_class(wi.re - wi.re.get_d()).get_d(),
                                                     mpf_class(wi.im - wi.im.get_d()).get_d()));
    radius[static_cast<std::size_t>(i)] = n * mp_abs(corr[static_cast<std::size_t>(i)]) * (1 + 1e-12) + 1e-70 + rep;
  }
}

}  // namespace

std::vector<cld> aberth_roots(const std::vector<cld>& coeffs, int max_iterations) {
  std::vector<cld> c = coeffs;
  while (!c.empty() && c.back() == cld(0)) c.pop_back();
  if (c.empty()) fail(ErrorCode::ZeroPolynomial, "roots of the zero polynomial");
  const int n = static_cast<int>(c.size()) - 1;
  if (n == 0) return {};
  if (n == 1) return {-c[0] / c[1]};
  std::vector<cld> z = companion_seeds(c);
  std::vector<bool> done(static_cast<std::size_t>(n), false);
  const long double eps = std::numeric_limits<long double>::epsilon();
  for (int it = 0; it < max_iterations; ++it) {
    bool all_done = true;
    for (int i = 0; i < n; ++i) {
      if (done[i]) continue;
      cld p, dp;
      eval_with_derivative(c, z[i], p, dp);
      if (std::abs(p) <= horner_error(c, z[i])) {
        done[i] = true;
        continue;
      }
      cld s = 0;
      for (int j = 0; j < n; ++j)
        if (j != i) s += cld(1) / (z[i] - z[j]);
      cld w = p / dp;
      cld step = w / (cld(1) - w * s);
      if (!std::isfinite(std::abs(step))) step = w;
      z[i] -= step;
      if (std::abs(step) <= 4 * eps * std::max<long double>(1, std::abs(z[i]))) done[i] = true;
      else all_done = false;
    }
    if (all_done) break;
  }
  return z;
}

std::vector<RootCluster> distinct_roots(const Polynomial& p, double tol) {
  if (p.is_zero()) fail(ErrorCode::ZeroPolynomial, "roots of the zero polynomial");
  std::vector<RootCluster> out;
  if (p.degree() == 0) return out;
  for (const auto& [factor, mult] : squarefree_factorization(p)) {
    const std::vector<cld> c = factor.to_complex_ld();
    std::vector<cld> z = aberth_roots(c);
    const int n = factor.degree();
    const bool real = factor.has_real_coeffs();
    std::vector<cld> refined;
    std::vector<double> refined_radius;
    auto sep_of = [&](int i) {
      long double best = std::numeric_limits<long double>::infinity();
      for (int j = 0; j < n; ++j)
        if (j != i) best = std::min(best, std::abs(z[i] - z[j]));
      return static_cast<double>(best);
    };
    for (int i = 0; i < n; ++i) {
      cld prod = c[n];
      for (int j = 0; j < n; ++j)
        if (j != i) prod *= (z[i] - z[j]);
      cld val, dval;
      eval_with_derivative(c, z[i], val, dval);
      long double r = static_cast<long double>(n) * (std::abs(val) + horner_error(c, z[i])) / std::abs(prod);
      if (!std::isfinite(r)) r = std::numeric_limits<long double>::infinity();
      std::complex<double> center(static_cast<double>(z[i].real()), static_cast<double>(z[i].imag()));
      double radius = static_cast<double>(r) +
                      static_cast<double>(std::abs(z[i] - cld(center.real(), center.imag())));
      radius = std::max(radius, 4 * std::numeric_limits<double>::epsilon() * std::abs(center));
      if (!(radius <= tol) || !(radius < 1e-3 * sep_of(i))) {
        if (refined.empty()) {
          refined = z;
          refine_cluster(factor, refined, refined_radius);
        }
        center = std::complex<double>(static_cast<double>(refined[i].real()), static_cast<double>(refined[i].imag()));
        radius = std::max(refined_radius[static_cast<std::size_t>(i)],
                          std::abs(std::complex<double>(static_cast<double>(refined[i].real()) - center.real(),
                                                        static_cast<double>(refined[i].imag()) - center.imag())));
      }
      if (real && std::abs(center.imag()) <= radius) center.imag(0.0);
      out.push_back({{center, radius}, mult});
    }
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (!(out[i].interval.radius <= tol))
      fail(ErrorCode::IterationLimitExceeded,
           "root enclosure radius " + std::to_string(out[i].interval.radius) + " exceeds tolerance");
    for (std::size_t j = 0; j < i; ++j)
      if (!out[i].interval.disjoint(out[j].interval))
        fail(ErrorCode::IterationLimitExceeded, "root enclosures overlap");
  }
  std::sort(out.begin(), out.end(), by_center);
  return out;
}

std::vector<ComplexInterval> complex_roots(const Polynomial& p, double tol) {
  std::vector<ComplexInterval> out;
  for (const auto& rc : distinct_roots(p, tol))
    for (int k = 0; k < rc.multiplicity; ++k) out.push_back(rc.interval);
  return out;
}

std::vector<std::pair<GR, int>> gaussian_rational_roots(const Polynomial& p) {
  if (p.is_zero()) fail(ErrorCode::ZeroPolynomial, "roots of the zero polynomial");
  std::vector<std::pair<GR, int>> out;
  for (const auto& [factor, mult] : squarefree_factorization(p)) {
    Polynomial f = factor;
    for (const auto& z : aberth_roots(f.to_complex_ld())) {
      std::complex<double> zd(static_cast<double>(z.real()), static_cast<double>(z.imag()));
      auto g = GR::recognize(zd, 1e-9);
      if (!g || !f(*g).is_zero()) continue;
      bool seen = false;
      for (const auto& [r, m] : out)
        if (r == *g) seen = true;
      if (!seen) out.emplace_back(*g, mult);
    }
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return canonical_less(a.first, b.first); });
  return out;
}

}  // namespace finitude
