#pragma once

#include <complex>
#include <vector>

#include "finitude/polynomial.hpp"

namespace finitude {

/// Closed disk {z : |z - center| <= radius}.
struct ComplexInterval {
  std::complex<double> center;
  double radius = 0.0;

  bool contains(std::complex<double> z) const { return std::abs(z - center) <= radius; }
  bool disjoint(const ComplexInterval& o) const {
    return std::abs(center - o.center) > radius + o.radius;
  }
  ComplexInterval operator+(const ComplexInterval& o) const {
    return {center + o.center, radius + o.radius};
  }
  ComplexInterval operator*(const ComplexInterval& o) const {
    return {center * o.center,
            std::abs(center) * o.radius + std::abs(o.center) * radius + radius * o.radius};
  }
};

struct RootCluster {
  ComplexInterval interval;
  int multiplicity = 1;
};

/// Certified enclosures of the distinct roots of p, each with its multiplicity.
/// Intervals are pairwise disjoint and each radius is <= tol. Ordered by
/// (re, im) of the center.
std::vector<RootCluster> distinct_roots(const Polynomial& p, double tol = 1e-12);

/// deg p enclosures, a root of multiplicity m appearing m times.
std::vector<ComplexInterval> complex_roots(const Polynomial& p, double tol = 1e-12);

/// Uncertified simultaneous (Aberth) iteration on a polynomial with complex
/// coefficients given lowest degree first. Seeds come from the companion
/// matrix eigenvalues. Multiple roots converge, but only linearly.
std::vector<std::complex<long double>> aberth_roots(const std::vector<std::complex<long double>>& coeffs,
                                                    int max_iterations = 500);

}  // namespace finitude
