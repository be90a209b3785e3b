#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "finitude/bivariate.hpp"
#include "finitude/number.hpp"

namespace finitude {

/// Where to expand: an exact Gaussian rational point, a numeric point, or
/// infinity (handled through x = 1/t).
struct ExpansionPoint {
  bool infinity = false;
  std::optional<GR> exact;
  std::complex<double> value;

  static ExpansionPoint at(const GR& x0) { return {false, x0, x0.to_complex()}; }
  static ExpansionPoint numeric(std::complex<double> x0) { return {false, std::nullopt, x0}; }
  static ExpansionPoint at_infinity() { return {true, std::nullopt, {}}; }
};

/// Support point: local x-order i (order in t = 1/x at infinity) and y-degree j.
struct PolygonVertex {
  int i = 0;
  int j = 0;
};

/// Branches on an edge behave like y ~ c x^slope (slope in x, so negative
/// slopes at a finite point are poles). Length counts branches.
struct PolygonEdge {
  Rational slope;
  int length = 0;
};

struct NewtonPolygon {
  std::vector<PolygonVertex> vertices;
  std::vector<PolygonEdge> edges;
  bool numeric = false;    // recentered in floating point
  int zero_branches = 0;   // branches y == 0 when y divides P
};

/// Throws NonExactCenter when require_exact is set and the point is numeric
/// and not recognizably Gaussian rational.
NewtonPolygon newton_polygon(const BivariatePolynomial& p, const ExpansionPoint& point,
                             bool require_exact = false);

struct PuiseuxSeries {
  int ramification = 1;
  bool at_infinity = false;
  Rational leading_exponent;  // exponent of x of coefficients[0]
  std::vector<std::complex<double>> coefficients;  // steps of 1/ramification, ascending in the local parameter
  Rational truncation_order;  // in the local parameter: x - x0, or t = 1/x at infinity
  int cycle = -1;             // ramification class id
  double residual = 0.0;      // largest relative residual coefficient up to the requested order

  /// Exponent of x carried by coefficients[k].
  Rational exponent(std::size_t k) const;
};

struct PuiseuxOptions {
  double zero_tol = 1e-9;       // coefficient treated as zero below this fraction of its magnitude
  double cluster_tol = 1e-5;    // edge-polynomial roots closer than this are one repeated root
  double residual_tol = 1e-10;
  double condition_limit = 1e10;
  int max_depth = 8;
};

/// All deg_y P branches at the point. Terms run through at least `order`
/// in the local parameter, extended when needed so the residual vanishes
/// through `order`. Throws OrderTooSmall, NumericBreakdown.
std::vector<PuiseuxSeries> puiseux_expand(const BivariatePolynomial& p, const ExpansionPoint& point,
                                          const Rational& order, const PuiseuxOptions& options = {});

/// Cycle lengths of the ramification classes, descending.
std::vector<int> ramification_multiset(const std::vector<PuiseuxSeries>& series);

}  // namespace finitude
