#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <numbers>
#include <random>

#include "finitude/error.hpp"
#include "finitude/monodromy.hpp"
#include "finitude/parser.hpp"
#include "finitude/puiseux.hpp"

using namespace finitude;
using C = std::complex<double>;

namespace {

BivariatePolynomial curve(const std::string& text) { return parse_bivariate(text); }

Rational rat(long a, long b = 1) { return Rational(mpz_class(a), mpz_class(b)); }

// Generalized binomial coefficient binom(a, k) in floating point.
double gbinom(double a, int k) {
  double r = 1.0;
  for (int t = 0; t < k; ++t) r *= (a - t) / (t + 1);
  return r;
}

// Random curve with small integer coefficients, degree n in y and 2 in x.
BivariatePolynomial random_curve(std::mt19937& rng, int n) {
  std::uniform_int_distribution<int> coef(-4, 4);
  std::vector<Polynomial> ys;
  for (int j = 0; j <= n; ++j) {
    std::vector<GR> c{GR(coef(rng)), GR(coef(rng)), GR(coef(rng))};
    if (j == n) c = {GR(1 + std::abs(coef(rng)))};
    ys.push_back(Polynomial(c));
  }
  return BivariatePolynomial(ys);
}

}  // namespace

TEST_CASE("Newton polygon examples") {
  const auto a = newton_polygon(curve("y^2 - x"), ExpansionPoint::at(GR(0)));
  REQUIRE(a.edges.size() == 1);
  CHECK(a.edges[0].slope == rat(1, 2));
  CHECK(a.edges[0].length == 2);
  CHECK(a.vertices.front().i == 1);
  CHECK(a.vertices.front().j == 0);
  CHECK(a.vertices.back().i == 0);
  CHECK(a.vertices.back().j == 2);
  CHECK_FALSE(a.numeric);

  const auto b = newton_polygon(curve("y^3 - x^2"), ExpansionPoint::at(GR(0)));
  REQUIRE(b.edges.size() == 1);
  CHECK(b.edges[0].slope == rat(2, 3));
  CHECK(b.edges[0].length == 3);

  const auto c = newton_polygon(curve("y^5 + y - x"), ExpansionPoint::at_infinity());
  REQUIRE(c.edges.size() == 1);
  CHECK(c.edges[0].slope == rat(1, 5));
  CHECK(c.edges[0].length == 5);
}

TEST_CASE("polygon lengths add up to the degree and slopes are monotone") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    const auto p = random_curve(rng, 2 + trial % 4);
    for (const auto& pt : {ExpansionPoint::at(GR(0)), ExpansionPoint::at(GR(1, 1)), ExpansionPoint::at_infinity()}) {
      const auto poly = newton_polygon(p, pt);
      int total = poly.zero_branches;
      for (std::size_t e = 0; e < poly.edges.size(); ++e) {
        total += poly.edges[e].length;
        if (e > 0) {
          if (pt.infinity) CHECK(poly.edges[e].slope > poly.edges[e - 1].slope);
          else CHECK(poly.edges[e].slope < poly.edges[e - 1].slope);
        }
      }
      CHECK(total == p.degree_y());
    }
  }
}

TEST_CASE("exact recentering at an irrational point is rejected") {
  try {
    newton_polygon(curve("y^2 - x"), ExpansionPoint::numeric(C(std::sqrt(2.0), 0)), true);
    FAIL("expected failure");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonExactCenter);
  }
  const auto poly = newton_polygon(curve("y^2 - x^2 + 2"), ExpansionPoint::numeric(C(std::sqrt(2.0), 0)));
  CHECK(poly.numeric);
  REQUIRE(poly.edges.size() == 1);
  CHECK(poly.edges[0].slope == rat(1, 2));
}

TEST_CASE("square root branches") {
  const auto s = puiseux_expand(curve("y^2 - x"), ExpansionPoint::at(GR(0)), rat(3));
  REQUIRE(s.size() == 2);
  for (const auto& b : s) {
    CHECK(b.ramification == 2);
    CHECK(b.leading_exponent == rat(1, 2));
    CHECK(std::abs(std::abs(b.coefficients[0]) - 1.0) < 1e-15);
    for (std::size_t k = 1; k < b.coefficients.size(); ++k) CHECK(std::abs(b.coefficients[k]) < 1e-15);
    CHECK(b.truncation_order >= rat(3));
  }
  CHECK(s[0].coefficients[0].real() == doctest::Approx(-1.0));
  CHECK(s[1].coefficients[0].real() == doctest::Approx(1.0));
  CHECK(ramification_multiset(s) == std::vector<int>{2});
}

TEST_CASE("binomial series for the square root of 1 + x") {
  const auto s = puiseux_expand(curve("y^2 - (1 + x)"), ExpansionPoint::at(GR(0)), rat(6));
  REQUIRE(s.size() == 2);
  for (const auto& b : s) {
    CHECK(b.ramification == 1);
    CHECK(b.leading_exponent == rat(0));
    const double sign = b.coefficients[0].real() > 0 ? 1.0 : -1.0;
    for (int k = 0; k <= 6; ++k)
      CHECK(std::abs(b.coefficients[static_cast<std::size_t>(k)] - C(sign * gbinom(0.5, k), 0)) < 1e-14);
  }
  CHECK(ramification_multiset(s) == std::vector<int>{1, 1});
}

TEST_CASE("cyclic branching of the n-th root") {
  for (int n = 2; n <= 7; ++n) {
    const auto s = puiseux_expand(curve("y^" + std::to_string(n) + " - x"), ExpansionPoint::at(GR(0)), rat(1));
    REQUIRE(static_cast<int>(s.size()) == n);
    std::vector<C> leads;
    for (const auto& b : s) {
      CHECK(b.ramification == n);
      CHECK(b.leading_exponent == rat(1, n));
      CHECK(std::abs(std::pow(b.coefficients[0], n) - 1.0) < 1e-13);
      leads.push_back(b.coefficients[0]);
    }
    for (std::size_t a = 0; a < leads.size(); ++a)
      for (std::size_t b = 0; b < a; ++b) CHECK(std::abs(leads[a] - leads[b]) > 0.1);
    CHECK(ramification_multiset(s) == std::vector<int>{n});
  }
}

TEST_CASE("expansion at infinity by Lagrange inversion") {
  // y^5 + y = x gives y = u - u^-3/5 + ... with u = x^(1/5).
  const auto s = puiseux_expand(curve("y^5 + y - x"), ExpansionPoint::at_infinity(), rat(1));
  REQUIRE(s.size() == 5);
  for (const auto& b : s) {
    CHECK(b.at_infinity);
    CHECK(b.ramification == 5);
    CHECK(b.leading_exponent == rat(1, 5));
    const C c = b.coefficients[0];
    CHECK(std::abs(std::pow(c, 5) - 1.0) < 1e-13);
    REQUIRE(b.coefficients.size() > 4);
    CHECK(b.exponent(4) == rat(-3, 5));
    CHECK(std::abs(b.coefficients[4] - (-std::pow(c, -3) / 5.0)) < 1e-13);
    CHECK(b.residual <= 1e-10);
  }
  CHECK(ramification_multiset(s) == std::vector<int>{5});
}

TEST_CASE("pole branches at a root of the leading coefficient") {
  const auto s = puiseux_expand(curve("x*y^2 - 1"), ExpansionPoint::at(GR(0)), rat(2));
  REQUIRE(s.size() == 2);
  for (const auto& b : s) {
    CHECK(b.leading_exponent == rat(-1, 2));
    CHECK(b.ramification == 2);
    CHECK(b.residual <= 1e-12);
  }
}

TEST_CASE("repeated initial term resolved by recursion") {
  // (y - x^2)^2 = x^5 gives y = x^2 +- x^(5/2).
  const auto s = puiseux_expand(curve("(y - x^2)^2 - x^5"), ExpansionPoint::at(GR(0)), rat(4));
  REQUIRE(s.size() == 2);
  for (const auto& b : s) {
    CHECK(b.ramification == 2);
    CHECK(b.leading_exponent == rat(2));
    CHECK(std::abs(b.coefficients[0] - 1.0) < 1e-14);
    CHECK(std::abs(std::abs(b.coefficients[1]) - 1.0) < 1e-14);
  }
  CHECK(ramification_multiset(s) == std::vector<int>{2});
}

TEST_CASE("exact zero branch") {
  const auto s = puiseux_expand(curve("y*(y - 1 - x)"), ExpansionPoint::at(GR(0)), rat(3));
  REQUIRE(s.size() == 2);
  int zero = 0;
  for (const auto& b : s)
    if (b.coefficients.empty()) ++zero;
  CHECK(zero == 1);
}

TEST_CASE("order below the leading exponent is rejected") {
  try {
    puiseux_expand(curve("y^2 - x"), ExpansionPoint::at(GR(0)), rat(1, 4));
    FAIL("expected failure");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::OrderTooSmall);
  }
}

TEST_CASE("residuals vanish through the requested order") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    const auto p = random_curve(rng, 2 + trial % 4);
    for (const auto& pt : {ExpansionPoint::at(GR(0)), ExpansionPoint::at(GR(Rational(1), Rational(-2))),
                           ExpansionPoint::at_infinity()}) {
      std::vector<PuiseuxSeries> s;
      try {
        s = puiseux_expand(p, pt, rat(3));
      } catch (const Error& e) {
        if (e.code() == ErrorCode::OrderTooSmall) continue;
        FAIL(std::string(e.what()));
      }
      CHECK(static_cast<int>(s.size()) == p.degree_y());
      int total = 0;
      for (int e : ramification_multiset(s)) total += e;
      CHECK(total == p.degree_y());
      for (const auto& b : s) CHECK(b.residual <= 1e-10);
    }
  }
}

TEST_CASE("ramification matches local monodromy") {
  std::mt19937 rng(2024);
  int points_checked = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const auto p = random_curve(rng, 2 + trial % 4);
    MonodromyAction m;
    try {
      m = monodromy_group(p);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::SquareFreeRequired) continue;
      FAIL(std::string(e.what()));
    }
    for (std::size_t i = 0; i < m.loops.size(); ++i) {
      const auto center = m.singular.points[static_cast<std::size_t>(m.loops[i].encircled)].center;
      const auto s = puiseux_expand(p.primitive_part_y(), ExpansionPoint::numeric(center), rat(2));
      CHECK(ramification_multiset(s) == perm_cycle_type(m.generators[i]));
      for (const auto& b : s) CHECK(b.residual <= 1e-10);
      ++points_checked;
    }
  }
  CHECK(points_checked > 40);
}

TEST_CASE("vanishing coefficients do not block conjugate matching at numeric centers") {
  const auto p = curve("5*y^2 - 4*x^2*y - x - 4");
  const auto m = monodromy_group(p);
  for (std::size_t i = 0; i < m.loops.size(); ++i) {
    const auto center = m.singular.points[static_cast<std::size_t>(m.loops[i].encircled)].center;
    const auto s = puiseux_expand(p, ExpansionPoint::numeric(center), rat(3));
    CHECK(ramification_multiset(s) == perm_cycle_type(m.generators[i]));
  }
}
