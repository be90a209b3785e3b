#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "finitude/bivariate.hpp"
#include "finitude/error.hpp"
#include "finitude/parser.hpp"
#include "finitude/roots.hpp"

using namespace finitude;

namespace {

// Determinant of an exact matrix by cofactor expansion (independent of Bareiss).
GR cofactor_det(const std::vector<std::vector<GR>>& m) {
  const std::size_t n = m.size();
  if (n == 1) return m[0][0];
  GR acc(0);
  for (std::size_t c = 0; c < n; ++c) {
    if (m[0][c].is_zero()) continue;
    std::vector<std::vector<GR>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<GR> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(m[r][k]);
      minor.push_back(row);
    }
    GR term = m[0][c] * cofactor_det(minor);
    acc += (c % 2 == 0) ? term : -term;
  }
  return acc;
}

// Sylvester determinant of two univariate polynomials, P rows first.
GR sylvester_oracle(const Polynomial& p, const Polynomial& q) {
  const int m = p.degree(), n = q.degree();
  const int size = m + n;
  std::vector<std::vector<GR>> mat(static_cast<std::size_t>(size), std::vector<GR>(size));
  for (int r = 0; r < n; ++r)
    for (int k = 0; k <= m; ++k) mat[r][r + k] = p.coeff(m - k);
  for (int r = 0; r < m; ++r)
    for (int k = 0; k <= n; ++k) mat[n + r][r + k] = q.coeff(n - k);
  return cofactor_det(mat);
}

Rational random_rational(std::mt19937& rng, int span = 9) {
  std::uniform_int_distribution<int> num(-span, span), den(1, 5);
  return Rational(num(rng)) / Rational(den(rng));
}

GR random_gr(std::mt19937& rng) { return GR(random_rational(rng), random_rational(rng)); }

BivariatePolynomial random_bivariate(std::mt19937& rng, int dy, int dx) {
  std::vector<Polynomial> c;
  for (int j = 0; j <= dy; ++j) {
    std::vector<GR> xs;
    for (int i = 0; i <= dx; ++i) xs.push_back(GR(random_rational(rng)));
    c.emplace_back(xs);
  }
  if (c.back().is_zero()) c.back() = Polynomial(GR(1));
  return BivariatePolynomial(c);
}

}  // namespace

TEST_CASE("field arithmetic is exact") {
  std::mt19937 rng(7);
  for (int t = 0; t < 1000; ++t) {
    Rational a = random_rational(rng, 1000), b = random_rational(rng, 1000);
    CHECK((a + b) - b == a);
    if (!b.is_zero()) CHECK((a * b) / b == a);
    GR ga = random_gr(rng), gb = random_gr(rng);
    CHECK((ga + gb) - gb == ga);
    if (!gb.is_zero()) CHECK((ga * gb) / gb == ga);
    CHECK(ga.conj().conj() == ga);
  }
}

TEST_CASE("rational normalization and square roots") {
  Rational r = Rational(6) / Rational(-4);
  CHECK(r.numerator() == -3);
  CHECK(r.denominator() == 2);
  CHECK(Rational::from_string("9/4").sqrt().value() == Rational(3) / Rational(2));
  CHECK_FALSE(Rational(2).sqrt().has_value());
  auto s = GR(Rational(-3), Rational(4)).sqrt();  // (1 + 2i)^2 = -3 + 4i
  REQUIRE(s.has_value());
  CHECK(*s * *s == GR(Rational(-3), Rational(4)));
  CHECK(GR::recognize({0.5, -0.75}, 1e-12).value() == GR(Rational(1) / Rational(2), Rational(-3) / Rational(4)));
}

TEST_CASE("parser builds bivariate and rational values") {
  BivariatePolynomial p = parse_bivariate("y^5 + y - x");
  CHECK(p.degree_y() == 5);
  CHECK(p.degree_x() == 1);
  RationalFunction f = parse_rational_function("1/(x^2-1)");
  CHECK(f.numerator() == Polynomial(GR(1)));
  CHECK(f.denominator() == parse_polynomial("x^2 - 1"));
  CHECK(parse_polynomial("-x^2") == Polynomial::monomial(GR(-1), 2));
  CHECK(parse_rational_function("x^-2") == RationalFunction(Polynomial(GR(1)), Polynomial::monomial(GR(1), 2)));
  CHECK(parse_polynomial("(1+2*I)*x").coeff(1) == GR(Rational(1), Rational(2)));
  CHECK(parse_bivariate("y^2 - 1/x") == parse_bivariate("x*y^2 - 1"));
}

TEST_CASE("parser errors") {
  try {
    parse_bivariate("y^");
    FAIL("expected a syntax error");
  } catch (const SyntaxError& e) {
    CHECK(e.position() == 2);
  }
  CHECK_THROWS_WITH_AS(parse_bivariate("y + z"), doctest::Contains("undeclared"), Error);
  try {
    parse_bivariate("y^-1 + x");
    FAIL("expected an exponent error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonPolynomialExponent);
  }
  try {
    parse_polynomial("x^(1/2)");
    FAIL("expected an exponent error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonPolynomialExponent);
  }
  CHECK_THROWS_AS(parse_bivariate("(x+1"), SyntaxError);
  CHECK_THROWS_AS(parse_bivariate("x y"), SyntaxError);
}

TEST_CASE("printing round-trips through the parser") {
  std::mt19937 rng(11);
  for (int t = 0; t < 200; ++t) {
    BivariatePolynomial p = random_bivariate(rng, 3, 3);
    if (t % 3 == 0) p = p.scaled(Polynomial(GR(Rational(1), Rational(2))));
    CAPTURE(p.to_string());
    CHECK(parse_bivariate(p.to_string()) == p);
    std::vector<GR> nc, dc;
    for (int k = 0; k < 4; ++k) nc.push_back(random_gr(rng));
    for (int k = 0; k < 3; ++k) dc.push_back(random_gr(rng));
    dc.push_back(GR(1));
    RationalFunction f{Polynomial(nc), Polynomial(dc)};
    CAPTURE(f.to_string());
    CHECK(parse_rational_function(f.to_string()) == f);
  }
}

TEST_CASE("resultant examples") {
  BivariatePolynomial y = BivariatePolynomial::y();
  BivariatePolynomial x = BivariatePolynomial::from_x(Polynomial::x());
  BivariatePolynomial two = BivariatePolynomial::from_x(Polynomial(GR(2)));
  CHECK(resultant_y(y * y - x, two * y) == Polynomial::monomial(GR(-4), 1));
  CHECK(resultant_y(y - x, y - x).is_zero());
  GR a(3), b(Rational(-1), Rational(2));
  Polynomial r = resultant_y(y - BivariatePolynomial::from_x(Polynomial(a)),
                             y - BivariatePolynomial::from_x(Polynomial(b)));
  CHECK(r == Polynomial(a - b));
  CHECK(discriminant_y(y * y - x) == Polynomial::monomial(GR(4), 1));
  CHECK(discriminant_y(parse_bivariate("y^2 - (x^2 - 1)")) == parse_polynomial("4*x^2 - 4"));
  CHECK_THROWS_AS(discriminant_y(y - x), Error);
  CHECK_THROWS_AS(resultant_y(BivariatePolynomial(), y), Error);
}

TEST_CASE("resultant matches the cofactor oracle pointwise") {
  std::mt19937 rng(3);
  for (int t = 0; t < 30; ++t) {
    BivariatePolynomial p = random_bivariate(rng, 1 + t % 3, 2);
    BivariatePolynomial q = random_bivariate(rng, 1 + (t / 3) % 3, 2);
    Polynomial res = resultant_y(p, q);
    for (int k = 0; k < 3; ++k) {
      GR x0 = random_gr(rng);
      Polynomial pa = p.at_x(x0), qa = q.at_x(x0);
      if (pa.degree() != p.degree_y() || qa.degree() != q.degree_y()) continue;
      CHECK(res(x0) == sylvester_oracle(pa, qa));
    }
  }
}

TEST_CASE("resultant is multiplicative") {
  std::mt19937 rng(5);
  for (int t = 0; t < 20; ++t) {
    BivariatePolynomial p = random_bivariate(rng, 2, 1);
    BivariatePolynomial q = random_bivariate(rng, 1 + t % 2, 1);
    BivariatePolynomial r = random_bivariate(rng, 1, 2);
    CHECK(resultant_y(p, q * r) == resultant_y(p, q) * resultant_y(p, r));
  }
}

TEST_CASE("subresultants end in the resultant and the divisor") {
  BivariatePolynomial p = parse_bivariate("y^3 - x*y + 2");
  BivariatePolynomial q = parse_bivariate("y^2 - x");
  auto s = subresultants_y(p, q);
  REQUIRE(s.size() == 3);
  CHECK(s[0].degree_y() <= 0);
  CHECK(s[0].y_coeff(0) == resultant_y(p, q));
  CHECK(s[2] == q);
  // S_1 is a multiple of the last nonzero remainder of P by Q in y.
  CHECK(s[1].degree_y() <= 1);
}

TEST_CASE("square-free factorization") {
  Polynomial x = Polynomial::x();
  auto f = squarefree_factorization((x - 1) * (x - 1) * (x + 2));
  REQUIRE(f.size() == 2);
  CHECK(f[0] == std::make_pair(x + 2, 1));
  CHECK(f[1] == std::make_pair(x - 1, 2));
  auto g = squarefree_factorization(x * x + 1);
  REQUIRE(g.size() == 1);
  CHECK(g[0].second == 1);
  CHECK(squarefree_factorization(Polynomial(GR(5))).empty());
  std::mt19937 rng(9);
  for (int t = 0; t < 50; ++t) {
    Polynomial a({random_gr(rng), GR(1)}), b({random_gr(rng), random_gr(rng), GR(1)});
    Polynomial p = a.pow(3) * b * GR(Rational(7, 1));
    Polynomial prod(GR(1));
    auto fs = squarefree_factorization(p);
    for (const auto& [fac, m] : fs) prod *= fac.pow(m);
    CHECK(prod == p.monic());
    for (std::size_t i = 0; i < fs.size(); ++i)
      for (std::size_t j = 0; j < i; ++j) CHECK(gcd(fs[i].first, fs[j].first).degree() == 0);
  }
}

TEST_CASE("complex root enclosures") {
  auto r = complex_roots(parse_polynomial("x^2 + 1"), 1e-12);
  REQUIRE(r.size() == 2);
  CHECK(r[0].contains({0, -1}));
  CHECK(r[1].contains({0, 1}));
  auto c = complex_roots(parse_polynomial("x^3 - 1"), 1e-12);
  REQUIRE(c.size() == 3);
  int hits = 0;
  for (int k = 0; k < 3; ++k) {
    std::complex<double> w = std::polar(1.0, 2 * M_PI * k / 3);
    for (const auto& iv : c)
      if (std::abs(iv.center - w) < 1e-12) ++hits;
  }
  CHECK(hits == 3);
  auto d = distinct_roots(parse_polynomial("(x-2)^2*(x+1)"), 1e-12);
  REQUIRE(d.size() == 2);
  CHECK(d[0].multiplicity == 1);
  CHECK(d[1].multiplicity == 2);
  CHECK(d[1].interval.contains({2, 0}));
}

TEST_CASE("root certification bound holds on random polynomials") {
  std::mt19937 rng(17);
  const double tol = 1e-10;
  for (int t = 0; t < 100; ++t) {
    int n = 2 + t % 14;
    std::vector<GR> cs;
    for (int k = 0; k < n; ++k) cs.push_back(random_gr(rng));
    cs.push_back(GR(1) + random_gr(rng) * random_gr(rng) + GR(20));
    Polynomial p(cs);
    double maxc = 0;
    for (const auto& cf : cs) maxc = std::max(maxc, std::abs(cf.to_complex()));
    auto roots = complex_roots(p, tol);
    REQUIRE(static_cast<int>(roots.size()) == n);
    for (const auto& iv : roots) {
      CHECK(iv.radius <= tol);
      double bound = n * tol * maxc * std::pow(std::max(1.0, std::abs(iv.center)), n);
      CHECK(std::abs(p.eval(iv.center)) <= bound);
    }
  }
}

TEST_CASE("gaussian rational roots are exact") {
  auto r = gaussian_rational_roots(parse_polynomial("(2*x - 1)^2*(x^2 + 4)*(x^2 - 2)"));
  REQUIRE(r.size() == 3);
  CHECK(r[0].first == GR(Rational(0), Rational(-2)));
  CHECK(r[1].first == GR(Rational(0), Rational(2)));
  CHECK(r[2].first == GR(Rational(1, 1) / Rational(2)));
  CHECK(r[2].second == 2);
}
