#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <numbers>
#include <random>

#include "finitude/error.hpp"
#include "finitude/parser.hpp"
#include "finitude/solvability.hpp"

using namespace finitude;
using C = std::complex<double>;

namespace {

BivariatePolynomial curve(const std::string& text) { return parse_bivariate(text); }
Polynomial poly(const std::string& text) { return parse_polynomial(text); }

Polynomial chebyshev_oracle(int n) {
  std::vector<Polynomial> t{Polynomial(GR(1)), Polynomial::x()};
  for (int k = 1; k < n; ++k) t.push_back(Polynomial::monomial(GR(2), 1) * t[k] - t[k - 1]);
  return t[static_cast<std::size_t>(n)];
}

// Roots reached by continuation from the labeled base fiber along a segment.
std::vector<C> tracked_fiber(const BivariatePolynomial& p, const MonodromyAction& m, C x) {
  return track_path(p, {m.base_point, x}, m.roots).back();
}

double nearest(const std::vector<C>& roots, C v) {
  double best = 1e300;
  for (const auto& r : roots) best = std::min(best, std::abs(v - r) / std::max(1.0, std::abs(r)));
  return best;
}

// Certificate soundness against continuation at random points of the disk.
int check_against_tracking(const BivariatePolynomial& p, const Radical& e, unsigned seed) {
  const auto m = monodromy_group(p);
  std::mt19937 rng(seed);
  const double radius = std::abs(m.base_point);
  std::uniform_real_distribution<double> u(-radius, radius);
  int checked = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const C x(u(rng), u(rng));
    std::vector<C> roots;
    try {
      roots = tracked_fiber(p, m, x);
    } catch (const Error&) {
      continue;
    }
    CHECK(nearest(roots, radical::evaluate(e, x)) < 1e-8);
    ++checked;
  }
  return checked;
}

Polynomial random_poly(std::mt19937& rng, int degree, int span) {
  std::uniform_int_distribution<int> c(-span, span);
  std::vector<GR> coeffs;
  for (int k = 0; k <= degree; ++k) coeffs.push_back(GR(c(rng)));
  if (coeffs.back().is_zero()) coeffs.back() = GR(1);
  return Polynomial(coeffs);
}

// Curve whose branches are u + u^2 with u^5 = x, assembled from power sums.
BivariatePolynomial cyclic_curve() {
  const int n = 5;
  std::vector<Polynomial> power_sums(n + 1);
  for (int m = 1; m <= n; ++m) {
    Polynomial acc;
    long binom = 1;
    for (int i = 0; i <= m; ++i) {
      const int e = m + i;
      if (e % n == 0) acc += Polynomial::monomial(GR(binom * n), e / n);
      binom = binom * (m - i) / (i + 1);
    }
    power_sums[static_cast<std::size_t>(m)] = acc;
  }
  std::vector<Polynomial> elem{Polynomial(GR(1))};
  for (int m = 1; m <= n; ++m) {
    Polynomial acc;
    for (int i = 1; i <= m; ++i) {
      const Polynomial term = elem[static_cast<std::size_t>(m - i)] * power_sums[static_cast<std::size_t>(i)];
      if (i % 2 == 1) acc += term;
      else acc -= term;
    }
    elem.push_back(acc * GR(Rational(1, m)));
  }
  std::vector<Polynomial> ys(n + 1);
  for (int m = 0; m <= n; ++m) ys[static_cast<std::size_t>(n - m)] = m % 2 == 0 ? elem[static_cast<std::size_t>(m)] : -elem[static_cast<std::size_t>(m)];
  return BivariatePolynomial(ys);
}

}  // namespace

TEST_CASE("radical expressions print, parse and use principal roots") {
  const Radical e = radical::parse("root(3, -8)");
  const C v = radical::evaluate(e, 0.0);
  CHECK(std::abs(v - C(1.0, std::sqrt(3.0))) < 1e-14);
  CHECK(std::abs(radical::evaluate(radical::parse("root(2, -1)"), 0.0) - C(0, 1)) < 1e-15);
  CHECK(std::abs(radical::evaluate(radical::parse("root(2, -4)"), 0.0) - C(0, 2)) < 1e-15);
  // principal argument lies in (-pi/m, pi/m]
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(-5, 5);
  for (int trial = 0; trial < 200; ++trial) {
    const C z(u(rng), u(rng));
    for (int m = 2; m <= 6; ++m) {
      const Radical r = radical::root(m, radical::floating(z));
      const C w = radical::evaluate(r, 0.0);
      CHECK(std::abs(std::pow(w, m) - z) < 1e-12 * std::max(1.0, std::abs(z)));
      CHECK(std::arg(w) > -std::numbers::pi / m - 1e-15);
      CHECK(std::arg(w) <= std::numbers::pi / m + 1e-15);
    }
  }
  for (const std::string text : {"root(2, x^3 + 1)", "(-x + root(2, x^2 - 4))/2", "root(3, x) - 2/3*x^2/root(3, x)",
                                 "root(5, (1/2+3*I)*x - 1.5)"}) {
    const Radical a = radical::parse(text);
    const Radical b = radical::parse(radical::to_string(a));
    for (const C x : {C(0.3, 0.7), C(-1.2, 0.4), C(2.5, -1.0)})
      CHECK(std::abs(radical::evaluate(a, x) - radical::evaluate(b, x)) < 1e-14 * std::max(1.0, std::abs(radical::evaluate(a, x))));
  }
  CHECK(radical::to_string(radical::parse("root(2, x^3 + 1)")) == "root(2, x^3 + 1)");
  CHECK_THROWS_AS(radical::parse("root(2, x"), SyntaxError);
}

TEST_CASE("radicals verdicts on the basic examples") {
  const auto quintic = radicals_verdict(curve("y^5 + y - x"));
  CHECK(quintic.status == VerdictStatus::NotRepresentable);
  REQUIRE(quintic.group);
  CHECK(quintic.group->name == "S5");
  CHECK(quintic.group->order == 120);

  const auto cube = radicals_verdict(curve("y^3 - x"));
  CHECK(cube.status == VerdictStatus::Representable);
  REQUIRE(cube.certificate);
  CHECK(radical::to_string(cube.certificate->expression) == "root(3, x)");

  const auto sq = radicals_verdict(curve("y^2 - (x^3 + 1)"));
  CHECK(sq.status == VerdictStatus::Representable);
  REQUIRE(sq.certificate);
  CHECK(radical::to_string(sq.certificate->expression) == "root(2, x^3 + 1)");
  CHECK(sq.certificate->points_checked >= 100);
  CHECK(sq.certificate->max_error < 1e-8);
  const C b = sq.certificate->base_point;
  const auto m = monodromy_group(curve("y^2 - (x^3 + 1)"));
  CHECK(std::abs(radical::evaluate(sq.certificate->expression, b) - m.roots[static_cast<std::size_t>(sq.certificate->root_label)]) < 1e-8);

  try {
    radicals_verdict(curve("(y^2 - x)*(y - 1)"));
    FAIL("expected failure");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ReducibleInput);
  }
}

TEST_CASE("quadratic formula") {
  const auto t = radical_tower(curve("y^2 + (2*x + 1)*y + x^3 - 2"));
  CHECK(t.construction == "quadratic");
  CHECK(radical::root_count(t.expression) == 1);
  CHECK(radical::to_string(t.expression) == "(-2*x - 1 + root(2, -4*x^3 + 4*x^2 + 4*x + 9))/2");
  CHECK(check_against_tracking(curve("y^2 + (2*x + 1)*y + x^3 - 2"), t.expression, 5) >= 90);
}

TEST_CASE("Cardano towers match continuation at random points") {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 6; ++trial) {
    const Polynomial p = random_poly(rng, 2, 3);
    const Polynomial q = random_poly(rng, 2, 3);
    BivariatePolynomial P({q, p, Polynomial(), Polynomial(GR(1))});
    RadicalTower t;
    try {
      t = radical_tower(P);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::SquareFreeRequired) continue;
      FAIL(std::string(e.what()));
    }
    CHECK(t.construction == "cardano");
    CHECK(t.rationalized);
    CHECK(radical::root_count(t.expression) >= 2);
    CHECK(check_against_tracking(P, t.expression, 100 + trial) >= 90);
  }
}

TEST_CASE("Ferrari towers") {
  std::mt19937 rng(29);
  for (int trial = 0; trial < 4; ++trial) {
    std::vector<Polynomial> ys;
    for (int j = 0; j < 4; ++j) ys.push_back(random_poly(rng, 1, 3));
    ys.push_back(Polynomial(GR(1 + trial % 2)));
    const BivariatePolynomial P(ys);
    RadicalTower t;
    try {
      t = radical_tower(P);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::SquareFreeRequired) continue;
      FAIL(std::string(e.what()));
    }
    CHECK(t.construction == "ferrari");
    CHECK(check_against_tracking(P, t.expression, 300 + trial) >= 90);
  }
  const auto bq = radical_tower(curve("y^4 - x*y^2 + 1"));
  CHECK(bq.construction == "ferrari");
  CHECK(check_against_tracking(curve("y^4 - x*y^2 + 1"), bq.expression, 9) >= 90);
}

TEST_CASE("cyclic resolvent tower") {
  const auto P = cyclic_curve();
  const auto m = monodromy_group(P);
  CHECK(m.group.order() == 5);
  const auto t = radical_tower(P, m);
  CHECK(t.construction == "cyclic");
  CHECK(t.rationalized);
  CHECK(check_against_tracking(P, t.expression, 41) >= 90);
}

TEST_CASE("dihedral resolvent tower for the Chebyshev inverse") {
  const auto P = inverse_curve(chebyshev_oracle(5));
  const auto v = radicals_verdict(P);
  CHECK(v.status == VerdictStatus::Representable);
  REQUIRE(v.group);
  CHECK(v.group->name == "D5");
  REQUIRE(v.certificate);
  CHECK(v.certificate->construction == "dihedral");
  CHECK(check_against_tracking(P, v.certificate->expression, 43) >= 90);
}

TEST_CASE("k-radical verdicts") {
  CHECK(k_radicals_verdict(curve("y^5 + y - x"), 5).status == VerdictStatus::Representable);
  CHECK(k_radicals_verdict(curve("y^5 + y - x"), 4).status == VerdictStatus::NotRepresentable);
  CHECK(k_radicals_verdict(curve("y^2 - x"), 1).status == VerdictStatus::Representable);
  CHECK(invertible_by_k_radicals(poly("x^5 + x"), 5).status == VerdictStatus::Representable);
  CHECK(invertible_by_k_radicals(poly("x^5 + x"), 4).status == VerdictStatus::NotRepresentable);
  CHECK(invertible_by_k_radicals(chebyshev_oracle(7), 1).status == VerdictStatus::Representable);
}

TEST_CASE("Ritt decomposition examples") {
  const auto c6 = ritt_decompose(poly("x^6"));
  REQUIRE(c6.factors.size() == 2);
  CHECK(c6.factors[0] == poly("x^2"));
  CHECK(c6.factors[1] == poly("x^3"));

  const Polynomial t6 = chebyshev_oracle(6);
  const auto ct = ritt_decompose(t6);
  REQUIRE(ct.factors.size() == 2);
  CHECK(ct.factors[0].degree() == 2);
  CHECK(ct.factors[1].degree() == 3);
  CHECK(compose_chain(ct) == t6);
  CHECK(classify_primitive(ct.factors[1]).kind == PrimitiveClass::Kind::ChebyshevConjugate);

  const auto prime = ritt_decompose(poly("x^5 + x"));
  REQUIRE(prime.factors.size() == 1);
  CHECK(prime.factors[0] == poly("x^5 + x"));

  const auto lin = ritt_decompose(poly("3*x - 1"));
  CHECK(lin.factors.size() == 1);
}

TEST_CASE("classification of primitive polynomials") {
  const auto t3 = classify_primitive(poly("4*x^3 - 3*x"));
  CHECK(t3.kind == PrimitiveClass::Kind::ChebyshevConjugate);
  CHECK(t3.n == 3);
  CHECK(t3.outer->is_identity());
  CHECK(t3.inner->is_identity());

  const auto pw = classify_primitive(poly("2*(x - 1)^5 + 7"));
  CHECK(pw.kind == PrimitiveClass::Kind::PowerConjugate);
  CHECK(pw.n == 5);
  CHECK(pw.outer->to_string("z") == "2*z + 7");
  CHECK(pw.inner->to_string("x") == "x - 1");

  CHECK(classify_primitive(poly("x^5 + x")).kind == PrimitiveClass::Kind::Other);
  CHECK(classify_primitive(poly("x^4 + x + 1")).kind == PrimitiveClass::Kind::DegreeAtMost4);
  CHECK_THROWS_AS(classify_primitive(poly("5")), Error);
}

TEST_CASE("Chebyshev conjugates are recognized with their intertwiners") {
  std::mt19937 rng(8);
  std::uniform_int_distribution<int> c(-5, 5);
  for (int n = 3; n <= 9; ++n) {
    for (int trial = 0; trial < 3; ++trial) {
      const GR a(c(rng) == 0 ? 2 : c(rng) | 1);
      const GR b(c(rng));
      const GR s(Rational(c(rng) | 1, 2));
      const GR t(c(rng));
      const Polynomial f = chebyshev_oracle(n).compose(Polynomial({t, s})) * a + Polynomial(b);
      const auto k = classify_primitive(f);
      CHECK(k.kind == PrimitiveClass::Kind::ChebyshevConjugate);
      // the recovered maps reproduce f numerically
      const Radical inner = radical::sum({radical::product({k.inner->scale, radical::variable()}), k.inner->shift});
      for (const C x : {C(0.3, 0.1), C(-0.7, 0.5)}) {
        C u = radical::evaluate(inner, x);
        C tn = chebyshev_oracle(n).eval(u);
        C got = radical::evaluate(k.outer->scale, 0.0) * tn + radical::evaluate(k.outer->shift, 0.0);
        CHECK(std::abs(got - f.eval(x)) < 1e-8 * std::max(1.0, std::abs(f.eval(x))));
      }
    }
  }
}

TEST_CASE("invertibility by radicals") {
  const auto t5 = invertible_by_radicals(chebyshev_oracle(5));
  CHECK(t5.status == VerdictStatus::Representable);
  REQUIRE(t5.group);
  CHECK(t5.group->solvable);

  std::mt19937 rng(12);
  for (int trial = 0; trial < 5; ++trial)
    CHECK(invertible_by_radicals(random_poly(rng, 4, 6)).status == VerdictStatus::Representable);

  const auto q = invertible_by_radicals(poly("x^5 + x"));
  CHECK(q.status == VerdictStatus::NotRepresentable);
  REQUIRE(q.group);
  CHECK(q.group->name == "S5");
}

TEST_CASE("decomposition soundness and Ritt closure on random chains") {
  std::mt19937 rng(99);
  std::uniform_int_distribution<int> c(-3, 3);
  const auto nonzero = [&] {
    int v = c(rng);
    return v == 0 ? 1 : v;
  };
  for (int trial = 0; trial < 50; ++trial) {
    Polynomial f = Polynomial::x();
    int degree = 1;
    for (int step = 0; step < 4; ++step) {
      const int kind = static_cast<int>(rng() % 4);
      Polynomial factor;
      if (kind == 0) factor = Polynomial({GR(c(rng)), GR(nonzero())});
      else if (kind == 1) factor = Polynomial::monomial(GR(nonzero()), 2 + static_cast<int>(rng() % 2)).compose(Polynomial({GR(c(rng)), GR(1)}));
      else if (kind == 2) factor = chebyshev_oracle(2 + static_cast<int>(rng() % 4)).compose(Polynomial({GR(c(rng)), GR(nonzero())}));
      else factor = random_poly(rng, 2 + static_cast<int>(rng() % 3), 3);
      if (degree * factor.degree() > 30) continue;
      degree *= factor.degree();
      f = factor.compose(f);
    }
    if (f.degree() < 1) continue;
    const auto chain = ritt_decompose(f);
    CHECK(compose_chain(chain) == f);
    int total = 1;
    for (const auto& g : chain.factors) total *= g.degree();
    CHECK(total == f.degree());
    const auto v = invertible_by_radicals(f);
    CHECK(v.status == VerdictStatus::Representable);
  }
}

TEST_CASE("Other classification agrees with unsolvable monodromy") {
  for (const std::string text : {"x^5 + x", "x^5 - 2*x^2 + 1", "x^6 + x + 1", "x^7 - x^3 + 2*x", "x^5 + 3*x^4 - x"}) {
    const Polynomial f = poly(text);
    const auto chain = ritt_decompose(f);
    bool other = false;
    for (const auto& g : chain.factors) other = other || classify_primitive(g).kind == PrimitiveClass::Kind::Other;
    CHECK(other);
    const auto m = monodromy_group(inverse_curve(f));
    CHECK_FALSE(is_solvable(m.group));
  }
}
