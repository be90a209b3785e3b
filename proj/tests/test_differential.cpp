#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <random>

#include "finitude/differential.hpp"
#include "finitude/error.hpp"
#include "finitude/parser.hpp"

using namespace finitude;
using RF = RationalFunction;

namespace {

RF rf(const std::string& text) { return parse_rational_function(text); }
Polynomial poly(const std::string& text) { return parse_polynomial(text); }

LinearODE ode2(const std::string& a1, const std::string& a2) { return {{rf(a1), rf(a2)}}; }

JetSubstitution jets(const std::string& text, int n) {
  std::vector<std::string> names;
  for (int k = 0; k <= n; ++k) names.push_back("x" + std::to_string(k));
  return from_sparse(parse_sparse(text, names));
}

long small(std::mt19937& rng, int span) { return std::uniform_int_distribution<long>(-span, span)(rng); }

Polynomial random_poly(std::mt19937& rng, int degree, int span = 5) {
  std::vector<GR> c;
  for (int k = 0; k <= degree; ++k) c.push_back(GR(small(rng, span)));
  if (c.back().is_zero()) c.back() = GR(1);
  return Polynomial(c);
}

std::vector<std::string> sorted_strings(const std::vector<RF>& v) {
  std::vector<std::string> out;
  for (const auto& f : v) out.push_back(f.to_string());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("first terms of the derivative sequence") {
  const auto d = d_sequence(3);
  CHECK(d[0].to_string() == "1");
  CHECK(d[1].to_string() == "u");
  CHECK(d[2].to_string() == "u' + u^2");
  CHECK(d[3].to_string() == "u'' + 3*u*u' + u^3");
  CHECK_THROWS_AS(d_sequence(kMaxJetOrder + 1), Error);
  CHECK(d_sequence(kMaxJetOrder).size() == static_cast<std::size_t>(kMaxJetOrder + 1));
}

TEST_CASE("jet notation past the third derivative") {
  CHECK(DifferentialPolynomial::jet(4).to_string() == "u(4)");
  CHECK((DifferentialPolynomial::jet(1).pow(2) * RF(-2L)).to_string() == "-2*u'^2");
}

TEST_CASE("sequence evaluated at a logarithmic derivative gives P^(n)/P") {
  std::mt19937 rng(3);
  const auto d = d_sequence(6);
  for (int trial = 0; trial < 20; ++trial) {
    const Polynomial p = random_poly(rng, 1 + trial % 4);
    const RF u(p.derivative(), p);
    Polynomial pk = p;
    for (int n = 0; n <= 6; ++n) {
      CHECK(d[static_cast<std::size_t>(n)].evaluate(u) == RF(pk, p));
      pk = pk.derivative();
    }
  }
}

TEST_CASE("degree and order of the sequence") {
  const auto d = d_sequence(8);
  for (int n = 1; n <= 8; ++n) {
    const auto& dn = d[static_cast<std::size_t>(n)];
    CHECK(dn.degree() == n);
    CHECK(dn.jet_order() == n - 1);
    CHECK(dn.coeff({n}) == RF(1L));
    JetMonomial top(static_cast<std::size_t>(n), 0);
    top.back() = 1;
    CHECK(dn.coeff(top) == RF(1L));
    // every monomial has weight n: sum (k + 1) * e_k
    for (const auto& [m, c] : dn.terms()) {
      int w = 0;
      for (std::size_t k = 0; k < m.size(); ++k) w += static_cast<int>(k + 1) * m[k];
      CHECK(w == n);
    }
  }
}

TEST_CASE("generalized Riccati equations") {
  CHECK(generalized_riccati({{rf("x")}}).to_string() == "u + x");
  CHECK(generalized_riccati(ode2("x", "1")).to_string() == "u' + u^2 + x*u + 1");
  CHECK(generalized_riccati({{RF(0L), RF(0L), rf("-1")}}).to_string() == "u'' + 3*u*u' + u^3 - 1");
  CHECK_THROWS_AS(generalized_riccati({}), Error);
  CHECK(generalized_riccati_symbolic(2) == std::vector<std::string>{"u'", "u^2", "a_1*u", "a_2"});
  CHECK(generalized_riccati_symbolic(3) ==
        std::vector<std::string>{"u''", "3*u*u'", "u^3", "a_1*u'", "a_1*u^2", "a_2*u", "a_3"});
}

TEST_CASE("homogeneous substitutions") {
  CHECK(generalized_riccati_homogeneous(jets("x0*x2 - x1^2", 2)).to_string() == "u'");
  CHECK(generalized_riccati_homogeneous(jets("x1", 1)).to_string() == "u");
  CHECK(generalized_riccati_homogeneous(jets("x1^2 + x0*x1", 1)) ==
        generalized_riccati_homogeneous(jets("x1^2", 1)) + generalized_riccati_homogeneous(jets("x0*x1", 1)));
  try {
    generalized_riccati_homogeneous(jets("x1 + x0^2", 1));
    FAIL("expected NotHomogeneous");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotHomogeneous);
  }
  try {
    generalized_riccati_homogeneous(JetSubstitution{});
    FAIL("expected ZeroPolynomial");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ZeroPolynomial);
  }
}

TEST_CASE("weighted top coefficient") {
  const auto a = xi_weighted_check(jets("x0*x2 - x1^2", 2));
  CHECK(a.weight == 2);
  CHECK(a.top_sum.is_zero());
  CHECK_FALSE(a.satisfied);
  const auto b = xi_weighted_check(jets("x1 + 3*x0", 1));
  CHECK(b.weight == 1);
  CHECK(b.satisfied);
  CHECK(b.top_sum == RF(1L));
}

TEST_CASE("witness verification") {
  CHECK(verify_exp_integral_witness(ode2("0", "-1"), RF(1L)));
  CHECK(verify_exp_integral_witness(ode2("0", "1"), RF(GR::i())));
  CHECK_FALSE(verify_exp_integral_witness(ode2("0", "-x"), rf("x")));
}

TEST_CASE("witness search examples") {
  const auto exp_case = rational_witness_search(ode2("0", "-1"));
  CHECK(sorted_strings(exp_case.witnesses) == std::vector<std::string>{"-1", "1"});
  CHECK_FALSE(exp_case.status);

  const auto euler = rational_witness_search(ode2("1/x", "-1/x^2"));
  const auto names = sorted_strings(euler.witnesses);
  CHECK(std::find(names.begin(), names.end(), rf("1/x").to_string()) != names.end());
  CHECK(std::find(names.begin(), names.end(), rf("-1/x").to_string()) != names.end());

  const auto airy = rational_witness_search(ode2("0", "-x"));
  CHECK(airy.witnesses.empty());
  REQUIRE(airy.status);
  CHECK(*airy.status == ErrorCode::NoneFound);

  const auto free = rational_witness_search(ode2("0", "0"));
  CHECK(sorted_strings(free.witnesses) == std::vector<std::string>{"0", rf("1/x").to_string()});

  CHECK_THROWS_AS(rational_witness_search({{RF(1L)}}), Error);
}

TEST_CASE("witness search recovers planted solutions") {
  std::mt19937 rng(19);
  int found = 0;
  const int trials = 25;
  for (int trial = 0; trial < trials; ++trial) {
    const GR a(small(rng, 3)), b(small(rng, 3) + 7);
    const RF u0 = RF(Polynomial(GR(small(rng, 3) == 0 ? 2 : small(rng, 3))), Polynomial({-a, GR(1)})) +
                  RF(random_poly(rng, trial % 2, 3));
    const RF a1 = RF(Polynomial(GR(small(rng, 2))), Polynomial({-b, GR(1)})) + RF(random_poly(rng, trial % 2, 3));
    const RF a2 = -(u0.derivative() + u0 * u0 + a1 * u0);
    const LinearODE ode{{a1, a2}};
    REQUIRE(verify_exp_integral_witness(ode, u0));
    const auto s = rational_witness_search(ode, {10, 2});
    for (const auto& w : s.witnesses) CHECK(verify_exp_integral_witness(ode, w));
    if (std::find(s.witnesses.begin(), s.witnesses.end(), u0) != s.witnesses.end()) ++found;
    else MESSAGE("missed " << u0.to_string() << " for a1 = " << a1.to_string());
  }
  CHECK(found == trials);
}

TEST_CASE("integration examples") {
  const auto log_x = integrate_rational(rf("1/x"));
  CHECK(log_x.r0.is_zero());
  REQUIRE(log_x.logs.size() == 1);
  CHECK(log_x.logs[0].lambda == GR(1));
  CHECK(log_x.logs[0].arg == poly("x"));

  const auto inv_sq = integrate_rational(rf("1/x^2"));
  CHECK(inv_sq.r0 == rf("-1/x"));
  CHECK(inv_sq.logs.empty());

  const auto partial = integrate_rational(rf("1/(x^2 - 1)"));
  CHECK(partial.r0.is_zero());
  REQUIRE(partial.logs.size() == 2);
  std::vector<std::pair<std::string, std::string>> terms;
  for (const auto& t : partial.logs) terms.emplace_back(t.lambda.to_string(), t.arg.to_string());
  std::sort(terms.begin(), terms.end());
  CHECK(terms[0] == std::make_pair(std::string("-1/2"), std::string("x + 1")));
  CHECK(terms[1] == std::make_pair(std::string("1/2"), std::string("x - 1")));

  const auto atan = integrate_rational(rf("1/(x^2 + 1)"));
  CHECK(atan.logs.size() == 2);
  CHECK(atan.algebraic_logs.empty());
  CHECK(liouville_derivative(atan) == rf("1/(x^2 + 1)"));

  const auto sqrt2 = integrate_rational(rf("1/(x^2 - 2)"));
  CHECK(sqrt2.logs.empty());
  REQUIRE(sqrt2.algebraic_logs.size() == 1);
  CHECK(sqrt2.algebraic_logs[0].minimal == poly("x^2 - 1/8"));
  CHECK(sqrt2.algebraic_logs[0].lambdas.size() == 2);
  CHECK(liouville_derivative(sqrt2) == rf("1/(x^2 - 2)"));

  const auto poly_part = integrate_rational(rf("(x^3 + 1)/x"));
  CHECK(poly_part.r0 == rf("x^3/3"));
  CHECK(integrate_rational(RF(0L)).r0.is_zero());
}

TEST_CASE("random integrands differentiate back exactly") {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 200; ++trial) {
    Polynomial den(GR(1));
    const int target = 1 + trial % 8;
    while (den.degree() < target) {
      const int d = std::min(target - den.degree(), 1 + static_cast<int>(rng() % 3));
      Polynomial factor = random_poly(rng, d, 4).monic();
      const int mult = (rng() % 4 == 0 && den.degree() + 2 * d <= target) ? 2 : 1;
      den = den * factor.pow(mult);
    }
    const Polynomial num = random_poly(rng, static_cast<int>(rng() % 9), 6);
    const RF f(num, den);
    const auto form = integrate_rational(f);
    CHECK_MESSAGE(liouville_derivative(form) == f, f.to_string());
  }
}
