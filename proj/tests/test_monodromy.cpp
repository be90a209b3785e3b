#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <numbers>
#include <random>

#include "finitude/error.hpp"
#include "finitude/monodromy.hpp"
#include "finitude/parser.hpp"

using namespace finitude;
using C = std::complex<double>;

namespace {

BivariatePolynomial curve(const std::string& text) { return parse_bivariate(text); }

Perm ordered_product(const MonodromyAction& m) {
  Perm acc = perm_identity(static_cast<int>(m.roots.size()));
  for (const auto& g : m.generators) acc = perm_mul(acc, g);
  return acc;
}

// y^n + x*(a_{n-1}(x) y^{n-1} + ... + a_0(x)) with a_0(0) != 0: Eisenstein at x = 0,
// so irreducible and totally ramified over the origin.
BivariatePolynomial random_eisenstein(std::mt19937& rng, int n) {
  std::uniform_int_distribution<int> coef(-3, 3);
  std::vector<Polynomial> ys(static_cast<std::size_t>(n + 1));
  ys[static_cast<std::size_t>(n)] = Polynomial(1);
  for (int j = 0; j < n; ++j) {
    std::vector<GR> c{GR(0), GR(coef(rng)), GR(coef(rng))};
    if (j == 0 && c[1].is_zero()) c[1] = GR(1);
    ys[static_cast<std::size_t>(j)] = Polynomial(c);
  }
  return BivariatePolynomial(ys);
}

int loop_around(const MonodromyAction& m, C point) {
  for (std::size_t i = 0; i < m.loops.size(); ++i)
    if (std::abs(m.singular.points[static_cast<std::size_t>(m.loops[i].encircled)].center - point) < 1e-8)
      return static_cast<int>(i);
  return -1;
}

}  // namespace

TEST_CASE("square root gives a transposition") {
  const auto m = monodromy_group(curve("y^2 - x"));
  REQUIRE(m.singular.points.size() == 1);
  CHECK(std::abs(m.singular.points[0].center) < 1e-12);
  CHECK(m.base_point == C(1.0, 0.0));
  REQUIRE(m.generators.size() == 1);
  CHECK(perm_to_cycles(m.generators[0]) == "(1 2)");
  CHECK(m.group.order() == 2);
  CHECK(m.transitive);
}

TEST_CASE("n-th root gives an n-cycle") {
  for (int n = 2; n <= 7; ++n) {
    const auto m = monodromy_group(curve("y^" + std::to_string(n) + " - x"));
    REQUIRE(m.generators.size() == 1);
    CHECK(perm_cycle_type(m.generators[0]) == std::vector<int>{n});
    CHECK(m.group.order() == n);
  }
}

TEST_CASE("generic quintic trinomial has the full symmetric group") {
  const auto m = monodromy_group(curve("y^5 + y - x"));
  CHECK(m.singular.points.size() == 4);
  for (const auto& g : m.generators) CHECK(perm_cycle_type(g) == std::vector<int>{2, 1, 1, 1});
  CHECK(m.group.order() == 120);
}

TEST_CASE("product of loops matches the circle around all points") {
  for (const char* text : {"y^5 + y - x", "y^3 - 3*y - x^2 + 1", "x*y^2 - y + x^3"}) {
    const auto p = curve(text);
    const auto m = monodromy_group(p);
    const Perm ccw = continue_roots(p, enclosing_circle(m.base_point, false), m.roots);
    const Perm cw = continue_roots(p, enclosing_circle(m.base_point, true), m.roots);
    CHECK(ordered_product(m) == ccw);
    CHECK(ordered_product(m) == perm_inverse(cw));
  }
}

TEST_CASE("loop geometry") {
  SUBCASE("single point") {
    const auto loops = generate_loops({C(0, 0)}, C(2, 0));
    REQUIRE(loops.size() == 1);
    double far = 0.0;
    for (const auto& w : loops[0].waypoints) far = std::max(far, std::abs(w - C(2, 0)));
    CHECK(far == doctest::Approx(3.0));
    int on_circle = 0;
    for (const auto& w : loops[0].waypoints)
      if (std::abs(std::abs(w) - 1.0) < 1e-12) ++on_circle;
    CHECK(on_circle >= 64);
  }
  SUBCASE("collinear points are ordered nearer first") {
    const auto loops = generate_loops({C(-1, 0), C(1, 0)}, C(3, 0));
    REQUIRE(loops.size() == 2);
    CHECK(loops[0].encircled == 1);
    CHECK(loops[1].encircled == 0);
    // The far loop must avoid the near point.
    for (const auto& w : loops[1].waypoints) CHECK(std::abs(w - C(1, 0)) > 0.2);
  }
  SUBCASE("angle order is counterclockwise from the positive axis") {
    const auto loops = generate_loops({C(0, -1), C(0, 1)}, C(3, 0));
    CHECK(loops[0].encircled == 1);
    CHECK(loops[1].encircled == 0);
  }
  SUBCASE("loops close at the base point") {
    for (const auto& l : generate_loops({C(0, 0), C(1, 1), C(-2, 0.5)}, C(7, 0))) {
      CHECK(l.waypoints.front() == C(7, 0));
      CHECK(l.waypoints.back() == C(7, 0));
    }
  }
  CHECK_THROWS_AS(generate_loops({C(1, 0)}, C(1, 0)), Error);
}

TEST_CASE("collinear singular points keep the product relation") {
  // Singular points at -1, 0 and 1 lie on the ray from the base point.
  const auto p = curve("y^2 - x^3 + x");
  const auto m = monodromy_group(p);
  REQUIRE(m.singular.points.size() == 3);
  const Perm ccw = continue_roots(p, enclosing_circle(m.base_point, false), m.roots);
  CHECK(ordered_product(m) == ccw);
  for (const auto& g : m.generators) CHECK(perm_to_cycles(g) == "(1 2)");
  // Three transpositions compose to the transposition seen from infinity.
  CHECK(perm_to_cycles(ccw) == "(1 2)");
}

TEST_CASE("random Eisenstein curves are transitive and totally ramified at the origin") {
  std::mt19937 rng(20240611);
  for (int trial = 0; trial < 12; ++trial) {
    const int n = 2 + trial % 4;
    const auto p = random_eisenstein(rng, n);
    MonodromyAction m;
    try {
      m = monodromy_group(p);
    } catch (const Error& e) {
      // Square-free failures cannot happen for Eisenstein input.
      FAIL(std::string(e.what()));
    }
    CHECK(m.transitive);
    const int i = loop_around(m, C(0, 0));
    REQUIRE(i >= 0);
    CHECK(perm_cycle_type(m.generators[static_cast<std::size_t>(i)]) == std::vector<int>{n});
    const Perm ccw = continue_roots(p, enclosing_circle(m.base_point, false), m.roots);
    CHECK(ordered_product(m) == ccw);
  }
}

TEST_CASE("reducible curves split into orbits") {
  const auto m = monodromy_group(curve("(y^2 - x)*(y - x - 5)"));
  CHECK_FALSE(m.transitive);
  REQUIRE(m.orbit_groups.size() == 2);
  std::vector<std::size_t> sizes;
  for (const auto& o : m.orbit_groups) sizes.push_back(o.points.size());
  std::sort(sizes.begin(), sizes.end());
  CHECK(sizes == std::vector<std::size_t>{1, 2});

  const auto lines = monodromy_group(curve("y^2 - x^2"));
  CHECK(lines.group.is_trivial());
  CHECK(lines.orbit_groups.size() == 2);
}

TEST_CASE("pole branches are tracked") {
  // Leading coefficient vanishes at 0: one branch escapes to infinity.
  const auto m = monodromy_group(curve("x*y^2 - 1"));
  CHECK(m.group.order() == 2);
}

TEST_CASE("error reporting") {
  CHECK_THROWS_WITH_AS(singular_points(curve("(y - x)^2")), doctest::Contains("repeated"), Error);
  try {
    singular_points(curve("y - x"));
    FAIL("expected failure");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DegreeTooLow);
  }
  Loop through_origin;
  through_origin.base = C(1, 0);
  through_origin.waypoints = {C(1, 0), C(-1, 0), C(0, 1), C(1, 0)};
  const auto p = curve("y^2 - x");
  try {
    continue_roots(p, through_origin, fiber(p, C(1, 0)));
    FAIL("expected failure");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SingularOnPath);
  }
  MonodromyOptions opts;
  opts.base = C(0, 0);
  try {
    monodromy_group(p, opts);
    FAIL("expected failure");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BasePointTooClose);
  }
}

TEST_CASE("parallel and serial runs agree") {
  const auto p = curve("y^5 + y - x");
  MonodromyOptions serial, parallel;
  parallel.threads = 4;
  const auto a = monodromy_group(p, serial);
  const auto b = monodromy_group(p, parallel);
  CHECK(a.generators == b.generators);
}
