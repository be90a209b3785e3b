#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <numbers>
#include <random>

#include <unsupported/Eigen/MatrixFunctions>

#include "finitude/error.hpp"
#include "finitude/fuchsian.hpp"

using namespace finitude;
using C = std::complex<double>;

namespace {

const C kTwoPiI(0.0, 2.0 * std::numbers::pi);

CMatrix matrix_exp(const CMatrix& a) { return (kTwoPiI * a).exp(); }

double opnorm(const CMatrix& m) { return Eigen::JacobiSVD<CMatrix>(m).singularValues()(0); }

CMatrix random_matrix(std::mt19937& rng, int n, double scale) {
  std::uniform_real_distribution<double> u(-scale, scale);
  CMatrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = C(u(rng), u(rng));
  return m;
}

CMatrix upper(std::mt19937& rng, int n, double scale) {
  CMatrix m = random_matrix(rng, n, scale);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j) m(i, j) = 0.0;
  return m;
}

CMatrix mat2(C a, C b, C c, C d) {
  CMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

const CMatrix kRaise = mat2(0, 1, 0, 0);
const CMatrix kLower = mat2(0, 0, 1, 0);
const CMatrix kDiag = mat2(1, 0, 0, -1);

const LoopMatrix& loop_around(const MonodromyMatrices& m, std::size_t pole) {
  for (const auto& l : m.loops)
    if (l.loop.encircled == static_cast<int>(pole)) return l;
  FAIL("no loop around pole");
  return m.loops.front();
}

}  // namespace

TEST_CASE("single pole monodromy is the exponential of the residue") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 1 + trial % 4;
    const CMatrix a = random_matrix(rng, n, 0.6);
    const FuchsianSystem sys{{C(0, 0)}, {a}};
    const auto m = system_monodromy(sys);
    REQUIRE(m.loops.size() == 1);
    CHECK(opnorm(m.loops[0].matrix - matrix_exp(a)) <= 1e-6);
    CHECK(m.loops[0].condition >= 1.0);
  }
}

TEST_CASE("zero residues give identity monodromy") {
  const FuchsianSystem sys{{C(0, 0), C(1, 1)}, {CMatrix::Zero(3, 3), CMatrix::Zero(3, 3)}};
  const auto m = system_monodromy(sys);
  REQUIRE(m.loops.size() == 2);
  for (const auto& l : m.loops) CHECK(opnorm(l.matrix - CMatrix::Identity(3, 3)) <= 1e-12);
}

TEST_CASE("commuting diagonal residues decouple") {
  CMatrix a1 = CMatrix::Zero(2, 2), a2 = CMatrix::Zero(2, 2);
  a1.diagonal() << C(0.3, 0), C(-0.2, 0.1);
  a2.diagonal() << C(0.5, 0), C(0.25, 0);
  const FuchsianSystem sys{{C(-1, 0), C(1, 0)}, {a1, a2}};
  const auto m = system_monodromy(sys);
  CHECK(opnorm(loop_around(m, 0).matrix - matrix_exp(a1)) <= 1e-6);
  CHECK(opnorm(loop_around(m, 1).matrix - matrix_exp(a2)) <= 1e-6);
}

TEST_CASE("determinant follows the trace of the residue") {
  std::mt19937 rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 1 + trial % 3;
    const int k = 2 + trial % 3;
    FuchsianSystem sys;
    for (int i = 0; i < k; ++i) {
      sys.poles.push_back(C(std::cos(2.0 * i + trial), std::sin(2.0 * i + trial)) * (1.0 + 0.3 * i));
      sys.residues.push_back(random_matrix(rng, n, 0.4));
    }
    const auto m = system_monodromy(sys);
    for (const auto& l : m.loops) {
      const C expected = std::exp(kTwoPiI * sys.residues[static_cast<std::size_t>(l.loop.encircled)].trace());
      CHECK(std::abs(l.matrix.determinant() - expected) <= 1e-6 * std::max(1.0, std::abs(expected)));
    }
  }
}

TEST_CASE("product of the loops matches the circle around all poles") {
  std::mt19937 rng(13);
  for (int trial = 0; trial < 5; ++trial) {
    FuchsianSystem sys;
    for (int i = 0; i < 3; ++i) {
      sys.poles.push_back(C(0.7 * std::cos(2.1 * i + trial), 0.7 * std::sin(2.1 * i + trial)));
      sys.residues.push_back(random_matrix(rng, 2, 0.3));
    }
    const auto m = system_monodromy(sys);
    const CMatrix id = CMatrix::Identity(2, 2);
    const auto ccw = enclosing_circle(m.base_point, false);
    const auto cw = enclosing_circle(m.base_point, true);
    const CMatrix around = transport(sys, ccw.waypoints, id);
    const CMatrix back = transport(sys, cw.waypoints, id);
    CHECK(opnorm(ordered_product(m) - around) <= 1e-6);
    CHECK(opnorm(ordered_product(m) - back.inverse()) <= 1e-6);
  }
}

TEST_CASE("invalid systems are rejected") {
  CHECK_THROWS_AS(system_monodromy({{C(0, 0), C(0, 0)}, {kDiag, kDiag}}), Error);
  CHECK_THROWS_AS(system_monodromy({{C(0, 0)}, {CMatrix::Zero(2, 3)}}), Error);
  CHECK_THROWS_AS(simultaneous_triangularizable({CMatrix::Zero(13, 13)}), Error);
  FuchsianOptions on_pole;
  on_pole.base = C(0, 0);
  CHECK_THROWS_AS(system_monodromy({{C(0, 0)}, {kDiag}}, on_pole), Error);
}

TEST_CASE("triangularization examples") {
  std::mt19937 rng(17);
  const auto single = simultaneous_triangularizable({random_matrix(rng, 4, 1.0)});
  CHECK(single.triangularizable);
  CHECK(single.max_below <= 1e-8);

  const auto pair = simultaneous_triangularizable({kRaise, kDiag});
  REQUIRE(pair.triangularizable);
  CHECK(std::abs(std::abs(pair.basis(0, 0)) - 1.0) <= 1e-10);
  CHECK(std::abs(pair.basis(1, 0)) <= 1e-10);
  CHECK(pair.max_below <= 1e-8);

  const auto sl2 = simultaneous_triangularizable({kRaise, kLower});
  CHECK_FALSE(sl2.triangularizable);
  CHECK(sl2.obstruction_generators == std::vector<int>{0, 1});
  CHECK(sl2.obstruction_space.cols() == 2);

  CHECK(simultaneous_triangularizable({}).triangularizable);
}

TEST_CASE("commuting and conjugated triangular families share a flag") {
  std::mt19937 rng(29);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + trial % 5;
    const CMatrix s = random_matrix(rng, n, 1.0) + 2.0 * CMatrix::Identity(n, n);
    const CMatrix inv = s.inverse();
    std::vector<CMatrix> commuting, triangular;
    for (int i = 0; i < 3; ++i) {
      CMatrix d = CMatrix::Zero(n, n);
      d.diagonal() = random_matrix(rng, n, 1.0).col(0);
      commuting.push_back(s * d * inv);
      triangular.push_back(s * upper(rng, n, 1.0) * inv);
    }
    const auto a = simultaneous_triangularizable(commuting);
    CHECK(a.triangularizable);
    CHECK(a.max_below <= 1e-8);
    const auto b = simultaneous_triangularizable(triangular);
    CHECK(b.triangularizable);
    CHECK(b.max_below <= 1e-8);
  }
}

TEST_CASE("generic pairs have no common flag") {
  std::mt19937 rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 2 + trial % 4;
    const auto t = simultaneous_triangularizable({random_matrix(rng, n, 1.0), random_matrix(rng, n, 1.0)});
    CHECK_FALSE(t.triangularizable);
    CHECK(t.obstruction_generators.size() == 2);
  }
}

TEST_CASE("small norm verdicts") {
  const FuchsianSystem triangular{{C(0, 0), C(1, 0)}, {mat2(0.5, 1, 0, 0.25), mat2(-0.5, 2, 0, 0)}};
  const auto yes = small_norm_verdict(triangular);
  CHECK(yes.status == VerdictStatus::Representable);
  CHECK_FALSE(yes.conditional);
  REQUIRE(yes.schedule.size() == 3);
  CHECK(yes.schedule[0].find("z_2") == 0);
  CHECK(yes.schedule[1].find("integral") != std::string::npos);

  const FuchsianSystem sl2{{C(0, 0), C(1, 0)}, {1e-3 * kRaise, 1e-3 * kLower}};
  const auto no = small_norm_verdict(sl2);
  CHECK(no.status == VerdictStatus::NotRepresentable);
  CHECK(no.conditional);
  CHECK(no.max_norm == doctest::Approx(1e-3));
  CHECK(no.reason.find("conditional") != std::string::npos);

  const FuchsianSystem zero{{C(0, 0)}, {CMatrix::Zero(2, 2)}};
  const auto trivial = small_norm_verdict(zero);
  CHECK(trivial.status == VerdictStatus::Representable);
  CHECK(trivial.schedule == std::vector<std::string>{"z_2 = c_2*1", "z_1 = c_1*1", "y = basis*z"});
}
