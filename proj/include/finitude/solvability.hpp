#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "finitude/bivariate.hpp"
#include "finitude/error.hpp"
#include "finitude/monodromy.hpp"
#include "finitude/perm_group.hpp"
#include "finitude/radical.hpp"

namespace finitude {

inline constexpr const char* kBranchConvention = "principal m-th root, argument in (-pi/m, pi/m]";

struct GroupWitness {
  int degree = 0;
  mpz_class order;
  std::string name;
  std::vector<Perm> generators;
  bool solvable = false;
  bool almost_solvable = true;  // always true for finite groups
};

GroupWitness describe_group(const PermGroup& g);

struct RadicalTower {
  Radical expression;
  std::string construction;     // linear, binomial, quadratic, cardano, ferrari, cyclic, dihedral
  std::complex<double> base_point;
  int root_label = 0;           // index into the labeled fiber at the base point
  bool rationalized = true;     // false: some coefficients kept in floating point
  int points_checked = 0;
  double max_error = 0.0;       // largest relative deviation from the nearest root
};

struct TowerOptions {
  int verification_points = 100;
  double verification_tol = 1e-8;
  unsigned seed = 1;
  bool certificate = true;  // radicals_verdict builds the tower only when set
  MonodromyOptions monodromy;
};

/// Radical expression for one branch of P = 0. Degree <= 4 uses the classical
/// formulas; cyclic and dihedral monodromy use Lagrange resolvents with
/// coefficients interpolated numerically and rationalized where possible.
/// Throws UnsupportedGroup, NumericBreakdown.
RadicalTower radical_tower(const BivariatePolynomial& p, const TowerOptions& options = {});
RadicalTower radical_tower(const BivariatePolynomial& p, const MonodromyAction& monodromy,
                           const TowerOptions& options = {});

/// Largest relative distance from the expression to the nearest root of P at
/// random points of the disk of the given radius away from the singular set.
double max_root_deviation(const BivariatePolynomial& p, const Radical& e, double radius,
                          const std::vector<std::complex<double>>& avoid, int points, unsigned seed);

enum class VerdictStatus { Representable, NotRepresentable, Undecided };

const char* verdict_status_name(VerdictStatus s);

/// Linear map u -> scale*u + shift.
struct LinearMap {
  Radical scale;
  Radical shift;
  std::string to_string(const std::string& var) const;
  bool is_identity() const;
};

struct CompositionChain {
  std::vector<Polynomial> factors;  // innermost first: f = factors.back() o ... o factors.front()
  std::vector<bool> primitive;
};

struct PrimitiveClass {
  enum class Kind { Linear, PowerConjugate, ChebyshevConjugate, DegreeAtMost4, Other };
  Kind kind = Kind::Other;
  int n = 0;
  std::optional<LinearMap> outer;  // f = outer o (x^n or T_n) o inner
  std::optional<LinearMap> inner;
  std::string ambiguity;
};

const char* primitive_kind_name(PrimitiveClass::Kind k);

struct Verdict {
  VerdictStatus status = VerdictStatus::Undecided;
  std::string reason;
  std::optional<GroupWitness> group;
  std::optional<RadicalTower> certificate;
  std::optional<CompositionChain> chain;
  std::vector<PrimitiveClass> classes;  // per chain factor
  std::vector<CompositionFactor> factors;
  std::optional<ErrorCode> code;  // cause of Undecided, or a flag such as RationalizationFailed
};

/// Throws ReducibleInput.
Verdict radicals_verdict(const BivariatePolynomial& p, const TowerOptions& options = {});
Verdict k_radicals_verdict(const BivariatePolynomial& p, int k, const MonodromyOptions& options = {});
/// Same verdicts from an already computed monodromy action of p.
Verdict radicals_verdict(const BivariatePolynomial& p, const MonodromyAction& m, const TowerOptions& options);
Verdict k_radicals_verdict(const MonodromyAction& m, int k);

CompositionChain ritt_decompose(const Polynomial& f);
Polynomial compose_chain(const CompositionChain& chain);
PrimitiveClass classify_primitive(const Polynomial& f);

/// Largest degree for which the classification is cross-checked against monodromy.
inline constexpr int kRittCrossCheckDegree = 12;

Verdict invertible_by_radicals(const Polynomial& f, const MonodromyOptions& options = {});
Verdict invertible_by_k_radicals(const Polynomial& f, int k, const MonodromyOptions& options = {});

/// The curve f(y) - x.
BivariatePolynomial inverse_curve(const Polynomial& f);

}  // namespace finitude
