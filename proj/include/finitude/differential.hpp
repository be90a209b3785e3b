#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "finitude/bivariate.hpp"
#include "finitude/error.hpp"
#include "finitude/parser.hpp"
#include "finitude/rational_function.hpp"
#include "finitude/roots.hpp"

namespace finitude {

/// Exponents of u, u', u'', ... (trailing zeros trimmed).
using JetMonomial = std::vector<int>;

/// Canonical term order: higher derivative order first, then larger exponents
/// of the highest derivatives.
struct JetOrder {
  bool operator()(const JetMonomial& a, const JetMonomial& b) const;
};

/// Polynomial in the jets of u over C(x).
class DifferentialPolynomial {
 public:
  DifferentialPolynomial() = default;
  DifferentialPolynomial(const RationalFunction& c);  // NOLINT(google-explicit-constructor)
  static DifferentialPolynomial jet(int order);        // u^(order)

  const std::map<JetMonomial, RationalFunction, JetOrder>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Highest derivative present, -1 when u does not occur.
  int jet_order() const;
  int degree() const;
  /// Sum of the terms of the given total degree in the jets.
  DifferentialPolynomial homogeneous_part(int degree) const;
  RationalFunction coeff(const JetMonomial& m) const;

  /// Total derivative in x.
  DifferentialPolynomial derivative() const;
  /// Value at u = the given rational function.
  RationalFunction evaluate(const RationalFunction& u) const;

  DifferentialPolynomial& operator+=(const DifferentialPolynomial& o);
  DifferentialPolynomial& operator-=(const DifferentialPolynomial& o);
  DifferentialPolynomial& operator*=(const DifferentialPolynomial& o);
  friend DifferentialPolynomial operator+(DifferentialPolynomial a, const DifferentialPolynomial& b) { return a += b; }
  friend DifferentialPolynomial operator-(DifferentialPolynomial a, const DifferentialPolynomial& b) { return a -= b; }
  friend DifferentialPolynomial operator*(DifferentialPolynomial a, const DifferentialPolynomial& b) { return a *= b; }
  friend bool operator==(const DifferentialPolynomial& a, const DifferentialPolynomial& b) { return a.terms_ == b.terms_; }
  DifferentialPolynomial pow(int e) const;

  /// u, u', u'', u''' and u(k) for k >= 4; powers as u'^2.
  std::string to_string() const;

 private:
  void add_term(const JetMonomial& m, const RationalFunction& c);
  std::map<JetMonomial, RationalFunction, JetOrder> terms_;
};

/// y^(n) + a_1 y^(n-1) + ... + a_n y = 0.
struct LinearODE {
  std::vector<RationalFunction> coeffs;  // a_1 .. a_n
  int order() const { return static_cast<int>(coeffs.size()); }
};

/// Largest n accepted by d_sequence.
inline constexpr int kMaxJetOrder = 12;

/// D_0 .. D_n with D_0 = 1 and D_{k+1} = D_k' + u D_k. Throws OrderTooLarge.
std::vector<DifferentialPolynomial> d_sequence(int n);

/// D_n + a_1 D_{n-1} + ... + a_n D_0.
DifferentialPolynomial generalized_riccati(const LinearODE& ode);

/// Terms of D_n + a_1 D_{n-1} + ... + a_n D_0 with symbolic coefficients
/// a_1 .. a_n, e.g. {"u'", "u^2", "a_1*u", "a_2"} for n = 2.
std::vector<std::string> generalized_riccati_symbolic(int n);

/// Polynomial in x_0..x_n (exponent vectors) with rational-function coefficients.
using JetSubstitution = std::map<std::vector<int>, RationalFunction>;

JetSubstitution from_sparse(const SparsePolynomial& q);

/// Q(D_0, ..., D_n). Throws NotHomogeneous, ZeroPolynomial.
DifferentialPolynomial generalized_riccati_homogeneous(const JetSubstitution& q);

struct XiWeight {
  bool satisfied = false;
  int weight = 0;             // max over monomials of sum i * p_i
  RationalFunction top_sum;   // sum of the coefficients of maximal weight
};

XiWeight xi_weighted_check(const JetSubstitution& q);

/// True when u makes the generalized Riccati polynomial vanish identically.
bool verify_exp_integral_witness(const LinearODE& ode, const RationalFunction& u);

struct WitnessOptions {
  int min_bound = 10;  // polynomial-factor degree bound is max(min_bound, pole data + 2)
  int threads = 1;
};

struct WitnessSearch {
  std::vector<RationalFunction> witnesses;  // canonical order, each verified
  int bound = 0;
  int families = 0;                         // sign families examined
  std::optional<ErrorCode> status;          // NoneFound, BoundExceeded or IrrationalPole when empty
  std::vector<std::string> notes;
};

/// Rational solutions u of u' + u^2 + a_1 u + a_2 = 0 for second-order
/// equations, from the local data of the normal form. Throws InvalidArgument
/// for other orders.
WitnessSearch rational_witness_search(const LinearODE& ode, const WitnessOptions& options = {});

/// lambda * log(arg) with lambda in Q(i).
struct LogTerm {
  GR lambda;
  Polynomial arg;
};

/// Sum of lambda * log S(lambda, x) over the roots of an irreducible-over-Q(i)
/// factor: minimal is squarefree without Gaussian rational roots, arg holds
/// S with powers of x as the y-variable and coefficients polynomial in lambda.
struct AlgebraicLogSum {
  Polynomial minimal;
  BivariatePolynomial arg;
  std::vector<ComplexInterval> lambdas;
};

struct LiouvilleForm {
  RationalFunction r0;
  std::vector<LogTerm> logs;
  std::vector<AlgebraicLogSum> algebraic_logs;
};

/// Hermite reduction followed by the Lazard-Rioboo-Trager logarithmic part.
LiouvilleForm integrate_rational(const RationalFunction& f);

/// Exact derivative of the form (algebraic sums through traces).
RationalFunction liouville_derivative(const LiouvilleForm& form);

std::string log_argument_string(const AlgebraicLogSum& s);

}  // namespace finitude
