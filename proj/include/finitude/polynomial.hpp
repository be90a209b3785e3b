#pragma once

#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "finitude/number.hpp"

namespace finitude {

/// Dense univariate polynomial over Q(i), coefficients lowest degree first.
/// The zero polynomial has no coefficients; otherwise the last one is nonzero.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<GR> coeffs);
  Polynomial(const GR& c);  // NOLINT(google-explicit-constructor): constants
  Polynomial(long c) : Polynomial(GR(c)) {}  // NOLINT
  Polynomial(int c) : Polynomial(GR(static_cast<long>(c))) {}  // NOLINT

  static Polynomial x() { return monomial(GR(1), 1); }
  static Polynomial monomial(const GR& c, int degree);

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  const std::vector<GR>& coeffs() const { return c_; }
  GR coeff(int k) const { return k >= 0 && k < static_cast<int>(c_.size()) ? c_[k] : GR(0); }
  GR leading() const { return c_.empty() ? GR(0) : c_.back(); }
  bool has_real_coeffs() const;

  Polynomial monic() const;
  Polynomial derivative() const;
  Polynomial integral() const;  // antiderivative with zero constant term
  GR operator()(const GR& v) const;
  std::complex<double> eval(std::complex<double> z) const;
  std::complex<long double> eval(std::complex<long double> z) const;
  Polynomial compose(const Polynomial& inner) const;  // this(inner(x))
  Polynomial shift(const GR& a) const;                 // this(x + a)
  Polynomial pow(int e) const;
  Polynomial conj() const;                              // conjugate coefficients

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Polynomial& o);
  Polynomial& operator*=(const GR& s);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Polynomial& b) { return a *= b; }
  friend Polynomial operator*(Polynomial a, const GR& s) { return a *= s; }
  friend Polynomial operator*(const GR& s, Polynomial a) { return a *= s; }
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

  /// Euclidean division; throws ZeroPolynomial on a zero divisor.
  std::pair<Polynomial, Polynomial> divmod(const Polynomial& d) const;
  Polynomial operator/(const Polynomial& d) const { return divmod(d).first; }
  Polynomial operator%(const Polynomial& d) const { return divmod(d).second; }
  /// Division known to be exact; throws InvalidArgument when it is not.
  Polynomial exact_div(const Polynomial& d) const;

  /// Complex-double coefficient vector, lowest degree first.
  std::vector<std::complex<double>> to_complex() const;
  std::vector<std::complex<long double>> to_complex_ld() const;

  /// Text in the parser grammar using the given variable name.
  std::string to_string(const std::string& var = "x") const;

 private:
  void trim();
  std::vector<GR> c_;
};

/// Monic gcd; gcd(0, 0) = 0.
Polynomial gcd(const Polynomial& a, const Polynomial& b);

/// Solves s*a + t*b = c for (s, t) with deg s < deg b (requires gcd(a,b) | c).
std::pair<Polynomial, Polynomial> extended_euclid(const Polynomial& a, const Polynomial& b,
                                                  const Polynomial& c);

/// Yun's algorithm: p = lc * prod f_i^i with monic, square-free, pairwise
/// coprime f_i. Returned as (factor, multiplicity), units dropped.
std::vector<std::pair<Polynomial, int>> squarefree_factorization(const Polynomial& p);

/// Product of the distinct monic irreducible-free factors: p / gcd(p, p').
Polynomial squarefree_part(const Polynomial& p);

/// Roots of p that lie in Q(i), found numerically and verified exactly,
/// with multiplicities.
std::vector<std::pair<GR, int>> gaussian_rational_roots(const Polynomial& p);

}  // namespace finitude
