#pragma once

#include <complex>
#include <string>
#include <vector>

#include "finitude/polynomial.hpp"

namespace finitude {

/// P(x, y) = sum_j c_j(x) y^j stored densely by powers of y; each c_j is a
/// dense polynomial in x, so the whole thing is a (deg_x+1) x (deg_y+1) grid.
class BivariatePolynomial {
 public:
  BivariatePolynomial() = default;
  explicit BivariatePolynomial(std::vector<Polynomial> y_coeffs);

  static BivariatePolynomial from_x(const Polynomial& p);  // y-free
  static BivariatePolynomial y() { return BivariatePolynomial({Polynomial(), Polynomial(GR(1))}); }

  int degree_y() const { return static_cast<int>(c_.size()) - 1; }
  int degree_x() const;
  bool is_zero() const { return c_.empty(); }
  const std::vector<Polynomial>& y_coeffs() const { return c_; }
  const Polynomial& y_coeff(int j) const;
  GR coeff(int i, int j) const { return y_coeff(j).coeff(i); }
  const Polynomial& leading_y() const { return y_coeff(degree_y()); }

  BivariatePolynomial derivative_y() const;
  BivariatePolynomial derivative_x() const;
  /// P(v, y) as a polynomial in y.
  Polynomial at_x(const GR& v) const;
  std::vector<std::complex<double>> at_x(std::complex<double> v) const;
  /// P(x + a, y).
  BivariatePolynomial shift_x(const GR& a) const;
  /// P(x, y) with y replaced by the polynomial q(x).
  Polynomial substitute_y(const Polynomial& q) const;
  /// Content in y: gcd of the coefficient polynomials; primitive part divides it out.
  Polynomial content_y() const;
  BivariatePolynomial primitive_part_y() const;
  /// Multiply every coefficient (used to clear denominators).
  BivariatePolynomial scaled(const Polynomial& p) const;
  BivariatePolynomial conj() const;

  BivariatePolynomial operator-() const;
  BivariatePolynomial& operator+=(const BivariatePolynomial& o);
  BivariatePolynomial& operator-=(const BivariatePolynomial& o);
  BivariatePolynomial& operator*=(const BivariatePolynomial& o);
  friend BivariatePolynomial operator+(BivariatePolynomial a, const BivariatePolynomial& b) { return a += b; }
  friend BivariatePolynomial operator-(BivariatePolynomial a, const BivariatePolynomial& b) { return a -= b; }
  friend BivariatePolynomial operator*(BivariatePolynomial a, const BivariatePolynomial& b) { return a *= b; }
  friend bool operator==(const BivariatePolynomial& a, const BivariatePolynomial& b) { return a.c_ == b.c_; }
  BivariatePolynomial pow(int e) const;

  std::string to_string(const std::string& xvar = "x", const std::string& yvar = "y") const;

 private:
  void trim();
  std::vector<Polynomial> c_;
};

/// Determinant of the Sylvester matrix of P and Q with respect to y, P's rows
/// first and coefficients written highest degree first. With this convention
/// Res(y - a, y - b) = a - b and Res(y^2 - x, 2y) = -4x.
Polynomial resultant_y(const BivariatePolynomial& p, const BivariatePolynomial& q);

/// (-1)^(n(n-1)/2) * Res_y(P, dP/dy) / lc_y(P). Throws DegreeTooLow when deg_y P < 2.
Polynomial discriminant_y(const BivariatePolynomial& p);

/// Subresultant polynomials S_0..S_n of P and Q with respect to y, where
/// n = deg_y Q <= deg_y P, indexed by formal degree. S_0 is the resultant;
/// each S_j (j < n) is the determinant polynomial of the Sylvester submatrix.
std::vector<BivariatePolynomial> subresultants_y(const BivariatePolynomial& p,
                                                 const BivariatePolynomial& q);

}  // namespace finitude
