#pragma once

#include <complex>
#include <string>

#include "finitude/polynomial.hpp"

namespace finitude {

/// numerator / denominator over Q(i), kept reduced with a monic denominator.
class RationalFunction {
 public:
  RationalFunction() : den_(GR(1)) {}
  RationalFunction(Polynomial num);  // NOLINT(google-explicit-constructor)
  RationalFunction(const GR& c) : RationalFunction(Polynomial(c)) {}  // NOLINT
  RationalFunction(long c) : RationalFunction(Polynomial(GR(c))) {}   // NOLINT
  RationalFunction(Polynomial num, Polynomial den);

  static RationalFunction x() { return RationalFunction(Polynomial::x()); }

  const Polynomial& numerator() const { return num_; }
  const Polynomial& denominator() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.degree() == 0; }
  bool is_constant() const { return is_polynomial() && num_.degree() <= 0; }

  RationalFunction derivative() const;
  std::complex<double> eval(std::complex<double> z) const { return num_.eval(z) / den_.eval(z); }
  GR operator()(const GR& v) const;
  RationalFunction pow(int e) const;
  /// Order at infinity: deg den - deg num (+infinity encoded as INT_MAX for zero).
  int order_at_infinity() const;

  RationalFunction operator-() const { return RationalFunction(-num_, den_); }
  RationalFunction& operator+=(const RationalFunction& o);
  RationalFunction& operator-=(const RationalFunction& o);
  RationalFunction& operator*=(const RationalFunction& o);
  RationalFunction& operator/=(const RationalFunction& o);
  friend RationalFunction operator+(RationalFunction a, const RationalFunction& b) { return a += b; }
  friend RationalFunction operator-(RationalFunction a, const RationalFunction& b) { return a -= b; }
  friend RationalFunction operator*(RationalFunction a, const RationalFunction& b) { return a *= b; }
  friend RationalFunction operator/(RationalFunction a, const RationalFunction& b) { return a /= b; }
  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const RationalFunction& a, const RationalFunction& b) { return !(a == b); }

  std::string to_string(const std::string& var = "x") const;

 private:
  void normalize();
  Polynomial num_;
  Polynomial den_;
};

}  // namespace finitude
