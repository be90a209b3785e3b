#pragma once

// Exact scalars: arbitrary-precision rationals and Gaussian rationals.

#include <gmpxx.h>

#include <complex>
#include <optional>
#include <string>

namespace finitude {

/// Reduced fraction with positive denominator; thin wrapper over mpq_class so
/// the normalization invariant is enforced at every construction site.
class Rational {
 public:
  Rational() = default;
  Rational(long v) : q_(v) {}  // NOLINT(google-explicit-constructor)
  Rational(int v) : q_(v) {}   // NOLINT(google-explicit-constructor)
  Rational(const mpz_class& num, const mpz_class& den);
  explicit Rational(const mpq_class& q) : q_(q) { q_.canonicalize(); }

  /// Parses "k", "-k" or "k/m".
  static Rational from_string(const std::string& text);

  const mpq_class& value() const { return q_; }
  mpz_class numerator() const { return q_.get_num(); }
  mpz_class denominator() const { return q_.get_den(); }

  bool is_zero() const { return sgn(q_) == 0; }
  bool is_integer() const { return q_.get_den() == 1; }
  int sign() const { return sgn(q_); }
  double to_double() const { return q_.get_d(); }
  long double to_long_double() const;
  std::string to_string() const { return q_.get_str(); }

  Rational operator-() const { return Rational(mpq_class(-q_)); }
  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.q_ < b.q_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.q_ <= b.q_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.q_ > b.q_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.q_ >= b.q_; }

  Rational abs() const { return Rational(mpq_class(::abs(q_))); }
  Rational pow(long e) const;
  mpz_class floor() const;

  /// Exact square root when the value is the square of a rational.
  std::optional<Rational> sqrt() const;

  /// Best rational approximation with denominator <= max_den (continued fractions).
  static Rational approximate(double v, const mpz_class& max_den);

 private:
  mpq_class q_;
};

/// a + b*i with a, b rational. The field Q(i).
class GaussianRational {
 public:
  GaussianRational() = default;
  GaussianRational(long v) : re_(v) {}  // NOLINT(google-explicit-constructor)
  GaussianRational(int v) : re_(v) {}   // NOLINT(google-explicit-constructor)
  GaussianRational(Rational re) : re_(std::move(re)) {}  // NOLINT
  GaussianRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

  static GaussianRational i() { return {Rational(0), Rational(1)}; }

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
  bool is_one() const { return im_.is_zero() && re_ == Rational(1); }
  bool is_real() const { return im_.is_zero(); }
  GaussianRational conj() const { return {re_, -im_}; }
  Rational norm() const { return re_ * re_ + im_ * im_; }
  std::complex<double> to_complex() const { return {re_.to_double(), im_.to_double()}; }
  std::complex<long double> to_complex_ld() const {
    return {re_.to_long_double(), im_.to_long_double()};
  }

  GaussianRational operator-() const { return {-re_, -im_}; }
  GaussianRational& operator+=(const GaussianRational& o);
  GaussianRational& operator-=(const GaussianRational& o);
  GaussianRational& operator*=(const GaussianRational& o);
  GaussianRational& operator/=(const GaussianRational& o);

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

  GaussianRational pow(long e) const;

  /// Exact square root in Q(i) if one exists (the one with positive real
  /// part, or positive imaginary part when the real part vanishes).
  std::optional<GaussianRational> sqrt() const;

  /// Recognizes z as a Gaussian rational with denominators <= max_den when
  /// it is within rel_tol of one.
  static std::optional<GaussianRational> recognize(std::complex<double> z, double rel_tol,
                                                   long max_den = 1000000);

  /// Text in the parser grammar: "3/4", "-2", "(1/2+3*I)", "I".
  std::string to_string() const;

  /// Total order used only for canonical sorting (re first, then im).
  friend bool canonical_less(const GaussianRational& a, const GaussianRational& b) {
    if (a.re_ == b.re_) return a.im_ < b.im_;
    return a.re_ < b.re_;
  }

 private:
  Rational re_;
  Rational im_;
};

using GR = GaussianRational;

}  // namespace finitude
