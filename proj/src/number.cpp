#include "finitude/number.hpp"

#include <cmath>

#include "finitude/error.hpp"

namespace finitude {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::Ok: return "Ok";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::UndeclaredVariable: return "UndeclaredVariable";
    case ErrorCode::NonPolynomialExponent: return "NonPolynomialExponent";
    case ErrorCode::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorCode::DegreeTooLow: return "DegreeTooLow";
    case ErrorCode::IterationLimitExceeded: return "IterationLimitExceeded";
    case ErrorCode::NonExactCenter: return "NonExactCenter";
    case ErrorCode::OrderTooSmall: return "OrderTooSmall";
    case ErrorCode::NumericBreakdown: return "NumericBreakdown";
    case ErrorCode::SquareFreeRequired: return "SquareFreeRequired";
    case ErrorCode::BasePointTooClose: return "BasePointTooClose";
    case ErrorCode::PathCollision: return "PathCollision";
    case ErrorCode::SingularOnPath: return "SingularOnPath";
    case ErrorCode::DegreeTooLarge: return "DegreeTooLarge";
    case ErrorCode::SearchBudgetExceeded: return "SearchBudgetExceeded";
    case ErrorCode::NotTransitive: return "NotTransitive";
    case ErrorCode::NotApplicable: return "NotApplicable";
    case ErrorCode::ReducibleInput: return "ReducibleInput";
    case ErrorCode::UnsupportedGroup: return "UnsupportedGroup";
    case ErrorCode::RationalizationFailed: return "RationalizationFailed";
    case ErrorCode::OrderTooLarge: return "OrderTooLarge";
    case ErrorCode::NotHomogeneous: return "NotHomogeneous";
    case ErrorCode::NoneFound: return "NoneFound";
    case ErrorCode::BoundExceeded: return "BoundExceeded";
    case ErrorCode::StepSizeUnderflow: return "StepSizeUnderflow";
    case ErrorCode::ToleranceAmbiguous: return "ToleranceAmbiguous";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::IrrationalPole: return "IrrationalPole";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

Rational::Rational(const mpz_class& num, const mpz_class& den) {
  if (den == 0) fail(ErrorCode::DivisionByZero, "rational with zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

Rational Rational::from_string(const std::string& text) {
  mpq_class q;
  if (q.set_str(text, 10) != 0 || q.get_den() == 0)
    fail(ErrorCode::InvalidArgument, "not a rational literal: " + text);
  q.canonicalize();
  return Rational(q);
}

long double Rational::to_long_double() const {
  // Head plus correction keeps ~100 bits before rounding to long double.
  mpf_class f(q_, 192);
  const double head = f.get_d();
  mpf_class rest = f - mpf_class(head, 192);
  return static_cast<long double>(head) + static_cast<long double>(rest.get_d());
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) fail(ErrorCode::DivisionByZero, "division by zero rational");
  q_ /= o.q_;
  return *this;
}

Rational Rational::pow(long e) const {
  if (e < 0) return Rational(1) / pow(-e);
  mpz_class n, d;
  mpz_pow_ui(n.get_mpz_t(), q_.get_num_mpz_t(), static_cast<unsigned long>(e));
  mpz_pow_ui(d.get_mpz_t(), q_.get_den_mpz_t(), static_cast<unsigned long>(e));
  return Rational(n, d);
}

mpz_class Rational::floor() const {
  mpz_class r;
  mpz_fdiv_q(r.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
  return r;
}

std::optional<Rational> Rational::sqrt() const {
  if (sign() < 0) return std::nullopt;
  if (!mpz_perfect_square_p(q_.get_num_mpz_t()) || !mpz_perfect_square_p(q_.get_den_mpz_t()))
    return std::nullopt;
  mpz_class n, d;
  mpz_sqrt(n.get_mpz_t(), q_.get_num_mpz_t());
  mpz_sqrt(d.get_mpz_t(), q_.get_den_mpz_t());
  return Rational(n, d);
}

Rational Rational::approximate(double v, const mpz_class& max_den) {
  if (!std::isfinite(v)) fail(ErrorCode::InvalidArgument, "cannot rationalize non-finite value");
  const bool neg = v < 0;
  mpq_class x(std::fabs(v));  // exact binary value
  mpz_class p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  for (int iter = 0; iter < 64; ++iter) {
    mpz_class a;
    mpz_fdiv_q(a.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    mpz_class p2 = a * p1 + p0;
    mpz_class q2 = a * q1 + q0;
    if (q2 > max_den) break;
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    mpq_class frac = x - mpq_class(a);
    if (frac == 0) break;
    x = 1 / frac;
  }
  if (q1 == 0) return Rational(0);
  Rational r(p1, q1);
  return neg ? -r : r;
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
  if (im_.is_zero() && o.im_.is_zero()) {
    re_ *= o.re_;
    return *this;
  }
  Rational r = re_ * o.re_ - im_ * o.im_;
  Rational i = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(r);
  im_ = std::move(i);
  return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
  if (o.is_zero()) fail(ErrorCode::DivisionByZero, "division by zero Gaussian rational");
  if (o.im_.is_zero()) {
    re_ /= o.re_;
    im_ /= o.re_;
    return *this;
  }
  Rational n = o.norm();
  GaussianRational num = *this * o.conj();
  re_ = num.re_ / n;
  im_ = num.im_ / n;
  return *this;
}

GaussianRational GaussianRational::pow(long e) const {
  if (e < 0) return GaussianRational(1) / pow(-e);
  GaussianRational result(1), base = *this;
  while (e > 0) {
    if (e & 1) result *= base;
    base *= base;
    e >>= 1;
  }
  return result;
}

std::optional<GaussianRational> GaussianRational::sqrt() const {
  if (im_.is_zero()) {
    if (re_.sign() >= 0) {
      auto r = re_.sqrt();
      if (!r) return std::nullopt;
      return GaussianRational(*r);
    }
    auto r = (-re_).sqrt();
    if (!r) return std::nullopt;
    return GaussianRational(Rational(0), *r);
  }
  auto modulus = norm().sqrt();
  if (!modulus) return std::nullopt;
  auto a = ((*modulus + re_) / Rational(2)).sqrt();
  auto b = ((*modulus - re_) / Rational(2)).sqrt();
  if (!a || !b) return std::nullopt;
  Rational bb = im_.sign() < 0 ? -*b : *b;
  GaussianRational root(*a, bb);
  if (root * root != *this) return std::nullopt;
  return root;
}

std::optional<GaussianRational> GaussianRational::recognize(std::complex<double> z,
                                                            double rel_tol, long max_den) {
  const double scale = std::max(1.0, std::abs(z));
  Rational re = Rational::approximate(z.real(), mpz_class(max_den));
  Rational im = Rational::approximate(z.imag(), mpz_class(max_den));
  if (std::fabs(re.to_double() - z.real()) > rel_tol * scale) return std::nullopt;
  if (std::fabs(im.to_double() - z.imag()) > rel_tol * scale) return std::nullopt;
  return GaussianRational(re, im);
}

std::string GaussianRational::to_string() const {
  if (im_.is_zero()) return re_.to_string();
  auto imag_part = [](const Rational& v) {
    if (v == Rational(1)) return std::string("I");
    if (v == Rational(-1)) return std::string("-I");
    return v.to_string() + "*I";
  };
  if (re_.is_zero()) {
    if (im_ == Rational(1)) return "I";
    return "(" + imag_part(im_) + ")";
  }
  std::string s = "(" + re_.to_string();
  std::string ip = imag_part(im_);
  if (ip[0] != '-') s += "+";
  return s + ip + ")";
}

}  // namespace finitude
