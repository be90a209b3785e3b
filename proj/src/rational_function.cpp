#include "finitude/rational_function.hpp"

#include <climits>

#include "finitude/error.hpp"

namespace finitude {

RationalFunction::RationalFunction(Polynomial num) : num_(std::move(num)), den_(GR(1)) {}

RationalFunction::RationalFunction(Polynomial num, Polynomial den)
    : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) fail(ErrorCode::DivisionByZero, "rational function with zero denominator");
  normalize();
}

void RationalFunction::normalize() {
  if (num_.is_zero()) {
    den_ = Polynomial(GR(1));
    return;
  }
  if (den_.degree() > 0) {
    Polynomial g = gcd(num_, den_);
    if (g.degree() > 0) {
      num_ = num_.exact_div(g);
      den_ = den_.exact_div(g);
    }
  }
  GR lc = den_.leading();
  if (!lc.is_one()) {
    GR inv = GR(1) / lc;
    num_ *= inv;
    den_ *= inv;
  }
}

RationalFunction RationalFunction::derivative() const {
  if (is_polynomial()) return RationalFunction(num_.derivative());
  return RationalFunction(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
}

GR RationalFunction::operator()(const GR& v) const {
  GR d = den_(v);
  if (d.is_zero()) fail(ErrorCode::DivisionByZero, "rational function evaluated at a pole");
  return num_(v) / d;
}

RationalFunction RationalFunction::pow(int e) const {
  if (e < 0) return RationalFunction(GR(1)) / pow(-e);
  RationalFunction r;
  r.num_ = num_.pow(e);
  r.den_ = den_.pow(e);
  return r;  // already reduced and monic
}

int RationalFunction::order_at_infinity() const {
  if (num_.is_zero()) return INT_MAX;
  return den_.degree() - num_.degree();
}

RationalFunction& RationalFunction::operator+=(const RationalFunction& o) {
  if (den_ == o.den_) {
    num_ += o.num_;
  } else {
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ = den_ * o.den_;
  }
  normalize();
  return *this;
}

RationalFunction& RationalFunction::operator-=(const RationalFunction& o) {
  return *this += -o;
}

RationalFunction& RationalFunction::operator*=(const RationalFunction& o) {
  num_ *= o.num_;
  den_ *= o.den_;
  normalize();
  return *this;
}

RationalFunction& RationalFunction::operator/=(const RationalFunction& o) {
  if (o.is_zero()) fail(ErrorCode::DivisionByZero, "division by zero rational function");
  num_ *= o.den_;
  den_ *= o.num_;
  normalize();
  return *this;
}

std::string RationalFunction::to_string(const std::string& var) const {
  if (is_polynomial()) return num_.to_string(var);
  std::string n = num_.to_string(var);
  std::string d = den_.to_string(var);
  auto wrap = [](const std::string& s, bool single) { return single ? s : "(" + s + ")"; };
  const bool n_single = n.find(' ') == std::string::npos;
  const bool d_single = d.find_first_of(" *") == std::string::npos;
  return wrap(n, n_single) + "/" + wrap(d, d_single);
}

}  // namespace finitude
