#include "finitude/polynomial.hpp"

#include <algorithm>

#include "finitude/error.hpp"

namespace finitude {

Polynomial::Polynomial(std::vector<GR> coeffs) : c_(std::move(coeffs)) { trim(); }

Polynomial::Polynomial(const GR& c) {
  if (!c.is_zero()) c_.push_back(c);
}

Polynomial Polynomial::monomial(const GR& c, int degree) {
  if (c.is_zero()) return {};
  std::vector<GR> v(static_cast<std::size_t>(degree) + 1);
  v.back() = c;
  return Polynomial(std::move(v));
}

void Polynomial::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

bool Polynomial::has_real_coeffs() const {
  return std::all_of(c_.begin(), c_.end(), [](const GR& g) { return g.is_real(); });
}

Polynomial Polynomial::monic() const {
  if (is_zero()) return {};
  GR inv = GR(1) / leading();
  Polynomial r = *this;
  for (auto& c : r.c_) c *= inv;
  return r;
}

Polynomial Polynomial::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<GR> d(c_.size() - 1);
  for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * GR(static_cast<long>(k));
  return Polynomial(std::move(d));
}

Polynomial Polynomial::integral() const {
  if (is_zero()) return {};
  std::vector<GR> d(c_.size() + 1);
  for (std::size_t k = 0; k < c_.size(); ++k) d[k + 1] = c_[k] / GR(static_cast<long>(k + 1));
  return Polynomial(std::move(d));
}

GR Polynomial::operator()(const GR& v) const {
  GR acc(0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    acc *= v;
    acc += *it;
  }
  return acc;
}

std::complex<double> Polynomial::eval(std::complex<double> z) const {
  std::complex<double> acc(0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + it->to_complex();
  return acc;
}

std::complex<long double> Polynomial::eval(std::complex<long double> z) const {
  std::complex<long double> acc(0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + it->to_complex_ld();
  return acc;
}

Polynomial Polynomial::compose(const Polynomial& inner) const {
  Polynomial acc;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    acc *= inner;
    acc += Polynomial(*it);
  }
  return acc;
}

Polynomial Polynomial::shift(const GR& a) const {
  return compose(Polynomial(std::vector<GR>{a, GR(1)}));
}

Polynomial Polynomial::pow(int e) const {
  if (e < 0) fail(ErrorCode::InvalidArgument, "negative polynomial power");
  Polynomial result(GR(1)), base = *this;
  while (e > 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return result;
}

Polynomial Polynomial::conj() const {
  Polynomial r = *this;
  for (auto& c : r.c_) c = c.conj();
  return r;
}

Polynomial Polynomial::operator-() const {
  Polynomial r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
  trim();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
  trim();
  return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& o) {
  if (is_zero() || o.is_zero()) {
    c_.clear();
    return *this;
  }
  std::vector<GR> r(c_.size() + o.c_.size() - 1);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) {
      if (o.c_[j].is_zero()) continue;
      r[i + j] += c_[i] * o.c_[j];
    }
  }
  c_ = std::move(r);
  trim();
  return *this;
}

Polynomial& Polynomial::operator*=(const GR& s) {
  if (s.is_zero()) {
    c_.clear();
    return *this;
  }
  for (auto& c : c_) c *= s;
  return *this;
}

std::pair<Polynomial, Polynomial> Polynomial::divmod(const Polynomial& d) const {
  if (d.is_zero()) fail(ErrorCode::ZeroPolynomial, "polynomial division by zero");
  if (degree() < d.degree()) return {Polynomial(), *this};
  std::vector<GR> rem = c_;
  std::vector<GR> quo(static_cast<std::size_t>(degree() - d.degree() + 1));
  const GR inv = GR(1) / d.leading();
  const int dd = d.degree();
  for (int k = degree(); k >= dd; --k) {
    if (rem[k].is_zero()) continue;
    GR q = rem[k] * inv;
    quo[k - dd] = q;
    for (int j = 0; j <= dd; ++j) rem[k - dd + j] -= q * d.c_[j];
  }
  rem.resize(static_cast<std::size_t>(dd));
  return {Polynomial(std::move(quo)), Polynomial(std::move(rem))};
}

Polynomial Polynomial::exact_div(const Polynomial& d) const {
  auto [q, r] = divmod(d);
  if (!r.is_zero()) fail(ErrorCode::InvalidArgument, "polynomial division is not exact");
  return q;
}

std::vector<std::complex<double>> Polynomial::to_complex() const {
  std::vector<std::complex<double>> v;
  v.reserve(c_.size());
  for (const auto& c : c_) v.push_back(c.to_complex());
  return v;
}

std::vector<std::complex<long double>> Polynomial::to_complex_ld() const {
  std::vector<std::complex<long double>> v;
  v.reserve(c_.size());
  for (const auto& c : c_) v.push_back(c.to_complex_ld());
  return v;
}

std::string Polynomial::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::string out;
  for (int k = degree(); k >= 0; --k) {
    const GR& c = c_[k];
    if (c.is_zero()) continue;
    std::string coef = c.to_string();
    bool negative = coef[0] == '-';
    if (negative) coef = coef.substr(1);
    if (!out.empty()) out += negative ? " - " : " + ";
    else if (negative) out += "-";
    std::string mono;
    if (k == 1) mono = var;
    else if (k > 1) mono = var + "^" + std::to_string(k);
    if (mono.empty()) out += coef;
    else if (coef == "1") out += mono;
    else out += coef + "*" + mono;
  }
  return out;
}

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  Polynomial r0 = a, r1 = b;
  while (!r1.is_zero()) {
    Polynomial r2 = r0 % r1;
    r0 = std::move(r1);
    r1 = r2.monic();
  }
  return r0.monic();
}

std::pair<Polynomial, Polynomial> extended_euclid(const Polynomial& a, const Polynomial& b,
                                                  const Polynomial& c) {
  // Track s with s*a == r (mod b).
  Polynomial r0 = a, r1 = b, s0(GR(1)), s1;
  while (!r1.is_zero()) {
    auto [q, r2] = r0.divmod(r1);
    Polynomial s2 = s0 - q * s1;
    r0 = std::move(r1);
    r1 = std::move(r2);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  // r0 = g = s0*a + t0*b
  auto [cq, cr] = c.divmod(r0);
  if (!cr.is_zero()) fail(ErrorCode::InvalidArgument, "extended_euclid: gcd does not divide c");
  Polynomial s = s0 * cq;
  if (!b.is_zero() && b.degree() > 0) s = s % b;
  Polynomial t = (c - s * a).exact_div(b.is_zero() ? Polynomial(GR(1)) : b);
  return {s, t};
}

std::vector<std::pair<Polynomial, int>> squarefree_factorization(const Polynomial& p) {
  if (p.is_zero()) fail(ErrorCode::ZeroPolynomial, "squarefree factorization of zero");
  std::vector<std::pair<Polynomial, int>> out;
  if (p.degree() == 0) return out;
  Polynomial f = p.monic();
  Polynomial fp = f.derivative();
  Polynomial a = gcd(f, fp);
  Polynomial b = f.exact_div(a);
  Polynomial c = fp.exact_div(a);
  Polynomial d = c - b.derivative();
  int i = 1;
  while (b.degree() > 0) {
    Polynomial g = gcd(b, d);
    if (g.degree() > 0) out.emplace_back(g, i);
    b = b.exact_div(g);
    c = d.exact_div(g);
    d = c - b.derivative();
    ++i;
  }
  return out;
}

Polynomial squarefree_part(const Polynomial& p) {
  if (p.is_zero()) fail(ErrorCode::ZeroPolynomial, "squarefree part of zero");
  if (p.degree() <= 0) return Polynomial(GR(1));
  return p.monic().exact_div(gcd(p, p.derivative()));
}

}  // namespace finitude
