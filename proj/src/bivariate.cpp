#include "finitude/bivariate.hpp"

#include <algorithm>

#include "finitude/error.hpp"

namespace finitude {

namespace {

const Polynomial kZero{};

// Fraction-free (Bareiss) determinant over Q(i)[x]. All divisions are exact.
Polynomial bareiss_determinant(std::vector<std::vector<Polynomial>> m) {
  const std::size_t n = m.size();
  if (n == 0) return Polynomial(GR(1));
  bool negate = false;
  Polynomial prev(GR(1));
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      std::size_t swap = k + 1;
      while (swap < n && m[swap][k].is_zero()) ++swap;
      if (swap == n) return {};
      std::swap(m[k], m[swap]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Polynomial v = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        m[i][j] = v.exact_div(prev);
      }
    }
    prev = m[k][k];
  }
  Polynomial det = m[n - 1][n - 1];
  return negate ? -det : det;
}

// Row of coefficients of y^shift * P over columns y^(width-1) .. y^0.
std::vector<Polynomial> shifted_row(const BivariatePolynomial& p, int shift, int width) {
  std::vector<Polynomial> row(static_cast<std::size_t>(width));
  for (int j = 0; j <= p.degree_y(); ++j) {
    int power = j + shift;
    int col = width - 1 - power;
    if (col >= 0 && col < width) row[static_cast<std::size_t>(col)] = p.y_coeff(j);
  }
  return row;
}

}  // namespace

BivariatePolynomial::BivariatePolynomial(std::vector<Polynomial> y_coeffs) : c_(std::move(y_coeffs)) {
  trim();
}

BivariatePolynomial BivariatePolynomial::from_x(const Polynomial& p) {
  return BivariatePolynomial(std::vector<Polynomial>{p});
}

void BivariatePolynomial::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

int BivariatePolynomial::degree_x() const {
  int d = -1;
  for (const auto& c : c_) d = std::max(d, c.degree());
  return d;
}

const Polynomial& BivariatePolynomial::y_coeff(int j) const {
  if (j < 0 || j >= static_cast<int>(c_.size())) return kZero;
  return c_[static_cast<std::size_t>(j)];
}

BivariatePolynomial BivariatePolynomial::derivative_y() const {
  std::vector<Polynomial> d;
  for (std::size_t j = 1; j < c_.size(); ++j) d.push_back(c_[j] * GR(static_cast<long>(j)));
  return BivariatePolynomial(std::move(d));
}

BivariatePolynomial BivariatePolynomial::derivative_x() const {
  std::vector<Polynomial> d;
  for (const auto& c : c_) d.push_back(c.derivative());
  return BivariatePolynomial(std::move(d));
}

Polynomial BivariatePolynomial::at_x(const GR& v) const {
  std::vector<GR> r;
  r.reserve(c_.size());
  for (const auto& c : c_) r.push_back(c(v));
  return Polynomial(std::move(r));
}

std::vector<std::complex<double>> BivariatePolynomial::at_x(std::complex<double> v) const {
  std::vector<std::complex<double>> r;
  r.reserve(c_.size());
  for (const auto& c : c_) r.push_back(c.eval(v));
  return r;
}

BivariatePolynomial BivariatePolynomial::shift_x(const GR& a) const {
  std::vector<Polynomial> r;
  r.reserve(c_.size());
  for (const auto& c : c_) r.push_back(c.shift(a));
  return BivariatePolynomial(std::move(r));
}

Polynomial BivariatePolynomial::substitute_y(const Polynomial& q) const {
  Polynomial acc;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    acc *= q;
    acc += *it;
  }
  return acc;
}

Polynomial BivariatePolynomial::content_y() const {
  Polynomial g;
  for (const auto& c : c_) g = gcd(g, c);
  return g;
}

BivariatePolynomial BivariatePolynomial::primitive_part_y() const {
  if (is_zero()) return {};
  Polynomial g = content_y();
  std::vector<Polynomial> r;
  for (const auto& c : c_) r.push_back(c.exact_div(g));
  BivariatePolynomial out(std::move(r));
  // Normalize the leading x-coefficient of the leading y-coefficient to 1.
  GR lc = out.leading_y().leading();
  if (!lc.is_one()) {
    GR inv = GR(1) / lc;
    for (auto& c : out.c_) c *= inv;
  }
  return out;
}

BivariatePolynomial BivariatePolynomial::scaled(const Polynomial& p) const {
  std::vector<Polynomial> r;
  for (const auto& c : c_) r.push_back(c * p);
  return BivariatePolynomial(std::move(r));
}

BivariatePolynomial BivariatePolynomial::conj() const {
  std::vector<Polynomial> r;
  for (const auto& c : c_) r.push_back(c.conj());
  return BivariatePolynomial(std::move(r));
}

BivariatePolynomial BivariatePolynomial::operator-() const {
  std::vector<Polynomial> r;
  for (const auto& c : c_) r.push_back(-c);
  return BivariatePolynomial(std::move(r));
}

BivariatePolynomial& BivariatePolynomial::operator+=(const BivariatePolynomial& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t j = 0; j < o.c_.size(); ++j) c_[j] += o.c_[j];
  trim();
  return *this;
}

BivariatePolynomial& BivariatePolynomial::operator-=(const BivariatePolynomial& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t j = 0; j < o.c_.size(); ++j) c_[j] -= o.c_[j];
  trim();
  return *this;
}

BivariatePolynomial& BivariatePolynomial::operator*=(const BivariatePolynomial& o) {
  if (is_zero() || o.is_zero()) {
    c_.clear();
    return *this;
  }
  std::vector<Polynomial> r(c_.size() + o.c_.size() - 1);
  for (std::size_t i = 0; i < c_.size(); ++i)
    for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  c_ = std::move(r);
  trim();
  return *this;
}

BivariatePolynomial BivariatePolynomial::pow(int e) const {
  BivariatePolynomial result({Polynomial(GR(1))});
  for (int k = 0; k < e; ++k) result *= *this;
  return result;
}

std::string BivariatePolynomial::to_string(const std::string& xvar, const std::string& yvar) const {
  if (is_zero()) return "0";
  std::string out;
  for (int j = degree_y(); j >= 0; --j) {
    const Polynomial& c = c_[static_cast<std::size_t>(j)];
    if (c.is_zero()) continue;
    std::string ymono;
    if (j == 1) ymono = yvar;
    else if (j > 1) ymono = yvar + "^" + std::to_string(j);
    std::string cs = c.to_string(xvar);
    const bool single_term = cs.find(' ') == std::string::npos;
    std::string term;
    bool negative = false;
    if (ymono.empty()) {
      term = cs;
      if (single_term && term[0] == '-') {
        negative = true;
        term = term.substr(1);
      }
    } else if (single_term) {
      if (cs[0] == '-') {
        negative = true;
        cs = cs.substr(1);
      }
      term = cs == "1" ? ymono : cs + "*" + ymono;
    } else {
      term = "(" + cs + ")*" + ymono;
    }
    if (!single_term && ymono.empty()) {
      // multi-term x-polynomial in the constant slot: append as-is
      if (out.empty()) {
        out = term;
      } else if (term[0] == '-') {
        out += " - " + term.substr(1);
      } else {
        out += " + " + term;
      }
      continue;
    }
    if (out.empty()) out = negative ? "-" + term : term;
    else out += (negative ? " - " : " + ") + term;
  }
  return out;
}

Polynomial resultant_y(const BivariatePolynomial& p, const BivariatePolynomial& q) {
  if (p.is_zero() || q.is_zero()) fail(ErrorCode::ZeroPolynomial, "resultant of a zero polynomial");
  const int m = p.degree_y();
  const int n = q.degree_y();
  if (m == 0 && n == 0) return Polynomial(GR(1));
  if (m == 0) return p.y_coeff(0).pow(n);
  if (n == 0) return q.y_coeff(0).pow(m);
  const int size = m + n;
  std::vector<std::vector<Polynomial>> mat;
  mat.reserve(static_cast<std::size_t>(size));
  for (int k = n - 1; k >= 0; --k) mat.push_back(shifted_row(p, k, size));
  for (int k = m - 1; k >= 0; --k) mat.push_back(shifted_row(q, k, size));
  return bareiss_determinant(std::move(mat));
}

Polynomial discriminant_y(const BivariatePolynomial& p) {
  const int n = p.degree_y();
  if (n < 2) fail(ErrorCode::DegreeTooLow, "discriminant needs degree in y at least 2");
  Polynomial res = resultant_y(p, p.derivative_y());
  Polynomial disc = res.exact_div(p.leading_y());
  if ((n * (n - 1) / 2) % 2 == 1) disc = -disc;
  return disc;
}

std::vector<BivariatePolynomial> subresultants_y(const BivariatePolynomial& p,
                                                 const BivariatePolynomial& q) {
  const int m = p.degree_y();
  const int n = q.degree_y();
  if (p.is_zero() || q.is_zero()) fail(ErrorCode::ZeroPolynomial, "subresultant of a zero polynomial");
  if (m < n) fail(ErrorCode::InvalidArgument, "subresultants_y expects deg P >= deg Q");
  std::vector<BivariatePolynomial> out(static_cast<std::size_t>(n) + 1);
  for (int j = 0; j < n; ++j) {
    const int rows = m + n - 2 * j;
    const int width = m + n - j;
    std::vector<std::vector<Polynomial>> full;
    for (int k = n - j - 1; k >= 0; --k) full.push_back(shifted_row(p, k, width));
    for (int k = m - j - 1; k >= 0; --k) full.push_back(shifted_row(q, k, width));
    std::vector<Polynomial> coeffs(static_cast<std::size_t>(j) + 1);
    for (int k = 0; k <= j; ++k) {
      std::vector<std::vector<Polynomial>> sub(static_cast<std::size_t>(rows));
      const int last_col = width - 1 - k;  // column of y^k
      for (int r = 0; r < rows; ++r) {
        auto& row = sub[static_cast<std::size_t>(r)];
        row.assign(full[static_cast<std::size_t>(r)].begin(),
                   full[static_cast<std::size_t>(r)].begin() + (rows - 1));
        row.push_back(full[static_cast<std::size_t>(r)][static_cast<std::size_t>(last_col)]);
      }
      coeffs[static_cast<std::size_t>(k)] = bareiss_determinant(std::move(sub));
    }
    out[static_cast<std::size_t>(j)] = BivariatePolynomial(std::move(coeffs));
  }
  // Formal degree n: lc(Q)^(m-n-1) * Q when m > n, Q itself when m == n.
  if (m > n) out[static_cast<std::size_t>(n)] = q.scaled(q.leading_y().pow(m - n - 1));
  else out[static_cast<std::size_t>(n)] = q;
  return out;
}

}  // namespace finitude
