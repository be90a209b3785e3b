#include "finitude/radical.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "finitude/error.hpp"

namespace finitude::radical {

namespace {

using K = RadicalNode::Kind;
using cld = std::complex<long double>;

Radical make(RadicalNode node) { return std::make_shared<const RadicalNode>(std::move(node)); }

bool is_constant(const Radical& e, const GR& v) { return e->kind == K::Constant && e->value == v; }

cld eval(const Radical& e, cld x) {
  switch (e->kind) {
    case K::Constant:
      return e->value.to_complex_ld();
    case K::FloatConstant:
      return {e->numeric.real(), e->numeric.imag()};
    case K::Variable:
      return x;
    case K::Sum: {
      cld acc = 0;
      for (const auto& c : e->children) acc += eval(c, x);
      return acc;
    }
    case K::Product: {
      cld acc = 1;
      for (const auto& c : e->children) acc *= eval(c, x);
      return acc;
    }
    case K::Quotient:
      return eval(e->children[0], x) / eval(e->children[1], x);
    case K::Power: {
      const cld b = eval(e->children[0], x);
      cld acc = 1;
      for (int k = 0; k < std::abs(e->index); ++k) acc *= b;
      return e->index < 0 ? cld(1) / acc : acc;
    }
    case K::Root: {
      const cld z = eval(e->children[0], x);
      if (z == cld(0)) return 0;
      const long double r = std::pow(std::abs(z), 1.0L / e->index);
      return std::polar(r, std::arg(z) / e->index);
    }
  }
  return 0;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::string s = buf;
  if (s.find_first_of(".en") == std::string::npos) s += ".0";
  return s;
}

// Printed text with its binding level: 1 sum or leading minus, 2 product or
// quotient, 4 power, 5 atom.
struct Printed {
  std::string text;
  int level;
};

Printed print(const Radical& e);

std::string at_least(const Printed& p, int level) { return p.level < level ? "(" + p.text + ")" : p.text; }

Printed constant_text(const GR& v) {
  const std::string s = v.to_string();
  if (s.front() == '(') return {s, 5};
  if (s.front() == '-') return {s, 1};
  if (s.find('/') != std::string::npos) return {s, 2};
  return {s, 5};
}

Printed print_product(const Radical& e) {
  GR k(1);
  std::vector<Radical> rest;
  for (const auto& c : e->children) {
    if (c->kind == K::Constant) k *= c->value;
    else rest.push_back(c);
  }
  std::string body;
  for (std::size_t i = 0; i < rest.size(); ++i) {
    if (i > 0) body += "*";
    body += at_least(print(rest[i]), 3);
  }
  if (rest.empty()) return constant_text(k);
  if (k.is_one()) return {body, rest.size() == 1 ? print(rest[0]).level : 2};
  if (k.is_real()) {
    const Rational r = k.re();
    const bool neg = r.sign() < 0;
    const mpz_class num = neg ? mpz_class(-r.numerator()) : r.numerator();
    std::string text = num == 1 ? body : num.get_str() + "*" + body;
    if (r.denominator() != 1) text = (num == 1 && rest.size() == 1 ? at_least(print(rest[0]), 3) : text) + "/" + r.denominator().get_str();
    return neg ? Printed{"-" + text, 1} : Printed{text, 2};
  }
  return {constant_text(k).text + "*" + body, 2};
}

Printed print(const Radical& e) {
  switch (e->kind) {
    case K::Constant:
      return constant_text(e->value);
    case K::FloatConstant: {
      const auto c = e->numeric;
      if (c.imag() == 0.0) {
        const std::string s = format_double(c.real());
        return {s, s.front() == '-' ? 1 : 5};
      }
      return {"(" + format_double(c.real()) + (c.imag() < 0 ? "-" : "+") + format_double(std::abs(c.imag())) + "*I)", 5};
    }
    case K::Variable:
      return {"x", 5};
    case K::Sum: {
      std::string out;
      for (std::size_t k = 0; k < e->children.size(); ++k) {
        const std::string s = print(e->children[k]).text;
        if (k == 0) out = s;
        else if (s.front() == '-') out += " - " + s.substr(1);
        else out += " + " + s;
      }
      return {out, 1};
    }
    case K::Product:
      return print_product(e);
    case K::Quotient:
      return {at_least(print(e->children[0]), 2) + "/" + at_least(print(e->children[1]), 4), 2};
    case K::Power: {
      const std::string base = at_least(print(e->children[0]), 5);
      return {base + "^" + (e->index < 0 ? "(" + std::to_string(e->index) + ")" : std::to_string(e->index)), 4};
    }
    case K::Root:
      return {"root(" + std::to_string(e->index) + ", " + print(e->children[0]).text + ")", 5};
  }
  return {"", 5};
}

class Parser {
 public:
  explicit Parser(const std::string& text) : s_(text) {}

  Radical run() {
    Radical e = expr();
    skip();
    if (i_ != s_.size()) throw SyntaxError(i_, "end of input");
    return e;
  }

 private:
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool accept(char c) {
    skip();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) throw SyntaxError(i_, std::string("'") + c + "'");
  }
  Radical expr() {
    std::vector<Radical> terms{term()};
    for (;;) {
      if (accept('+')) terms.push_back(term());
      else if (accept('-')) terms.push_back(negate(term()));
      else break;
    }
    return terms.size() == 1 ? terms[0] : sum(terms);
  }
  Radical term() {
    Radical acc = unary();
    for (;;) {
      if (accept('*')) acc = product({acc, unary()});
      else if (accept('/')) acc = quotient(acc, unary());
      else break;
    }
    return acc;
  }
  Radical unary() {
    if (accept('-')) return negate(unary());
    if (accept('+')) return unary();
    return factor();
  }
  Radical factor() {
    Radical b = base();
    if (accept('^')) {
      skip();
      bool neg = false;
      if (accept('(')) {
        neg = accept('-');
        const int e = integer();
        expect(')');
        return power(b, neg ? -e : e);
      }
      neg = accept('-');
      const int e = integer();
      return power(b, neg ? -e : e);
    }
    return b;
  }
  int integer() {
    skip();
    const std::size_t start = i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (start == i_) throw SyntaxError(i_, "integer");
    return std::stoi(s_.substr(start, i_ - start));
  }
  Radical base() {
    skip();
    if (i_ >= s_.size()) throw SyntaxError(i_, "operand");
    if (accept('(')) {
      Radical e = expr();
      expect(')');
      return e;
    }
    const char c = s_[i_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = i_;
      while (i_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[i_]))) ++i_;
      const std::string name = s_.substr(start, i_ - start);
      if (name == "x") return variable();
      if (name == "I") return constant(GR::i());
      if (name == "root") {
        expect('(');
        const int m = integer();
        expect(',');
        Radical e = expr();
        expect(')');
        return root(m, e);
      }
      fail(ErrorCode::UndeclaredVariable, "unknown name '" + name + "'");
    }
    throw SyntaxError(i_, "operand");
  }
  Radical number() {
    const std::size_t start = i_;
    bool decimal = false;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (i_ < s_.size() && s_[i_] == '.') {
      decimal = true;
      ++i_;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    }
    if (i_ < s_.size() && (s_[i_] == 'e' || s_[i_] == 'E')) {
      decimal = true;
      ++i_;
      if (i_ < s_.size() && (s_[i_] == '+' || s_[i_] == '-')) ++i_;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    }
    const std::string text = s_.substr(start, i_ - start);
    if (decimal) return floating({std::stod(text), 0.0});
    return constant(GR(Rational(mpq_class(mpz_class(text)))));
  }

  std::string s_;
  std::size_t i_ = 0;
};

bool contains_floating(const Radical& e) {
  if (e->kind == K::FloatConstant) return true;
  for (const auto& c : e->children)
    if (contains_floating(c)) return true;
  return false;
}

}  // namespace

Radical constant(const GR& c) {
  RadicalNode n;
  n.kind = K::Constant;
  n.value = c;
  return make(n);
}

Radical floating(std::complex<double> c) {
  RadicalNode n;
  n.kind = K::FloatConstant;
  n.numeric = c;
  return make(n);
}

Radical variable() {
  RadicalNode n;
  n.kind = K::Variable;
  return make(n);
}

Radical sum(std::vector<Radical> terms) {
  std::vector<Radical> kept;
  GR folded(0);
  for (auto& t : terms) {
    if (t->kind == K::Constant) folded += t->value;
    else if (t->kind == K::Sum) kept.insert(kept.end(), t->children.begin(), t->children.end());
    else kept.push_back(t);
  }
  if (!folded.is_zero()) kept.push_back(constant(folded));
  if (kept.empty()) return constant(GR(0));
  if (kept.size() == 1) return kept[0];
  RadicalNode n;
  n.kind = K::Sum;
  n.children = std::move(kept);
  return make(n);
}

Radical product(std::vector<Radical> factors) {
  std::vector<Radical> kept;
  GR folded(1);
  for (auto& f : factors) {
    if (f->kind == K::Constant) folded *= f->value;
    else if (f->kind == K::Product) {
      for (const auto& c : f->children) {
        if (c->kind == K::Constant) folded *= c->value;
        else kept.push_back(c);
      }
    } else {
      kept.push_back(f);
    }
  }
  if (folded.is_zero()) return constant(GR(0));
  if (!folded.is_one()) kept.insert(kept.begin(), constant(folded));
  if (kept.empty()) return constant(GR(1));
  if (kept.size() == 1) return kept[0];
  RadicalNode n;
  n.kind = K::Product;
  n.children = std::move(kept);
  return make(n);
}

Radical quotient(Radical num, Radical den) {
  if (den->kind == K::Constant) {
    if (den->value.is_zero()) fail(ErrorCode::DivisionByZero, "division by zero in expression");
    return product({constant(GR(1) / den->value), num});
  }
  if (is_constant(num, GR(0))) return num;
  RadicalNode n;
  n.kind = K::Quotient;
  n.children = {std::move(num), std::move(den)};
  return make(n);
}

Radical power(Radical base, int exponent) {
  if (exponent == 0) return constant(GR(1));
  if (exponent == 1) return base;
  if (base->kind == K::Constant) return constant(base->value.pow(exponent));
  RadicalNode n;
  n.kind = K::Power;
  n.index = exponent;
  n.children = {std::move(base)};
  return make(n);
}

Radical root(int m, Radical radicand) {
  if (m < 2) fail(ErrorCode::InvalidArgument, "root index must be at least 2");
  if (is_constant(radicand, GR(0)) || is_constant(radicand, GR(1))) return radicand;
  RadicalNode n;
  n.kind = K::Root;
  n.index = m;
  n.children = {std::move(radicand)};
  return make(n);
}

Radical negate(Radical e) { return product({constant(GR(-1)), std::move(e)}); }

Radical difference(Radical a, Radical b) { return sum({std::move(a), negate(std::move(b))}); }

Radical polynomial(const Polynomial& p) {
  std::vector<Radical> terms;
  for (int k = p.degree(); k >= 0; --k) {
    const GR c = p.coeff(k);
    if (c.is_zero()) continue;
    terms.push_back(product({constant(c), power(variable(), k)}));
  }
  return sum(terms);
}

Radical floating_polynomial(const std::vector<std::complex<double>>& coeffs) {
  std::vector<Radical> terms;
  for (int k = static_cast<int>(coeffs.size()) - 1; k >= 0; --k) {
    const auto c = coeffs[static_cast<std::size_t>(k)];
    if (c == 0.0) continue;
    Radical xk = power(variable(), k);
    terms.push_back(k == 0 ? floating(c) : product({floating(c), xk}));
  }
  return terms.empty() ? constant(GR(0)) : sum(terms);
}

std::complex<double> evaluate(const Radical& e, std::complex<double> x) {
  const cld v = eval(e, cld(x.real(), x.imag()));
  return {static_cast<double>(v.real()), static_cast<double>(v.imag())};
}

std::string to_string(const Radical& e) { return print(e).text; }

Radical parse(const std::string& text) { return Parser(text).run(); }

bool has_floating(const Radical& e) { return contains_floating(e); }

int root_count(const Radical& e) {
  int n = e->kind == K::Root ? 1 : 0;
  for (const auto& c : e->children) n += root_count(c);
  return n;
}

}  // namespace finitude::radical
