#include "finitude/parser.hpp"

#include <cctype>
#include <memory>

#include "finitude/error.hpp"

namespace finitude {

namespace {

struct Node {
  enum class Kind { Num, Var, Add, Sub, Mul, Div, Neg, Pow };
  Kind kind;
  std::size_t pos = 0;
  GR value;
  int var = -1;
  long exponent = 0;
  std::unique_ptr<Node> lhs, rhs;
};

using NodePtr = std::unique_ptr<Node>;

NodePtr make(Node::Kind k, std::size_t pos, NodePtr a = nullptr, NodePtr b = nullptr) {
  auto n = std::make_unique<Node>();
  n->kind = k;
  n->pos = pos;
  n->lhs = std::move(a);
  n->rhs = std::move(b);
  return n;
}

class Parser {
 public:
  Parser(const std::string& text, const std::vector<std::string>& vars) : s_(text), vars_(vars) {}

  NodePtr parse() {
    NodePtr e = expr();
    skip();
    if (i_ != s_.size()) throw SyntaxError(i_, "operator or end of input");
    return e;
  }

 private:
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool peek(char c) {
    skip();
    return i_ < s_.size() && s_[i_] == c;
  }

  NodePtr expr() {
    NodePtr left = term();
    while (peek('+') || peek('-')) {
      std::size_t pos = i_;
      Node::Kind k = s_[i_++] == '+' ? Node::Kind::Add : Node::Kind::Sub;
      left = make(k, pos, std::move(left), term());
    }
    return left;
  }

  NodePtr term() {
    NodePtr left = unary();
    while (peek('*') || peek('/')) {
      std::size_t pos = i_;
      Node::Kind k = s_[i_++] == '*' ? Node::Kind::Mul : Node::Kind::Div;
      left = make(k, pos, std::move(left), unary());
    }
    return left;
  }

  NodePtr unary() {
    if (peek('-')) {
      std::size_t pos = i_++;
      return make(Node::Kind::Neg, pos, unary());
    }
    if (peek('+')) {
      ++i_;
      return unary();
    }
    return factor();
  }

  NodePtr factor() {
    NodePtr b = base();
    if (!peek('^')) return b;
    std::size_t pos = i_++;
    skip();
    auto n = make(Node::Kind::Pow, pos, std::move(b));
    if (peek('(')) {
      std::size_t epos = i_;
      ++i_;
      NodePtr e = expr();
      if (!peek(')')) throw SyntaxError(i_, "')'");
      ++i_;
      GR v = constant_value(*e, epos);
      if (!v.is_real() || !v.re().is_integer())
        fail(ErrorCode::NonPolynomialExponent,
             "non-integer exponent at position " + std::to_string(epos));
      n->exponent = v.re().numerator().get_si();
      return n;
    }
    bool negative = false;
    if (peek('-')) {
      negative = true;
      ++i_;
      skip();
    }
    std::size_t start = i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (start == i_) throw SyntaxError(start, "integer exponent");
    if (i_ - start > 6) fail(ErrorCode::InvalidArgument, "exponent too large");
    n->exponent = std::stol(s_.substr(start, i_ - start)) * (negative ? -1 : 1);
    return n;
  }

  NodePtr base() {
    skip();
    if (i_ >= s_.size()) throw SyntaxError(i_, "number, name or '('");
    char c = s_[i_];
    std::size_t pos = i_;
    if (c == '(') {
      ++i_;
      NodePtr e = expr();
      if (!peek(')')) throw SyntaxError(i_, "')'");
      ++i_;
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      auto n = make(Node::Kind::Num, pos);
      n->value = GR(Rational(mpq_class(mpz_class(s_.substr(pos, i_ - pos)))));
      return n;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_'))
        ++i_;
      std::string name = s_.substr(pos, i_ - pos);
      for (std::size_t k = 0; k < vars_.size(); ++k) {
        if (vars_[k] == name) {
          auto n = make(Node::Kind::Var, pos);
          n->var = static_cast<int>(k);
          return n;
        }
      }
      if (name == "I") {
        auto n = make(Node::Kind::Num, pos);
        n->value = GR::i();
        return n;
      }
      fail(ErrorCode::UndeclaredVariable,
           "undeclared variable '" + name + "' at position " + std::to_string(pos));
    }
    throw SyntaxError(pos, "number, name or '('");
  }

  static GR constant_value(const Node& n, std::size_t pos) {
    switch (n.kind) {
      case Node::Kind::Num: return n.value;
      case Node::Kind::Var:
        fail(ErrorCode::NonPolynomialExponent,
             "exponent depends on a variable at position " + std::to_string(pos));
      case Node::Kind::Add: return constant_value(*n.lhs, pos) + constant_value(*n.rhs, pos);
      case Node::Kind::Sub: return constant_value(*n.lhs, pos) - constant_value(*n.rhs, pos);
      case Node::Kind::Mul: return constant_value(*n.lhs, pos) * constant_value(*n.rhs, pos);
      case Node::Kind::Div: {
        GR d = constant_value(*n.rhs, pos);
        if (d.is_zero()) fail(ErrorCode::DivisionByZero, "division by zero");
        return constant_value(*n.lhs, pos) / d;
      }
      case Node::Kind::Neg: return -constant_value(*n.lhs, pos);
      case Node::Kind::Pow: {
        GR b = constant_value(*n.lhs, pos);
        if (n.exponent < 0) {
          if (b.is_zero()) fail(ErrorCode::DivisionByZero, "division by zero");
          return (GR(1) / b).pow(-n.exponent);
        }
        return b.pow(n.exponent);
      }
    }
    return {};
  }

  const std::string& s_;
  const std::vector<std::string>& vars_;
  std::size_t i_ = 0;
};

// Evaluation into a polynomial in x and y over a denominator in x alone.
struct Fraction {
  BivariatePolynomial num;
  Polynomial den{GR(1)};

  void reduce() {
    if (num.is_zero()) {
      den = Polynomial(GR(1));
      return;
    }
    if (den.degree() > 0) {
      Polynomial g = gcd(num.content_y(), den);
      if (g.degree() > 0) {
        std::vector<Polynomial> c;
        for (const auto& p : num.y_coeffs()) c.push_back(p.exact_div(g));
        num = BivariatePolynomial(std::move(c));
        den = den.exact_div(g);
      }
    }
    GR lc = den.leading();
    if (!lc.is_one()) {
      num = num.scaled(Polynomial(GR(1) / lc));
      den = den.monic();
    }
  }
};

Fraction eval_fraction(const Node& n) {
  switch (n.kind) {
    case Node::Kind::Num: return {BivariatePolynomial::from_x(Polynomial(n.value)), Polynomial(GR(1))};
    case Node::Kind::Var:
      if (n.var == 0) return {BivariatePolynomial::from_x(Polynomial::x()), Polynomial(GR(1))};
      return {BivariatePolynomial::y(), Polynomial(GR(1))};
    case Node::Kind::Neg: {
      Fraction f = eval_fraction(*n.lhs);
      f.num = -f.num;
      return f;
    }
    case Node::Kind::Add:
    case Node::Kind::Sub: {
      Fraction a = eval_fraction(*n.lhs), b = eval_fraction(*n.rhs);
      Fraction r;
      BivariatePolynomial rhs = b.num.scaled(a.den);
      r.num = a.num.scaled(b.den);
      if (n.kind == Node::Kind::Add) r.num += rhs;
      else r.num -= rhs;
      r.den = a.den * b.den;
      r.reduce();
      return r;
    }
    case Node::Kind::Mul: {
      Fraction a = eval_fraction(*n.lhs), b = eval_fraction(*n.rhs);
      Fraction r{a.num * b.num, a.den * b.den};
      r.reduce();
      return r;
    }
    case Node::Kind::Div: {
      Fraction a = eval_fraction(*n.lhs), b = eval_fraction(*n.rhs);
      if (b.num.is_zero()) fail(ErrorCode::DivisionByZero, "division by zero");
      if (b.num.degree_y() > 0)
        fail(ErrorCode::NonPolynomialExponent,
             "division by an expression in y at position " + std::to_string(n.pos));
      Fraction r{a.num.scaled(b.den), a.den * b.num.y_coeff(0)};
      r.reduce();
      return r;
    }
    case Node::Kind::Pow: {
      Fraction b = eval_fraction(*n.lhs);
      long e = n.exponent;
      if (e < 0) {
        if (b.num.is_zero()) fail(ErrorCode::DivisionByZero, "zero raised to a negative power");
        if (b.num.degree_y() > 0)
          fail(ErrorCode::NonPolynomialExponent,
               "negative power of an expression in y at position " + std::to_string(n.pos));
        Fraction r{BivariatePolynomial::from_x(b.den.pow(static_cast<int>(-e))),
                   b.num.y_coeff(0).pow(static_cast<int>(-e))};
        r.reduce();
        return r;
      }
      Fraction r{b.num.pow(static_cast<int>(e)), b.den.pow(static_cast<int>(e))};
      r.reduce();
      return r;
    }
  }
  return {};
}

RationalFunction eval_rf(const Node& n) {
  switch (n.kind) {
    case Node::Kind::Num: return RationalFunction(n.value);
    case Node::Kind::Var: return RationalFunction::x();
    case Node::Kind::Neg: return -eval_rf(*n.lhs);
    case Node::Kind::Add: return eval_rf(*n.lhs) + eval_rf(*n.rhs);
    case Node::Kind::Sub: return eval_rf(*n.lhs) - eval_rf(*n.rhs);
    case Node::Kind::Mul: return eval_rf(*n.lhs) * eval_rf(*n.rhs);
    case Node::Kind::Div: {
      RationalFunction d = eval_rf(*n.rhs);
      if (d.is_zero()) fail(ErrorCode::DivisionByZero, "division by zero");
      return eval_rf(*n.lhs) / d;
    }
    case Node::Kind::Pow: {
      RationalFunction b = eval_rf(*n.lhs);
      if (n.exponent < 0 && b.is_zero()) fail(ErrorCode::DivisionByZero, "zero raised to a negative power");
      return b.pow(static_cast<int>(n.exponent));
    }
  }
  return {};
}

void sparse_add(SparsePolynomial& acc, const std::vector<int>& e, const GR& c) {
  GR v = acc[e] + c;
  if (v.is_zero()) acc.erase(e);
  else acc[e] = v;
}

SparsePolynomial sparse_mul(const SparsePolynomial& a, const SparsePolynomial& b) {
  SparsePolynomial r;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) {
      std::vector<int> e(ea.size());
      for (std::size_t k = 0; k < e.size(); ++k) e[k] = ea[k] + eb[k];
      sparse_add(r, e, ca * cb);
    }
  return r;
}

SparsePolynomial eval_sparse(const Node& n, std::size_t nvars) {
  switch (n.kind) {
    case Node::Kind::Num: {
      SparsePolynomial r;
      if (!n.value.is_zero()) r[std::vector<int>(nvars, 0)] = n.value;
      return r;
    }
    case Node::Kind::Var: {
      std::vector<int> e(nvars, 0);
      e[static_cast<std::size_t>(n.var)] = 1;
      return {{e, GR(1)}};
    }
    case Node::Kind::Neg: {
      SparsePolynomial r = eval_sparse(*n.lhs, nvars);
      for (auto& [e, c] : r) c = -c;
      return r;
    }
    case Node::Kind::Add:
    case Node::Kind::Sub: {
      SparsePolynomial r = eval_sparse(*n.lhs, nvars);
      for (const auto& [e, c] : eval_sparse(*n.rhs, nvars))
        sparse_add(r, e, n.kind == Node::Kind::Add ? c : -c);
      return r;
    }
    case Node::Kind::Mul: return sparse_mul(eval_sparse(*n.lhs, nvars), eval_sparse(*n.rhs, nvars));
    case Node::Kind::Div: {
      SparsePolynomial d = eval_sparse(*n.rhs, nvars);
      if (d.empty()) fail(ErrorCode::DivisionByZero, "division by zero");
      if (d.size() != 1 || d.begin()->first != std::vector<int>(nvars, 0))
        fail(ErrorCode::NonPolynomialExponent,
             "division by a non-constant at position " + std::to_string(n.pos));
      GR inv = GR(1) / d.begin()->second;
      SparsePolynomial r = eval_sparse(*n.lhs, nvars);
      for (auto& [e, c] : r) c *= inv;
      return r;
    }
    case Node::Kind::Pow: {
      SparsePolynomial b = eval_sparse(*n.lhs, nvars);
      if (n.exponent < 0) {
        if (b.size() == 1 && b.begin()->first == std::vector<int>(nvars, 0)) {
          return {{b.begin()->first, (GR(1) / b.begin()->second).pow(-n.exponent)}};
        }
        fail(ErrorCode::NonPolynomialExponent,
             "negative power of a variable at position " + std::to_string(n.pos));
      }
      SparsePolynomial r{{std::vector<int>(nvars, 0), GR(1)}};
      for (long k = 0; k < n.exponent; ++k) r = sparse_mul(r, b);
      return r;
    }
  }
  return {};
}

}  // namespace

BivariatePolynomial parse_bivariate(const std::string& text, const std::string& xname,
                                    const std::string& yname) {
  std::vector<std::string> vars{xname, yname};
  NodePtr ast = Parser(text, vars).parse();
  return eval_fraction(*ast).num;
}

RationalFunction parse_rational_function(const std::string& text, const std::string& var) {
  std::vector<std::string> vars{var};
  NodePtr ast = Parser(text, vars).parse();
  return eval_rf(*ast);
}

Polynomial parse_polynomial(const std::string& text, const std::string& var) {
  RationalFunction f = parse_rational_function(text, var);
  if (!f.is_polynomial())
    fail(ErrorCode::NonPolynomialExponent, "expression has a non-constant denominator");
  return f.numerator();
}

SparsePolynomial parse_sparse(const std::string& text, const std::vector<std::string>& variables) {
  NodePtr ast = Parser(text, variables).parse();
  return eval_sparse(*ast, variables.size());
}

std::variant<BivariatePolynomial, RationalFunction> parse_expression(
    const std::string& text, const std::vector<std::string>& variables) {
  if (variables.size() == 2) return parse_bivariate(text, variables[0], variables[1]);
  if (variables.size() == 1) return parse_rational_function(text, variables[0]);
  fail(ErrorCode::InvalidArgument, "parse_expression expects one or two variable names");
}

}  // namespace finitude
