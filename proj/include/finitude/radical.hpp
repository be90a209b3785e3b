#pragma once

#include <complex>
#include <memory>
#include <string>
#include <vector>

#include "finitude/polynomial.hpp"

namespace finitude {

struct RadicalNode;
using Radical = std::shared_ptr<const RadicalNode>;

/// Expression tree over x built from constants, sums, products, quotients,
/// integer powers and m-th roots. Roots use the principal branch: the result
/// has argument in (-pi/m, pi/m].
struct RadicalNode {
  enum class Kind { Constant, FloatConstant, Variable, Sum, Product, Quotient, Power, Root };

  Kind kind = Kind::Constant;
  GR value;                        // Constant
  std::complex<double> numeric;    // FloatConstant
  int index = 0;                   // Power exponent or root index
  std::vector<Radical> children;
};

namespace radical {

Radical constant(const GR& c);
Radical floating(std::complex<double> c);
Radical variable();
Radical sum(std::vector<Radical> terms);
Radical product(std::vector<Radical> factors);
Radical quotient(Radical num, Radical den);
Radical power(Radical base, int exponent);
Radical root(int m, Radical radicand);
Radical negate(Radical e);
Radical difference(Radical a, Radical b);
Radical polynomial(const Polynomial& p);
Radical floating_polynomial(const std::vector<std::complex<double>>& coeffs);

std::complex<double> evaluate(const Radical& e, std::complex<double> x);
/// Parser grammar plus root(m, expr); decimal constants denote floating values.
std::string to_string(const Radical& e);
Radical parse(const std::string& text);
bool has_floating(const Radical& e);
int root_count(const Radical& e);

}  // namespace radical

}  // namespace finitude
