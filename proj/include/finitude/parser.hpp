#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "finitude/bivariate.hpp"
#include "finitude/rational_function.hpp"

namespace finitude {

/// Grammar (ASCII):
///   expr   := term (('+'|'-') term)*
///   term   := unary (('*'|'/') unary)*
///   unary  := ('+'|'-') unary | factor
///   factor := base ('^' ['-'] integer)?
///   base   := number | name | '(' expr ')'
/// The name I denotes the imaginary unit unless it is declared as a variable.

/// Polynomial in x and y. Denominators that depend only on x are cleared by
/// multiplying through; division by anything involving y is rejected.
BivariatePolynomial parse_bivariate(const std::string& text, const std::string& xname = "x",
                                    const std::string& yname = "y");

/// Rational function in one variable.
RationalFunction parse_rational_function(const std::string& text, const std::string& var = "x");

/// Polynomial in one variable; any non-constant denominator is NonPolynomialExponent.
Polynomial parse_polynomial(const std::string& text, const std::string& var = "x");

/// Sparse polynomial in the declared variables: exponent vector -> coefficient.
using SparsePolynomial = std::map<std::vector<int>, GR>;
SparsePolynomial parse_sparse(const std::string& text, const std::vector<std::string>& variables);

/// Generic entry point: with two declared variables the result is bivariate
/// (first name plays x, second y), with one it is a rational function.
std::variant<BivariatePolynomial, RationalFunction> parse_expression(
    const std::string& text, const std::vector<std::string>& variables);

}  // namespace finitude
