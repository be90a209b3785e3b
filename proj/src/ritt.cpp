#include <optional>

#include "finitude/solvability.hpp"

namespace finitude {

namespace {

namespace rad = radical;

// Monic right factor g of degree s with g(0) = 0 and monic left factor h with
// F = h o g, for monic F.
std::optional<std::pair<Polynomial, Polynomial>> right_factor(const Polynomial& F, int s) {
  const int n = F.degree();
  const int r = n / s;
  std::vector<GR> g(static_cast<std::size_t>(s + 1), GR(0));
  g[static_cast<std::size_t>(s)] = GR(1);
  for (int k = 1; k < s; ++k) {
    const GR have = Polynomial(g).pow(r).coeff(n - k);
    g[static_cast<std::size_t>(s - k)] = (F.coeff(n - k) - have) / GR(r);
  }
  const Polynomial G(g);
  std::vector<GR> h;
  Polynomial rest = F;
  for (int i = 0; i < r; ++i) {
    auto [q, rem] = rest.divmod(G);
    if (rem.degree() > 0) return std::nullopt;
    h.push_back(rem.coeff(0));
    rest = q;
  }
  if (rest.degree() != 0) return std::nullopt;
  h.push_back(rest.coeff(0));
  return std::make_pair(G, Polynomial(h));
}

Polynomial chebyshev(int n) {
  Polynomial a(GR(1));
  Polynomial b = Polynomial::x();
  if (n == 0) return a;
  for (int k = 1; k < n; ++k) {
    Polynomial c = Polynomial::monomial(GR(2), 1) * b - a;
    a = b;
    b = c;
  }
  return b;
}

LinearMap linear(Radical scale, Radical shift) { return {std::move(scale), std::move(shift)}; }

bool is_const(const Radical& e, const GR& v) { return e->kind == RadicalNode::Kind::Constant && e->value == v; }

}  // namespace

std::string LinearMap::to_string(const std::string& var) const {
  std::string out;
  if (is_const(scale, GR(1))) out = var;
  else if (is_const(scale, GR(-1))) out = "-" + var;
  else {
    std::string s = radical::to_string(scale);
    const bool simple = scale->kind == RadicalNode::Kind::Constant || scale->kind == RadicalNode::Kind::Root ||
                        scale->kind == RadicalNode::Kind::Product;
    out = (simple ? s : "(" + s + ")") + "*" + var;
  }
  if (is_const(shift, GR(0))) return out;
  std::string t = radical::to_string(shift);
  if (t.front() == '-') return out + " - " + t.substr(1);
  return out + " + " + t;
}

bool LinearMap::is_identity() const { return is_const(scale, GR(1)) && is_const(shift, GR(0)); }

const char* primitive_kind_name(PrimitiveClass::Kind k) {
  switch (k) {
    case PrimitiveClass::Kind::Linear:
      return "Linear";
    case PrimitiveClass::Kind::PowerConjugate:
      return "PowerConjugate";
    case PrimitiveClass::Kind::ChebyshevConjugate:
      return "ChebyshevConjugate";
    case PrimitiveClass::Kind::DegreeAtMost4:
      return "DegreeAtMost4";
    case PrimitiveClass::Kind::Other:
      return "Other";
  }
  return "Other";
}

CompositionChain ritt_decompose(const Polynomial& f) {
  if (f.degree() < 1) fail(ErrorCode::DegreeTooLow, "decomposition needs a non-constant polynomial");
  CompositionChain chain;
  Polynomial rest = f;
  for (;;) {
    const int n = rest.degree();
    const GR lc = rest.leading();
    const Polynomial F = rest.monic();
    bool split = false;
    for (int s = 2; s < n && !split; ++s) {
      if (n % s != 0) continue;
      if (auto found = right_factor(F, s)) {
        chain.factors.push_back(found->first);
        chain.primitive.push_back(true);
        rest = found->second * lc;
        split = true;
      }
    }
    if (!split) {
      chain.factors.push_back(rest);
      chain.primitive.push_back(true);
      return chain;
    }
  }
}

Polynomial compose_chain(const CompositionChain& chain) {
  Polynomial acc = Polynomial::x();
  for (const auto& f : chain.factors) acc = f.compose(acc);
  return acc;
}

PrimitiveClass classify_primitive(const Polynomial& f) {
  PrimitiveClass out;
  const int n = f.degree();
  out.n = n;
  if (n < 1) fail(ErrorCode::DegreeTooLow, "classification needs a non-constant polynomial");
  if (n == 1) {
    out.kind = PrimitiveClass::Kind::Linear;
    out.outer = linear(rad::constant(f.coeff(1)), rad::constant(f.coeff(0)));
    out.inner = linear(rad::constant(GR(1)), rad::constant(GR(0)));
    return out;
  }
  const GR an = f.leading();
  const GR c0 = -f.coeff(n - 1) / (GR(n) * an);
  const Polynomial g = f.shift(c0);

  if (g - Polynomial(g.coeff(0)) == Polynomial::monomial(an, n)) {
    out.kind = PrimitiveClass::Kind::PowerConjugate;
    out.outer = linear(rad::constant(an), rad::constant(g.coeff(0)));
    out.inner = linear(rad::constant(GR(1)), rad::constant(-c0));
    out.ambiguity = "u -> lambda*u commutes with the power map: (a*lambda^-n, lambda*(x + b)) is equivalent";
    return out;
  }

  if (!g.coeff(n - 2).is_zero()) {
    const GR alpha2 = -GR(n) * g.coeff(n) / (GR(4) * g.coeff(n - 2));
    const Polynomial t = chebyshev(n);
    std::vector<GR> u(static_cast<std::size_t>(n + 1), GR(0));
    for (int k = n % 2; k <= n; k += 2) u[static_cast<std::size_t>(k)] = t.coeff(k) * alpha2.pow(k / 2);
    const Polynomial U(u);
    const GR A = g.coeff(n) / U.coeff(n);
    const GR b = g.coeff(0) - A * U.coeff(0);
    if (g == U * A + Polynomial(b)) {
      out.kind = PrimitiveClass::Kind::ChebyshevConjugate;
      const auto exact = alpha2.sqrt();
      const Radical alpha = exact ? rad::constant(*exact) : rad::root(2, rad::constant(alpha2));
      const Radical scale = n % 2 == 1 ? rad::quotient(rad::constant(A), alpha) : rad::constant(A);
      out.outer = linear(scale, rad::constant(b));
      out.inner = linear(alpha, rad::product({rad::constant(-c0), alpha}));
      out.ambiguity = n % 2 == 1 ? "alpha and -alpha both apply, with the outer scale negated"
                                 : "alpha and -alpha both apply";
      return out;
    }
  }
  out.kind = n <= 4 ? PrimitiveClass::Kind::DegreeAtMost4 : PrimitiveClass::Kind::Other;
  return out;
}

BivariatePolynomial inverse_curve(const Polynomial& f) {
  std::vector<Polynomial> ys;
  for (int j = 0; j <= f.degree(); ++j) ys.push_back(Polynomial(f.coeff(j)));
  if (ys.empty()) ys.push_back(Polynomial());
  ys[0] = ys[0] - Polynomial::x();
  return BivariatePolynomial(ys);
}

Verdict invertible_by_radicals(const Polynomial& f, const MonodromyOptions& options) {
  Verdict v;
  v.chain = ritt_decompose(f);
  bool good = true;
  for (const auto& factor : v.chain->factors) {
    v.classes.push_back(classify_primitive(factor));
    good = good && v.classes.back().kind != PrimitiveClass::Kind::Other;
  }
  v.status = good ? VerdictStatus::Representable : VerdictStatus::NotRepresentable;
  v.reason = good ? "every primitive factor is linear, a power or Chebyshev conjugate, or of degree at most 4"
                  : "a primitive factor of degree at least 5 is neither a power nor a Chebyshev conjugate";
  if (f.degree() < 2 || f.degree() > kRittCrossCheckDegree) return v;
  try {
    const auto m = monodromy_group(inverse_curve(f), options);
    v.group = describe_group(m.group);
    if (v.group->solvable != good) {
      v.status = VerdictStatus::Undecided;
      v.code = ErrorCode::NumericBreakdown;
      v.reason = "classification and monodromy group " + v.group->name + " disagree";
    } else {
      v.reason += "; monodromy group " + v.group->name + (good ? " is solvable" : " is not solvable");
    }
  } catch (const Error& e) {
    v.reason += std::string("; monodromy cross-check skipped: ") + e.what();
  }
  return v;
}

Verdict invertible_by_k_radicals(const Polynomial& f, int k, const MonodromyOptions& options) {
  if (f.degree() < 1) fail(ErrorCode::DegreeTooLow, "inversion needs a non-constant polynomial");
  if (f.degree() == 1) {
    Verdict v;
    v.status = VerdictStatus::Representable;
    v.reason = "linear polynomials invert rationally";
    return v;
  }
  return k_radicals_verdict(inverse_curve(f), k, options);
}

}  // namespace finitude
