#include "finitude/fuchsian.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "finitude/error.hpp"
#include "finitude/parallel.hpp"

namespace finitude {

namespace {

using C = std::complex<double>;

constexpr int kMaxDimension = 12;

// Dormand-Prince 5(4) tableau.
constexpr double kC[7] = {0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
constexpr double kA[7][6] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84},
};
constexpr double kB[7] = {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84, 0.0};
constexpr double kE[7] = {71.0 / 57600,      0.0,          -71.0 / 16695, 71.0 / 1920,
                          -17253.0 / 339200, 22.0 / 525, -1.0 / 40};

double segment_distance(C p, C a, C b) {
  const C d = b - a;
  const double len2 = std::norm(d);
  double t = len2 > 0 ? std::real((p - a) * std::conj(d)) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return std::abs(p - (a + t * d));
}

void integrate_segment(const FuchsianSystem& sys, C from, C to, CMatrix& y, const FuchsianOptions& options,
                       long& steps, long& rejected) {
  const C d = to - from;
  for (const auto& a : sys.poles)
    if (segment_distance(a, from, to) < 1e-12 * std::max(1.0, std::abs(a)))
      fail(ErrorCode::SingularOnPath, "path passes through a pole");
  auto rhs = [&](double t, const CMatrix& v) -> CMatrix { return d * (sys.coefficient(from + t * d) * v); };
  double t = 0.0;
  double h = 0.05;
  std::vector<CMatrix> k(7);
  while (t < 1.0) {
    h = std::min(h, 1.0 - t);
    if (h < 1e-13) fail(ErrorCode::StepSizeUnderflow, "step size underflow");
    if (++steps > options.max_steps) fail(ErrorCode::StepSizeUnderflow, "step budget exhausted");
    for (int s = 0; s < 7; ++s) {
      CMatrix stage = y;
      for (int j = 0; j < s; ++j)
        if (kA[s][j] != 0.0) stage += (h * kA[s][j]) * k[static_cast<std::size_t>(j)];
      k[static_cast<std::size_t>(s)] = rhs(t + kC[s] * h, stage);
    }
    CMatrix next = y;
    CMatrix err = CMatrix::Zero(y.rows(), y.cols());
    for (int s = 0; s < 7; ++s) {
      if (kB[s] != 0.0) next += (h * kB[s]) * k[static_cast<std::size_t>(s)];
      err += (h * kE[s]) * k[static_cast<std::size_t>(s)];
    }
    const double scale = options.tol * std::max(1.0, next.cwiseAbs().maxCoeff());
    const double ratio = err.cwiseAbs().maxCoeff() / scale;
    if (ratio <= 1.0) {
      t += h;
      y = std::move(next);
    } else {
      ++rejected;
    }
    const double factor = ratio == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(ratio, -0.2), 0.2, 5.0);
    h *= factor;
  }
}

double condition_number(const CMatrix& m) {
  Eigen::JacobiSVD<CMatrix> svd(m);
  const auto& s = svd.singularValues();
  if (s.size() == 0) return 1.0;
  const double lo = s(s.size() - 1);
  return lo > 0 ? s(0) / lo : std::numeric_limits<double>::infinity();
}

double operator_norm(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  return Eigen::JacobiSVD<CMatrix>(m).singularValues()(0);
}

// Rank decisions near the threshold are reported through `ambiguous`.
struct RankContext {
  double tol;
  bool ambiguous = false;

  CMatrix null_space(const CMatrix& m, double threshold) {
    const Eigen::Index n = m.cols();
    if (m.rows() == 0) return CMatrix::Identity(n, n);
    Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i) {
      if (s(i) > threshold) ++rank;
      if (s(i) > threshold * 1e-2 && s(i) < threshold * 1e2) ambiguous = true;
    }
    return svd.matrixV().rightCols(n - rank);
  }
};

C frobenius_dot(const CMatrix& a, const CMatrix& b) { return (a.conjugate().cwiseProduct(b)).sum(); }

// Orthonormal basis of the two-sided ideal generated by the commutators.
std::vector<CMatrix> commutator_ideal(const std::vector<CMatrix>& gens, double tol) {
  std::vector<CMatrix> basis;
  std::vector<CMatrix> queue;
  auto add = [&](CMatrix x, double reference) {
    if (reference <= tol) return;
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& b : basis) x -= frobenius_dot(b, x) * b;
    const double nx = x.norm();
    if (nx <= tol * reference) return;
    basis.push_back(x / nx);
    queue.push_back(basis.back());
  };
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      const CMatrix c = gens[i] * gens[j] - gens[j] * gens[i];
      add(c, c.norm());
    }
  while (!queue.empty()) {
    const CMatrix x = queue.back();
    queue.pop_back();
    for (const auto& g : gens) {
      const CMatrix left = g * x;
      add(left, left.norm());
      const CMatrix right = x * g;
      add(right, right.norm());
    }
  }
  return basis;
}

std::vector<CMatrix> normalized(const std::vector<CMatrix>& mats) {
  std::vector<CMatrix> out;
  for (const auto& m : mats) {
    const double n = m.norm();
    out.push_back(n > 0 ? CMatrix(m / n) : m);
  }
  return out;
}

// Eigenvalue of m from its first cluster (clusters ordered by re, then im).
C cluster_eigenvalue(const CMatrix& m, RankContext& ctx) {
  Eigen::ComplexEigenSolver<CMatrix> es(m, false);
  std::vector<C> ev(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  const double scale = std::max(1.0, operator_norm(m));
  const double gap = std::sqrt(ctx.tol) * scale;
  std::vector<int> label(ev.size(), -1);
  int clusters = 0;
  for (std::size_t i = 0; i < ev.size(); ++i) {
    if (label[i] >= 0) continue;
    label[i] = clusters;
    std::vector<std::size_t> stack{i};
    while (!stack.empty()) {
      const std::size_t a = stack.back();
      stack.pop_back();
      for (std::size_t b = 0; b < ev.size(); ++b)
        if (label[b] < 0 && std::abs(ev[a] - ev[b]) <= gap) {
          label[b] = clusters;
          stack.push_back(b);
        }
    }
    ++clusters;
  }
  std::vector<C> mean(static_cast<std::size_t>(clusters), C(0));
  std::vector<int> count(static_cast<std::size_t>(clusters), 0);
  for (std::size_t i = 0; i < ev.size(); ++i) {
    mean[static_cast<std::size_t>(label[i])] += ev[i];
    ++count[static_cast<std::size_t>(label[i])];
  }
  for (int c = 0; c < clusters; ++c) mean[static_cast<std::size_t>(c)] /= static_cast<double>(count[static_cast<std::size_t>(c)]);
  for (int a = 0; a < clusters; ++a)
    for (int b = a + 1; b < clusters; ++b)
      if (std::abs(mean[static_cast<std::size_t>(a)] - mean[static_cast<std::size_t>(b)]) < 100 * gap) ctx.ambiguous = true;
  return *std::min_element(mean.begin(), mean.end(), [](C a, C b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
}

// Common eigenvector of the (normalized) family, if the commutator ideal
// leaves a nonzero common kernel.
std::optional<Eigen::VectorXcd> common_eigenvector(const std::vector<CMatrix>& gens, RankContext& ctx) {
  const Eigen::Index m = gens.front().rows();
  const auto ideal = commutator_ideal(gens, ctx.tol);
  CMatrix stacked(static_cast<Eigen::Index>(ideal.size()) * m, m);
  for (std::size_t i = 0; i < ideal.size(); ++i) stacked.middleRows(static_cast<Eigen::Index>(i) * m, m) = ideal[i];
  const CMatrix kernel = ctx.null_space(stacked, std::sqrt(ctx.tol));
  if (kernel.cols() == 0) return std::nullopt;
  // The family commutes on the kernel: intersect eigenspaces one at a time.
  CMatrix span = kernel;
  for (const auto& g : gens) {
    if (span.cols() == 1) break;
    const CMatrix restricted = span.adjoint() * g * span;
    const C lambda = cluster_eigenvalue(restricted, ctx);
    const CMatrix shifted = restricted - lambda * CMatrix::Identity(restricted.rows(), restricted.cols());
    CMatrix e = ctx.null_space(shifted, std::sqrt(ctx.tol) * std::max(1.0, operator_norm(restricted)));
    if (e.cols() == 0) {
      ctx.ambiguous = true;
      Eigen::JacobiSVD<CMatrix> svd(shifted, Eigen::ComputeFullV);
      e = svd.matrixV().rightCols(1);
    }
    span = span * e;
  }
  Eigen::VectorXcd v = span.col(0);
  return v / v.norm();
}

// Unitary matrix whose first column is v.
CMatrix completion(const Eigen::VectorXcd& v) {
  Eigen::HouseholderQR<CMatrix> qr(v);
  CMatrix q = qr.householderQ() * CMatrix::Identity(v.size(), v.size());
  q.col(0) = v;
  return q;
}

std::string complex_text(C c) {
  char buf[96];
  const double scale = std::max(1.0, std::abs(c));
  if (std::abs(c.imag()) <= 1e-12 * scale) std::snprintf(buf, sizeof buf, "%.6g", c.real() == 0.0 ? 0.0 : c.real());
  else std::snprintf(buf, sizeof buf, "(%.6g%+.6g*I)", c.real(), c.imag());
  return buf;
}

std::string pole_factor(C a) {
  if (std::abs(a) == 0.0) return "x";
  const std::string t = complex_text(-a);
  return t.front() == '-' ? "(x - " + t.substr(1) + ")" : "(x + " + t + ")";
}

}  // namespace

void FuchsianSystem::validate() const {
  if (poles.size() != residues.size()) fail(ErrorCode::InvalidArgument, "one residue matrix per pole is required");
  const int n = dimension();
  for (const auto& a : residues)
    if (a.rows() != n || a.cols() != n) fail(ErrorCode::InvalidArgument, "residue matrices must be square of equal size");
  for (std::size_t i = 0; i < poles.size(); ++i)
    for (std::size_t j = i + 1; j < poles.size(); ++j)
      if (std::abs(poles[i] - poles[j]) <= 1e-12 * std::max(1.0, std::abs(poles[i])))
        fail(ErrorCode::InvalidArgument, "poles must be distinct");
}

CMatrix FuchsianSystem::coefficient(C x) const {
  const int n = dimension();
  CMatrix out = CMatrix::Zero(n, n);
  for (std::size_t i = 0; i < poles.size(); ++i) out += residues[i] / (x - poles[i]);
  return out;
}

CMatrix transport(const FuchsianSystem& sys, const std::vector<C>& waypoints, const CMatrix& start,
                  const FuchsianOptions& options, long* steps, long* rejected) {
  CMatrix y = start;
  long s = 0, r = 0;
  for (std::size_t i = 0; i + 1 < waypoints.size(); ++i) integrate_segment(sys, waypoints[i], waypoints[i + 1], y, options, s, r);
  if (steps) *steps = s;
  if (rejected) *rejected = r;
  return y;
}

MonodromyMatrices system_monodromy(const FuchsianSystem& sys, const FuchsianOptions& options) {
  sys.validate();
  MonodromyMatrices out;
  out.base_point = options.base ? *options.base : default_base_point(sys.poles);
  for (const auto& a : sys.poles)
    if (std::abs(out.base_point - a) <= 1e-8 * std::max(1.0, std::abs(a)))
      fail(ErrorCode::BasePointTooClose, "base point lies on a pole");
  const auto loops = generate_loops(sys.poles, out.base_point, options.circle_points);
  const int n = sys.dimension();
  out.loops.resize(loops.size());
  parallel_for(loops.size(), options.threads, [&](std::size_t i) {
    LoopMatrix& lm = out.loops[i];
    lm.loop = loops[i];
    std::vector<C> path = loops[i].waypoints;
    if (path.empty() || path.front() != loops[i].base) path.insert(path.begin(), loops[i].base);
    if (std::abs(path.back() - loops[i].base) > 0) path.push_back(loops[i].base);
    try {
      lm.matrix = transport(sys, path, CMatrix::Identity(n, n), options, &lm.steps, &lm.rejected);
    } catch (const Error& e) {
      fail(e.code(), std::string(e.what()) + " on loop " + std::to_string(i + 1) + " around pole " +
                         complex_text(sys.poles[static_cast<std::size_t>(std::max(0, loops[i].encircled))]));
    }
    lm.condition = condition_number(lm.matrix);
  });
  return out;
}

CMatrix ordered_product(const MonodromyMatrices& m) {
  if (m.loops.empty()) return CMatrix();
  CMatrix out = CMatrix::Identity(m.loops.front().matrix.rows(), m.loops.front().matrix.cols());
  for (const auto& l : m.loops) out = l.matrix * out;
  return out;
}

Triangularization simultaneous_triangularizable(const std::vector<CMatrix>& mats, double tol) {
  Triangularization out;
  if (mats.empty()) {
    out.triangularizable = true;
    return out;
  }
  const Eigen::Index n = mats.front().rows();
  if (n > kMaxDimension) fail(ErrorCode::InvalidArgument, "dimension above " + std::to_string(kMaxDimension));
  for (const auto& m : mats)
    if (m.rows() != n || m.cols() != n) fail(ErrorCode::InvalidArgument, "matrices must be square of equal size");

  RankContext ctx{tol};
  CMatrix basis(n, n);
  CMatrix frame = CMatrix::Identity(n, n);
  std::vector<CMatrix> current = normalized(mats);
  for (Eigen::Index k = 0; k < n; ++k) {
    if (frame.cols() == 1) {
      basis.col(k) = frame.col(0);
      break;
    }
    const auto v = common_eigenvector(current, ctx);
    if (!v) {
      out.triangularizable = false;
      out.obstruction_space = frame;
      for (std::size_t i = 0; i < current.size() && out.obstruction_generators.empty(); ++i)
        for (std::size_t j = i + 1; j < current.size() && out.obstruction_generators.empty(); ++j) {
          RankContext probe{tol};
          if (!common_eigenvector({current[i], current[j]}, probe))
            out.obstruction_generators = {static_cast<int>(i), static_cast<int>(j)};
        }
      if (out.obstruction_generators.empty())
        for (std::size_t i = 0; i < current.size(); ++i) out.obstruction_generators.push_back(static_cast<int>(i));
      out.ambiguous = ctx.ambiguous;
      return out;
    }
    const CMatrix q = completion(*v);
    basis.col(k) = frame * *v;
    const CMatrix rest = q.rightCols(q.cols() - 1);
    frame = frame * rest;
    for (auto& m : current) m = rest.adjoint() * m * rest;
  }
  out.triangularizable = true;
  out.ambiguous = ctx.ambiguous;
  out.basis = basis;
  for (const auto& m : mats) {
    out.conjugated.push_back(basis.adjoint() * m * basis);
    const CMatrix& t = out.conjugated.back();
    const double scale = std::max(operator_norm(m), 1e-300);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < i; ++j) out.max_below = std::max(out.max_below, std::abs(t(i, j)) / scale);
  }
  return out;
}

FuchsianVerdict small_norm_verdict(const FuchsianSystem& sys, double tol) {
  sys.validate();
  FuchsianVerdict v;
  for (const auto& a : sys.residues) v.max_norm = std::max(v.max_norm, operator_norm(a));
  v.triangularization = simultaneous_triangularizable(sys.residues, tol);
  const auto& t = v.triangularization;
  if (!t.triangularizable) {
    v.status = VerdictStatus::NotRepresentable;
    v.conditional = true;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v.max_norm);
    v.reason = "residue matrices have no common flag: strongly non-representable by generalized quadratures, "
               "conditional on the small-norm hypothesis (max residue norm " + std::string(buf) + ")";
    return v;
  }
  v.status = VerdictStatus::Representable;
  v.reason = "residue matrices share a flag: solvable by quadratures";
  const int n = sys.dimension();
  for (int k = n - 1; k >= 0; --k) {
    const std::string z = "z_" + std::to_string(k + 1);
    std::string e;
    for (std::size_t i = 0; i < sys.poles.size(); ++i) {
      const C lambda = t.conjugated[i](k, k);
      if (std::abs(lambda) <= tol) continue;
      e += (e.empty() ? "" : "*") + pole_factor(sys.poles[i]) + "^" + complex_text(lambda);
    }
    std::string coupling;
    for (int j = k + 1; j < n; ++j) {
      std::string b;
      for (std::size_t i = 0; i < sys.poles.size(); ++i) {
        const C c = t.conjugated[i](k, j);
        if (std::abs(c) <= tol * std::max(1.0, v.max_norm)) continue;
        b += (b.empty() ? "" : " + ") + complex_text(c) + "/" + pole_factor(sys.poles[i]);
      }
      if (!b.empty()) coupling += (coupling.empty() ? "" : " + ") + ("(" + b + ")*z_" + std::to_string(j + 1));
    }
    const std::string ek = e.empty() ? "1" : e;
    if (coupling.empty()) v.schedule.push_back(z + " = c_" + std::to_string(k + 1) + "*" + ek);
    else
      v.schedule.push_back(z + " = " + ek + "*(c_" + std::to_string(k + 1) + " + integral((" + ek + ")^(-1)*(" +
                           coupling + ")))");
  }
  v.schedule.push_back("y = basis*z");
  return v;
}

}  // namespace finitude
