#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "finitude/monodromy.hpp"
#include "finitude/solvability.hpp"

namespace finitude {

using CMatrix = Eigen::MatrixXcd;

/// Y' = sum_i A_i / (x - a_i) Y.
struct FuchsianSystem {
  std::vector<std::complex<double>> poles;
  std::vector<CMatrix> residues;

  int dimension() const { return residues.empty() ? 0 : static_cast<int>(residues.front().rows()); }
  /// Throws InvalidArgument for repeated poles or inconsistent shapes.
  void validate() const;
  CMatrix coefficient(std::complex<double> x) const;
};

struct FuchsianOptions {
  double tol = 1e-10;  // local error tolerance per step
  int threads = 1;
  int circle_points = 64;
  long max_steps = 2000000;
  std::optional<std::complex<double>> base;
};

struct LoopMatrix {
  Loop loop;
  CMatrix matrix;
  double condition = 1.0;  // ratio of extreme singular values
  long steps = 0;
  long rejected = 0;
};

struct MonodromyMatrices {
  std::complex<double> base_point;
  std::vector<LoopMatrix> loops;  // same order as the monodromy module's loops
};

/// Transport of start along the polyline: Y(end) with Y(waypoints[0]) = start.
/// Throws StepSizeUnderflow, SingularOnPath.
CMatrix transport(const FuchsianSystem& sys, const std::vector<std::complex<double>>& waypoints,
                  const CMatrix& start, const FuchsianOptions& options = {}, long* steps = nullptr,
                  long* rejected = nullptr);

/// Monodromy of the fundamental solution normalized to the identity at the
/// base point, one matrix per loop. Throws StepSizeUnderflow naming the loop.
MonodromyMatrices system_monodromy(const FuchsianSystem& sys, const FuchsianOptions& options = {});

/// Monodromy of the concatenation loop_1 * loop_2 * ... : M_k ... M_2 M_1.
CMatrix ordered_product(const MonodromyMatrices& m);

struct Triangularization {
  bool triangularizable = false;
  bool ambiguous = false;               // a rank or cluster decision fell near tol
  CMatrix basis;                        // unitary; columns give the flag when triangularizable
  std::vector<CMatrix> conjugated;      // basis^* M_i basis
  double max_below = 0.0;               // largest relative below-diagonal entry
  // Obstruction: a subquotient (columns of obstruction_space, orthonormal) on
  // which the listed generators have no common eigenvector.
  std::vector<int> obstruction_generators;
  CMatrix obstruction_space;
};

/// Common flag search through the ideal generated by commutators. N <= 12.
/// Throws InvalidArgument for larger or inconsistent matrices.
Triangularization simultaneous_triangularizable(const std::vector<CMatrix>& mats, double tol = 1e-8);

struct FuchsianVerdict {
  VerdictStatus status = VerdictStatus::Undecided;
  bool conditional = false;
  std::string reason;
  double max_norm = 0.0;  // largest operator norm of a residue matrix
  Triangularization triangularization;
  std::vector<std::string> schedule;  // quadrature steps, bottom row first
};

/// Representable with a quadrature schedule when the residues share a flag;
/// otherwise NotRepresentable, conditional on the residues being small.
FuchsianVerdict small_norm_verdict(const FuchsianSystem& sys, double tol = 1e-8);

}  // namespace finitude
