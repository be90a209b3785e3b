#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "finitude/bivariate.hpp"
#include "finitude/perm_group.hpp"
#include "finitude/roots.hpp"

namespace finitude {

struct SingularSet {
  std::vector<ComplexInterval> points;
  Polynomial polynomial;  // square-free part of lc_y(P) * disc_y(P)
};

/// Closed polyline starting and ending at the base point.
struct Loop {
  std::complex<double> base;
  std::vector<std::complex<double>> waypoints;
  int encircled = -1;  // index into the singular set, -1 for auxiliary loops
};

struct MonodromyOptions {
  double tol = 1e-10;             // Newton corrector tolerance (relative)
  double enclosure_tol = 1e-10;   // radius bound for singular point enclosures
  double match_fraction = 1.0 / 3.0;
  int threads = 1;
  int max_degree = 32;
  std::optional<std::complex<double>> base;
};

struct OrbitGroup {
  std::vector<int> points;
  PermGroup group;  // action restricted to the orbit, points relabeled 0..|orbit|-1
};

struct MonodromyAction {
  std::complex<double> base_point;
  SingularSet singular;
  std::vector<Loop> loops;
  std::vector<std::complex<double>> roots;  // labeled branch values at the base point
  std::vector<Perm> generators;             // one per loop, in loop order
  PermGroup group;
  bool transitive = true;
  std::vector<OrbitGroup> orbit_groups;
};

/// Roots of lc_y(P) * disc_y(P). Throws DegreeTooLow, SquareFreeRequired.
SingularSet singular_points(const BivariatePolynomial& p, double tol = 1e-10);

/// Base point rule shared with the Fuchsian module: 1 + 2 * max |s|.
std::complex<double> default_base_point(const std::vector<std::complex<double>>& points);

/// One counterclockwise lasso per point, ordered by the angle of s - base in
/// [0, 2pi) with nearer points first on ties. A nearer point lying on a ray is
/// passed on the left-hand side of the direction of travel. Throws BasePointTooClose.
std::vector<Loop> generate_loops(const std::vector<std::complex<double>>& points,
                                 std::complex<double> base, int circle_points = 64);

/// Circle through the base point centered at the origin, clockwise when
/// requested. Used to check the relation at infinity.
Loop enclosing_circle(std::complex<double> base, bool clockwise, int circle_points = 256);

/// Tracks all branches along the loop. Returns sigma with tracked branch i
/// ending at start root sigma(i). Throws PathCollision, SingularOnPath.
Perm continue_roots(const BivariatePolynomial& p, const Loop& loop,
                    const std::vector<std::complex<double>>& start,
                    const MonodromyOptions& options = {},
                    const SingularSet* singular = nullptr);

/// Tracks all branches along an open polyline; returns the fiber at every
/// waypoint with labels carried by continuation. Throws PathCollision.
std::vector<std::vector<std::complex<double>>> track_path(const BivariatePolynomial& p,
                                                          const std::vector<std::complex<double>>& waypoints,
                                                          const std::vector<std::complex<double>>& start,
                                                          const MonodromyOptions& options = {});

/// Roots of P(base, y), sorted by (re, im).
std::vector<std::complex<double>> fiber(const BivariatePolynomial& p, std::complex<double> base);

MonodromyAction monodromy_group(const BivariatePolynomial& p, const MonodromyOptions& options = {});

}  // namespace finitude
