#include "finitude/monodromy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "finitude/error.hpp"
#include "finitude/parallel.hpp"

namespace finitude {

namespace {

using C = std::complex<double>;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

GR exact_from_double(C z) {
  return GR(Rational(mpq_class(z.real())), Rational(mpq_class(z.imag())));
}

double normalized_angle(C d) {
  double a = std::arg(d);
  if (a < 0) a += kTwoPi;
  if (a >= kTwoPi) a -= kTwoPi;
  return a;
}

// Minimum-cost perfect matching on a square matrix (Kuhn-Munkres with potentials).
std::vector<int> hungarian(const std::vector<std::vector<double>>& cost) {
  const int n = static_cast<int>(cost.size());
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0), minv(n + 1);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  std::vector<char> used(n + 1);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::fill(minv.begin(), minv.end(), inf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      const int i0 = p[j0];
      double delta = inf;
      int j1 = 0;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<int> assignment(n);
  for (int j = 1; j <= n; ++j) assignment[p[j] - 1] = j - 1;
  return assignment;
}

double min_separation(const std::vector<C>& ys, std::size_t k) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t l = 0; l < ys.size(); ++l)
    if (l != k) best = std::min(best, std::abs(ys[k] - ys[l]));
  return best;
}

class Tracker {
 public:
  Tracker(const BivariatePolynomial& p, double tol) : tol_(tol) {
    for (const auto& c : p.y_coeffs()) {
      coeffs_.push_back(c.to_complex());
      dcoeffs_.push_back(c.derivative().to_complex());
    }
  }

  // Advances every branch from x0 to x1; returns false when the step must shrink.
  bool step(C x0, C x1, std::vector<C>& ys) const {
    const auto a0 = eval(coeffs_, x0);
    const auto da0 = eval(dcoeffs_, x0);
    const auto a1 = eval(coeffs_, x1);
    std::vector<C> next(ys.size());
    for (std::size_t k = 0; k < ys.size(); ++k) {
      const double sep = min_separation(ys, k);
      C f, fy;
      horner(a0, ys[k], f, fy);
      C fx, unused;
      horner(da0, ys[k], fx, unused);
      if (fy == C(0)) return false;
      C y = ys[k] - fx / fy * (x1 - x0);
      if (!std::isfinite(y.real()) || !std::isfinite(y.imag())) return false;
      double prev = std::numeric_limits<double>::infinity();
      bool converged = false;
      for (int it = 0; it < 3 && !converged; ++it) {
        horner(a1, y, f, fy);
        if (fy == C(0)) return false;
        const C delta = f / fy;
        const double size = std::abs(delta);
        if (!std::isfinite(size)) return false;
        y -= delta;
        if (size <= tol_ * std::max(1.0, std::abs(y))) converged = true;
        else if (size > prev / 4.0) return false;
        prev = size;
      }
      if (!converged) return false;
      if (std::isfinite(sep) && std::abs(y - ys[k]) >= 0.25 * sep) return false;
      next[k] = y;
    }
    ys.swap(next);
    return true;
  }

 private:
  static std::vector<C> eval(const std::vector<std::vector<C>>& polys, C x) {
    std::vector<C> out(polys.size());
    for (std::size_t j = 0; j < polys.size(); ++j) {
      C acc = 0;
      for (auto it = polys[j].rbegin(); it != polys[j].rend(); ++it) acc = acc * x + *it;
      out[j] = acc;
    }
    return out;
  }
  static void horner(const std::vector<C>& a, C y, C& f, C& fy) {
    f = 0;
    fy = 0;
    for (auto it = a.rbegin(); it != a.rend(); ++it) {
      fy = fy * y + f;
      f = f * y + *it;
    }
  }

  double tol_;
  std::vector<std::vector<C>> coeffs_;
  std::vector<std::vector<C>> dcoeffs_;
};

double segment_distance(C a, C b, C z) {
  const C d = b - a;
  const double len2 = std::norm(d);
  if (len2 == 0.0) return std::abs(z - a);
  const double t = std::clamp(((z - a) * std::conj(d)).real() / len2, 0.0, 1.0);
  return std::abs(z - (a + t * d));
}

}  // namespace

SingularSet singular_points(const BivariatePolynomial& p, double tol) {
  if (p.degree_y() < 2) fail(ErrorCode::DegreeTooLow, "singular points need degree at least 2 in y");
  const Polynomial disc = discriminant_y(p);
  if (disc.is_zero()) fail(ErrorCode::SquareFreeRequired, "polynomial has a repeated factor in y");
  SingularSet out;
  out.polynomial = squarefree_part(p.leading_y() * disc);
  if (out.polynomial.degree() <= 0) return out;
  for (const auto& r : distinct_roots(out.polynomial, tol)) out.points.push_back(r.interval);
  return out;
}

C default_base_point(const std::vector<C>& points) {
  double m = 0.0;
  for (const auto& s : points) m = std::max(m, std::abs(s));
  return C(1.0 + 2.0 * m, 0.0);
}

std::vector<Loop> generate_loops(const std::vector<C>& points, C base, int circle_points) {
  const std::size_t n = points.size();
  double scale = std::abs(base);
  for (const auto& s : points) scale = std::max(scale, std::abs(s));
  scale = std::max(scale, 1.0);
  for (const auto& s : points)
    if (std::abs(s - base) < 1e-8 * scale)
      fail(ErrorCode::BasePointTooClose, "base point coincides with a singular point");
  circle_points = std::max(circle_points, 64);

  std::vector<double> rho(n), detour(n), angle(n), dist(n);
  for (std::size_t i = 0; i < n; ++i) {
    double sep = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) sep = std::min(sep, std::abs(points[i] - points[j]));
    dist[i] = std::abs(points[i] - base);
    rho[i] = std::min(0.5 * dist[i], 0.25 * sep);
    detour[i] = 1.25 * rho[i];
    angle[i] = normalized_angle(points[i] - base);
  }

  const double angle_tie = 1e-12;
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (angle[a] != angle[b]) return angle[a] < angle[b];
    return dist[a] < dist[b];
  });
  // Group near-equal angles so nearer points come first within a tie.
  for (std::size_t start = 0; start < n;) {
    std::size_t end = start + 1;
    while (end < n && angle[order[end]] - angle[order[end - 1]] < angle_tie) ++end;
    std::sort(order.begin() + static_cast<long>(start), order.begin() + static_cast<long>(end),
              [&](std::size_t a, std::size_t b) { return dist[a] < dist[b]; });
    start = end;
  }

  std::vector<Loop> loops;
  for (std::size_t i : order) {
    const C u = (points[i] - base) / dist[i];
    const double reach = dist[i] - rho[i];
    struct Obstacle {
      double t;
      std::size_t index;
      bool pass_left;
    };
    std::vector<Obstacle> obstacles;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      const C rel = (points[j] - base) * std::conj(u);
      const double t = rel.real();
      const double h = rel.imag();
      if (t <= 0.0 || t >= reach || std::abs(h) >= detour[j]) continue;
      const bool tie = std::abs(angle[j] - angle[i]) < angle_tie;
      obstacles.push_back({t, j, tie || h < 0.0});
    }
    std::sort(obstacles.begin(), obstacles.end(),
              [](const Obstacle& a, const Obstacle& b) { return a.t < b.t; });

    std::vector<C> outbound{base};
    const int arc_points = std::max(16, circle_points / 4);
    for (const auto& ob : obstacles) {
      const C s = points[ob.index];
      const double r = detour[ob.index];
      outbound.push_back(base + (ob.t - r) * u);
      for (int k = 0; k <= arc_points; ++k) {
        const double psi = std::numbers::pi * k / arc_points;
        const C side = ob.pass_left ? C(std::cos(psi), -std::sin(psi)) : C(std::cos(psi), std::sin(psi));
        outbound.push_back(s - r * u * side);
      }
      outbound.push_back(base + (ob.t + r) * u);
    }
    const C entry = points[i] - rho[i] * u;
    outbound.push_back(entry);

    Loop loop;
    loop.base = base;
    loop.encircled = static_cast<int>(i);
    loop.waypoints = outbound;
    for (int k = 1; k <= circle_points; ++k) {
      const double phi = kTwoPi * k / circle_points;
      loop.waypoints.push_back(k == circle_points ? entry
                                                  : points[i] - rho[i] * u * C(std::cos(phi), std::sin(phi)));
    }
    for (auto it = outbound.rbegin() + 1; it != outbound.rend(); ++it) loop.waypoints.push_back(*it);
    loops.push_back(std::move(loop));
  }
  return loops;
}

Loop enclosing_circle(C base, bool clockwise, int circle_points) {
  Loop loop;
  loop.base = base;
  const double r = std::abs(base);
  const double a0 = std::arg(base);
  const double dir = clockwise ? -1.0 : 1.0;
  loop.waypoints.push_back(base);
  for (int k = 1; k < circle_points; ++k)
    loop.waypoints.push_back(std::polar(r, a0 + dir * kTwoPi * k / circle_points));
  loop.waypoints.push_back(base);
  return loop;
}

std::vector<C> fiber(const BivariatePolynomial& p, C base) {
  const Polynomial q = p.at_x(exact_from_double(base));
  if (q.degree() != p.degree_y())
    fail(ErrorCode::BasePointTooClose, "leading coefficient vanishes at the base point");
  std::vector<C> out;
  for (const auto& r : distinct_roots(q, 1e-9 * std::max(1.0, std::abs(base)))) {
    if (r.multiplicity > 1) fail(ErrorCode::BasePointTooClose, "base point fiber has a repeated root");
    out.push_back(r.interval.center);
  }
  return out;
}

std::vector<std::vector<C>> track_path(const BivariatePolynomial& p, const std::vector<C>& waypoints,
                                       const std::vector<C>& start, const MonodromyOptions& options) {
  if (waypoints.empty()) fail(ErrorCode::InvalidArgument, "path needs at least one waypoint");
  const Tracker tracker(p, options.tol);
  std::vector<C> ys = start;
  std::vector<std::vector<C>> out{ys};
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < waypoints.size(); ++k) total += std::abs(waypoints[k + 1] - waypoints[k]);
  const double min_step = 1e-13 * std::max(1.0, total);

  double h = total;
  for (std::size_t k = 0; k + 1 < waypoints.size(); ++k) {
    const C a = waypoints[k];
    const C b = waypoints[k + 1];
    const double len = std::abs(b - a);
    double s = 0.0;
    if (len > 0.0) h = std::min(h, len);
    while (s < len) {
      const double step = std::min(h, len - s);
      const bool last = s + step >= len;
      const C x0 = a + (b - a) * (s / len);
      const C x1 = last ? b : a + (b - a) * ((s + step) / len);
      if (tracker.step(x0, x1, ys)) {
        s = last ? len : s + step;
        h = step * 1.6;
      } else {
        h = step / 2.0;
        if (h < min_step) fail(ErrorCode::PathCollision, "branches collide during continuation");
      }
    }
    out.push_back(ys);
  }
  return out;
}

Perm continue_roots(const BivariatePolynomial& p, const Loop& loop, const std::vector<C>& start,
                    const MonodromyOptions& options, const SingularSet* singular) {
  const std::size_t n = start.size();
  if (static_cast<int>(n) != p.degree_y())
    fail(ErrorCode::InvalidArgument, "start fiber size differs from the degree in y");
  if (loop.waypoints.size() < 2) fail(ErrorCode::InvalidArgument, "loop needs at least two waypoints");

  SingularSet local;
  if (singular == nullptr && p.degree_y() >= 2) {
    local = singular_points(p, options.enclosure_tol);
    singular = &local;
  }
  if (singular != nullptr) {
    for (std::size_t k = 0; k + 1 < loop.waypoints.size(); ++k)
      for (const auto& s : singular->points)
        if (segment_distance(loop.waypoints[k], loop.waypoints[k + 1], s.center) <=
            s.radius + 1e-12 * std::max(1.0, std::abs(s.center)))
          fail(ErrorCode::SingularOnPath, "loop passes through a singular point");
  }

  const std::vector<C> ys = track_path(p, loop.waypoints, start, options).back();

  double sep = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < n; ++k) sep = std::min(sep, min_separation(start, k));
  std::vector<std::vector<double>> cost(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) cost[i][j] = std::abs(ys[i] - start[j]);
  const auto assignment = hungarian(cost);
  Perm sigma(n);
  for (std::size_t i = 0; i < n; ++i) {
    const int j = assignment[i];
    if (n > 1 && !(cost[i][static_cast<std::size_t>(j)] < options.match_fraction * sep))
      fail(ErrorCode::PathCollision, "continued branch does not return to a start root");
    sigma[i] = j;
  }
  return sigma;
}

MonodromyAction monodromy_group(const BivariatePolynomial& p, const MonodromyOptions& options) {
  const BivariatePolynomial q = p.primitive_part_y();
  const int n = q.degree_y();
  if (n < 1) fail(ErrorCode::DegreeTooLow, "polynomial does not involve y");
  if (n > options.max_degree) fail(ErrorCode::DegreeTooLarge, "degree in y exceeds the configured cap");

  MonodromyAction out;
  if (n == 1) {
    out.singular.polynomial = squarefree_part(q.leading_y());
    if (out.singular.polynomial.degree() > 0)
      for (const auto& r : distinct_roots(out.singular.polynomial, options.enclosure_tol))
        out.singular.points.push_back(r.interval);
  } else {
    out.singular = singular_points(q, options.enclosure_tol);
  }
  std::vector<C> centers;
  for (const auto& s : out.singular.points) centers.push_back(s.center);
  out.base_point = options.base ? *options.base : default_base_point(centers);
  for (const auto& s : out.singular.points)
    if (std::abs(out.base_point - s.center) <= std::max(10.0 * s.radius, 1e-8))
      fail(ErrorCode::BasePointTooClose, "base point lies on a singular point");
  out.loops = generate_loops(centers, out.base_point);
  out.roots = fiber(q, out.base_point);

  out.generators.assign(out.loops.size(), perm_identity(n));
  if (n > 1) {
    parallel_for(out.loops.size(), options.threads, [&](std::size_t i) {
      out.generators[i] = continue_roots(q, out.loops[i], out.roots, options, &out.singular);
    });
  }
  out.group = PermGroup(n, out.generators);
  const auto orbits = out.group.orbits();
  out.transitive = orbits.size() == 1;
  for (const auto& orbit : orbits) out.orbit_groups.push_back({orbit, restrict_group(out.group, orbit)});
  return out;
}

}  // namespace finitude
