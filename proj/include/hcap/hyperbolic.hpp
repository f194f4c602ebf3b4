#pragma once

// Hyperbolic metric (curvature -1) on the upper half-plane and the unit disk,
// hyperbolic balls as euclidean disks, and certified areas of hyperbolic
// neighborhoods N_rho(S) and filled neighborhoods.

#include <boost/math/tools/toms748_solve.hpp>
#include <cmath>
#include <cstdint>
#include <deque>
#include <span>
#include <utility>
#include <vector>

#include "geometry.hpp"
#include "quadtree.hpp"

namespace hcap {

namespace detail {
inline void require_halfplane(Point z) {
  if (!(z.y > 0.0)) throw DomainError("point is not in the open upper half-plane");
}
inline void require_disk(Point z) {
  if (!(norm(z) < 1.0)) throw DomainError("point is not in the open unit disk");
}
inline void require_interior(Space space, Point z) {
  space == Space::halfplane ? require_halfplane(z) : require_disk(z);
}
inline bool interior(Space space, Point z) { return space == Space::halfplane ? z.y > 0.0 : norm(z) < 1.0; }
}  // namespace detail

inline double hyp_dist_h(Point z, Point w) {
  detail::require_halfplane(z);
  detail::require_halfplane(w);
  return 2.0 * std::asinh(dist(z, w) / (2.0 * std::sqrt(z.y * w.y)));
}

inline double hyp_dist_d(Point z, Point w) {
  detail::require_disk(z);
  detail::require_disk(w);
  const double nz = norm(z), nw = norm(w);
  return 2.0 * std::asinh(dist(z, w) / std::sqrt((1.0 - nz) * (1.0 + nz) * (1.0 - nw) * (1.0 + nw)));
}

inline double hyp_dist(Space space, Point z, Point w) {
  return space == Space::halfplane ? hyp_dist_h(z, w) : hyp_dist_d(z, w);
}

/// Closed hyperbolic ball together with the euclidean disk it coincides with.
struct HypBall {
  Point euclidean_center;
  double euclidean_radius;
  Point hyp_center;
  double hyp_radius;
  Space space;
};

inline HypBall hyp_ball(Space space, Point center, double rho) {
  detail::require_interior(space, center);
  if (!(rho >= 0.0)) throw DomainError("hyperbolic radius must be nonnegative");
  if (space == Space::halfplane)
    return {{center.x, center.y * std::cosh(rho)}, center.y * std::sinh(rho), center, rho, space};
  const double s = norm(center);
  const Point u = s > 0.0 ? (1.0 / s) * center : Point{1.0, 0.0};
  const double a = std::atanh(s);
  const double hi = std::tanh(a + 0.5 * rho), lo = std::tanh(a - 0.5 * rho);
  return {0.5 * (hi + lo) * u, 0.5 * (hi - lo), center, rho, space};
}

/// Largest euclidean radius r such that the disk of radius r about the ball's
/// hyperbolic center lies inside the ball.
inline double inscribed_radius(const HypBall& b) {
  return std::max(0.0, b.euclidean_radius - dist(b.euclidean_center, b.hyp_center));
}

inline bool set_meets_hyp_ball(std::span<const Shape> shapes, Space space, Point center, double rho) {
  const HypBall b = hyp_ball(space, center, rho);
  return set_intersects_disk(shapes, b.euclidean_center, b.euclidean_radius);
}

/// z in N_rho(S), decided by one exact disk-shape intersection query.
inline bool neighborhood_member(Space space, Point z, std::span<const Shape> shapes, double rho) {
  detail::require_interior(space, z);
  return set_meets_hyp_ball(shapes, space, z, rho);
}

/// Bracket [lower, upper] on the hyperbolic distance from z to S. The lower end is
/// certified (S misses the ball of that radius). Iteration stops once the bracket is
/// narrower than rel_tol * (lower - offset) or abs_tol.
struct DistBracket {
  double lower;
  double upper;
};

inline DistBracket hyp_dist_to_set(Space space, Point z, std::span<const Shape> shapes, double offset = 0.0,
                                   double rel_tol = 1e-3, double abs_tol = 1e-12) {
  detail::require_interior(space, z);
  const double inf = std::numeric_limits<double>::infinity();
  if (shapes.empty()) return {inf, inf};
  const auto signed_gap = [&](double r) {
    const HypBall b = hyp_ball(space, z, r);
    return min_distance(b.euclidean_center, shapes) - b.euclidean_radius;
  };
  const double f0 = min_distance(z, shapes);
  if (f0 <= 0.0) return {0.0, 0.0};
  double lo = 0.0, flo = f0;
  double hi = std::max(1.0, 2.0 * offset), fhi = signed_gap(hi);
  while (fhi > 0.0) {
    lo = hi, flo = fhi;
    hi *= 2.0;
    if (hi > 80.0) return {lo, inf};
    fhi = signed_gap(hi);
  }
  if (fhi == 0.0) return {hi, hi};
  std::uintmax_t iters = 200;
  const auto done = [&](double a, double b) { return b - a <= std::max(rel_tol * std::max(a - offset, 0.0), abs_tol); };
  const auto [a, b] = boost::math::tools::toms748_solve(signed_gap, lo, hi, flo, fhi, done, iters);
  return {a, b};
}

// ---------------------------------------------------------------------------
// Certified neighborhood areas

namespace detail {

struct NeighborhoodClassifier {
  std::span<const Shape> shapes;
  Space space;
  double rho;

  CellEval operator()(const Rect& r) const {
    const double measure = space == Space::disk ? rect_disk_area(r) : r.area();
    if (measure <= 0.0) return {CellClass::outside, 0.0, 0.0};
    const bool clip = space == Space::disk;
    for (const Shape& s : shapes)
      if (rect_inside_shape(r, s, clip)) return {CellClass::inside, measure, measure};

    const Point c = r.center();
    const double hd = r.half_diagonal();
    // euclidean reach of all radius-rho balls centred in the cell
    double reach;
    if (space == Space::halfplane) {
      reach = hd + r.y1 * std::expm1(rho);
    } else {
      const double tmax = std::clamp(1.0 - min_norm(r), 0.0, 1.0);
      reach = hd + 2.0 * tmax * std::exp(rho);
    }
    if (!set_intersects_disk(shapes, c, reach)) return {CellClass::outside, 0.0, 0.0};

    // hyperbolic radius of the cell about its centre
    double rh = std::numeric_limits<double>::infinity();
    if (space == Space::halfplane) {
      if (r.y0 > 0.0) {
        rh = 0.0;
        for (Point q : r.corners()) rh = std::max(rh, hyp_dist_h(c, q));
      }
    } else {
      const double rmax = max_norm(r);
      if (rmax < 1.0) rh = hd * 2.0 / ((1.0 - rmax) * (1.0 + rmax));
    }
    if (std::isfinite(rh)) {
      if (rh < rho && set_meets_hyp_ball(shapes, space, c, rho - rh)) return {CellClass::inside, measure, measure};
      if (!set_meets_hyp_ball(shapes, space, c, rho + rh)) return {CellClass::outside, 0.0, 0.0};
    }
    return {CellClass::mixed, 0.0, measure};
  }
};

inline Rect neighborhood_root(std::span<const Shape> shapes, Space space, double rho) {
  if (space == Space::disk) return {-1.0, -1.0, 1.0, 1.0};
  const Rect b = bounding_box(shapes);
  const double pad = b.y1 * std::sinh(rho);
  return {b.x0 - pad, b.y0 * std::exp(-rho), b.x1 + pad, b.y1 * std::exp(rho)};
}

inline void require_rho(double rho) {
  if (!(rho > 0.0)) throw DomainError("neighborhood radius must be positive");
}

}  // namespace detail

/// Certified bounds on the euclidean area of N_rho(S).
inline AreaBounds neighborhood_area(std::span<const Shape> shapes, Space space, double rho, const QuadOptions& opt) {
  detail::require_rho(rho);
  if (shapes.empty()) return {};
  if (space == Space::halfplane)
    for (const Shape& s : shapes)
      if (bounding_box(s).y1 <= 0.0) throw DomainError("half-plane shapes must reach into the upper half-plane");
  return certified_integral(detail::neighborhood_root(shapes, space, rho),
                            detail::NeighborhoodClassifier{shapes, space, rho}, opt);
}

inline AreaBounds neighborhood_area(const HalfPlaneHull& a, double rho, const QuadOptions& opt) {
  return neighborhood_area(a.shapes(), Space::halfplane, rho, opt);
}
inline AreaBounds neighborhood_area(const DiskCompact& b, double rho, const QuadOptions& opt) {
  return neighborhood_area(b.shapes(), Space::disk, rho, opt);
}

/// Area of the filled neighborhood N^_rho(B) = N_rho(B) plus the components of
/// D \ N_rho(B) not containing 0, with the enclosed part reported separately.
struct FilledAreaBounds {
  AreaBounds filled;
  AreaBounds enclosed;
  AreaBounds neighborhood;
};

namespace detail {

template <class Tree>
std::vector<char> flood_from_origin(const Tree& tree, bool certified_only) {
  const auto& nodes = tree.nodes();
  std::vector<char> seen(nodes.size(), 0);
  std::deque<std::int32_t> queue;
  const auto passable = [&](const QuadNode& n) {
    if (n.eval.cls == CellClass::inside) return false;
    if (rect_disk_area(n.rect) <= 0.0) return false;
    if (certified_only) return n.eval.cls == CellClass::outside;
    return true;
  };
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const QuadNode& n = nodes[i];
    if (n.leaf() && n.rect.contains({0.0, 0.0}) && passable(n)) {
      seen[i] = 1;
      queue.push_back(static_cast<std::int32_t>(i));
    }
  }
  while (!queue.empty()) {
    const std::int32_t cur = queue.front();
    queue.pop_front();
    tree.for_each_neighbor(cur, [&](std::int32_t nb, const Rect& edge) {
      if (seen[nb] || !passable(nodes[nb])) return;
      // certified connectivity needs the shared edge to reach into the open disk
      if (certified_only && min_norm(edge) >= 1.0) return;
      seen[nb] = 1;
      queue.push_back(nb);
    });
  }
  return seen;
}

}  // namespace detail

inline FilledAreaBounds filled_neighborhood_area(std::span<const Shape> shapes, double rho, const QuadOptions& opt) {
  detail::require_rho(rho);
  FilledAreaBounds out;
  if (shapes.empty()) return out;
  if (set_meets_hyp_ball(shapes, Space::disk, {0.0, 0.0}, rho))
    throw DomainError("0 lies in the neighborhood; the filled neighborhood is undefined");

  using Classifier = detail::NeighborhoodClassifier;
  CertifiedQuadtree<Classifier> tree(detail::neighborhood_root(shapes, Space::disk, rho),
                                     Classifier{shapes, Space::disk, rho});
  const auto fill = [&](const AreaBounds& nb) {
    const auto reach_any = detail::flood_from_origin(tree, false);
    const auto reach_cert = detail::flood_from_origin(tree, true);
    double enc_lo = 0.0, enc_hi = 0.0;
    const auto& nodes = tree.nodes();
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const QuadNode& n = nodes[i];
      if (!n.leaf() || n.eval.cls != CellClass::outside) continue;
      const double m = rect_disk_area(n.rect);
      if (m <= 0.0) continue;
      if (!reach_any[i]) enc_lo += m;
      if (!reach_cert[i]) enc_hi += m;
    }
    FilledAreaBounds f;
    f.neighborhood = nb;
    f.neighborhood.tolerance_met = nb.width() <= quad_target(opt, nb.upper);
    f.enclosed = {enc_lo, enc_hi, nb.cells_refined, true};
    f.filled = {nb.lower + enc_lo, nb.upper + enc_hi, nb.cells_refined, true};
    f.filled.tolerance_met = f.filled.width() <= quad_target(opt, f.filled.upper);
    f.enclosed.tolerance_met = f.filled.tolerance_met;
    return f;
  };
  for (;;) {
    const AreaBounds nb = tree.bounds();
    if (nb.width() <= quad_target(opt, nb.upper)) {
      FilledAreaBounds f = fill(nb);
      if (f.filled.tolerance_met) return f;
    }
    if (!tree.refine_level(opt)) return fill(tree.bounds());
  }
}

inline FilledAreaBounds filled_neighborhood_area(const DiskCompact& b, double rho, const QuadOptions& opt) {
  return filled_neighborhood_area(b.shapes(), rho, opt);
}

}  // namespace hcap
