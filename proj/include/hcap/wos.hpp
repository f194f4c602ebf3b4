#pragma once

// Walk-on-spheres sampling of Brownian exit points from "disk minus compact set" and
// "half-plane minus hull" domains.

#include <cmath>
#include <concepts>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "geometry.hpp"
#include "hyperbolic.hpp"
#include "parallel.hpp"

namespace hcap {

class EstimatorError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class BoundaryKind : std::uint8_t { real_axis, unit_circle, obstacle };

struct BoundaryLabel {
  BoundaryKind kind = BoundaryKind::real_axis;
  int shape = -1;  // obstacle index, -1 otherwise

  friend bool operator==(const BoundaryLabel&, const BoundaryLabel&) = default;
};

struct BoundaryHit {
  Point point;
  BoundaryLabel label;
};

struct WalkResult {
  Point terminal;
  BoundaryLabel label;
  std::uint32_t steps = 0;
  double stop_dist = 0.0;
  bool flagged = false;
  double weight = 1.0;  // likelihood weight of a conditioned first step

  friend bool operator==(const WalkResult&, const WalkResult&) = default;
};

template <class D>
concept DomainOracle = requires(const D& d, Point p) {
  { d.dist_to_boundary(p) } -> std::convertible_to<double>;
  { d.classify_nearest(p) } -> std::same_as<BoundaryHit>;
  { d.space() } -> std::same_as<Space>;
};

namespace detail {

// Nearest obstacle point and index; ties go to the lowest index.
inline std::pair<double, int> nearest_obstacle(Point p, std::span<const Shape> shapes) {
  double best = std::numeric_limits<double>::infinity();
  int idx = -1;
  for (std::size_t i = 0; i < shapes.size(); ++i) {
    const double d = euclid_dist(p, shapes[i]);
    if (d < best) best = d, idx = static_cast<int>(i);
  }
  return {best, idx};
}

}  // namespace detail

/// The unit disk minus a compact set.
class DiskDomain {
 public:
  DiskDomain() = default;
  explicit DiskDomain(std::vector<Shape> shapes) : shapes_(std::move(shapes)) {}
  explicit DiskDomain(const DiskCompact& b) : shapes_(b.shapes().begin(), b.shapes().end()) {}

  Space space() const { return Space::disk; }
  std::span<const Shape> shapes() const { return shapes_; }

  double dist_to_boundary(Point p) const {
    return std::max(0.0, std::min(1.0 - norm(p), min_distance(p, shapes_)));
  }

  BoundaryHit classify_nearest(Point p) const {
    const auto [d, idx] = detail::nearest_obstacle(p, shapes_);
    const double dc = 1.0 - norm(p);
    if (idx >= 0 && d <= dc) return {nearest_point(p, shapes_[idx]), {BoundaryKind::obstacle, idx}};
    const double r = norm(p);
    return {r > 0.0 ? (1.0 / r) * p : Point{1.0, 0.0}, {BoundaryKind::unit_circle, -1}};
  }

 private:
  std::vector<Shape> shapes_;
};

/// The upper half-plane minus a hull. Outside a semicircle enclosing the hull the
/// exit law onto that semicircle and the real axis is known in closed form, which
/// lets walks cross the far field in one step.
class HalfPlaneDomain {
 public:
  HalfPlaneDomain() = default;
  explicit HalfPlaneDomain(const HalfPlaneHull& a) : shapes_(a.shapes().begin(), a.shapes().end()) {
    if (!a.empty()) {
      xc_ = a.center_x();
      radius_ = 1.05 * a.radius_about_center();
    }
  }

  Space space() const { return Space::halfplane; }
  std::span<const Shape> shapes() const { return shapes_; }
  bool empty() const { return shapes_.empty(); }
  double far_center() const { return xc_; }
  double far_radius() const { return radius_; }

  double dist_to_boundary(Point p) const { return std::max(0.0, std::min(p.y, min_distance(p, shapes_))); }

  BoundaryHit classify_nearest(Point p) const {
    const auto [d, idx] = detail::nearest_obstacle(p, shapes_);
    if (idx >= 0 && d <= p.y) return {nearest_point(p, shapes_[idx]), {BoundaryKind::obstacle, idx}};
    return {{p.x, 0.0}, {BoundaryKind::real_axis, -1}};
  }

  bool in_far_field(Point p) const {
    const double dx = p.x - xc_;
    return dx * dx + p.y * p.y > radius_ * radius_ * (1.0 + 1e-9);
  }

  /// Image of p under phi(z) = (z - xc) + R^2/(z - xc), which maps the outside of the
  /// semicircle onto the half-plane and the semicircle onto [-2R, 2R].
  Point far_image(Point p) const {
    const std::complex<double> u{p.x - xc_, p.y};
    return to_point(u + radius_ * radius_ / u);
  }

  /// Probability that Brownian motion from p (outside the semicircle) reaches it
  /// before the real axis.
  double far_hit_probability(Point p) const {
    const Point w = far_image(p);
    const double two_r = 2.0 * radius_;
    return (std::atan2(w.y, w.x - two_r) - std::atan2(w.y, w.x + two_r)) / kPi;
  }

  Point semicircle_point(double X) const {
    const double theta = std::acos(std::clamp(X / (2.0 * radius_), -1.0, 1.0));
    return {xc_ + radius_ * std::cos(theta), radius_ * std::sin(theta)};
  }

  /// Real-axis point whose image under phi is X, for |X| > 2R.
  double axis_point(double X) const {
    const double t = 0.5 * (X + std::copysign(std::sqrt(X * X - 4.0 * radius_ * radius_), X));
    return xc_ + t;
  }

 private:
  std::vector<Shape> shapes_;
  double xc_ = 0.0;
  double radius_ = 0.0;
};

/// The unit disk minus the closed neighborhood N_rho(S). Step radii come from a
/// certified lower bound on the hyperbolic distance to S.
class NeighborhoodDomain {
 public:
  NeighborhoodDomain(std::vector<Shape> shapes, double rho) : shapes_(std::move(shapes)), rho_(rho) {
    if (!(rho > 0.0)) throw DomainError("neighborhood radius must be positive");
  }

  Space space() const { return Space::disk; }
  std::span<const Shape> shapes() const { return shapes_; }
  double rho() const { return rho_; }

  bool contains_in_neighborhood(Point p) const { return neighborhood_member(Space::disk, p, shapes_, rho_); }

  double neighborhood_clearance(Point p) const {
    if (!(norm(p) < 1.0)) return 0.0;
    const DistBracket b = hyp_dist_to_set(Space::disk, p, shapes_, rho_, 0.05, 1e-12);
    if (!(b.lower > rho_)) return 0.0;
    if (std::isinf(b.lower)) return 1.0 - norm(p);
    return inscribed_radius(hyp_ball(Space::disk, p, b.lower - rho_));
  }

  double dist_to_boundary(Point p) const {
    return std::max(0.0, std::min(1.0 - norm(p), neighborhood_clearance(p)));
  }

  /// The walk stops within eps of the boundary; the terminal is the stopping point
  /// itself for the neighborhood and its radial projection for the circle.
  /// A hyperbolic ball is always thinner than the gap to the circle, so the
  /// comparison uses an upper bound on the euclidean distance to the neighborhood.
  BoundaryHit classify_nearest(Point p) const {
    const double dc = 1.0 - norm(p);
    if (reach_bound(p) <= dc) return {p, {BoundaryKind::obstacle, nearest_shape(p)}};
    const double r = norm(p);
    return {r > 0.0 ? (1.0 / r) * p : Point{1.0, 0.0}, {BoundaryKind::unit_circle, -1}};
  }

  /// Upper bound on the euclidean distance from p to N_rho(S).
  double reach_bound(Point p) const {
    if (!(norm(p) < 1.0)) return 0.0;
    const DistBracket b = hyp_dist_to_set(Space::disk, p, shapes_, rho_, 0.05, 1e-12);
    if (std::isinf(b.upper)) return std::numeric_limits<double>::infinity();
    if (!(b.upper > rho_)) return 0.0;
    const HypBall ball = hyp_ball(Space::disk, p, b.upper - rho_);
    return dist(ball.euclidean_center, p) + ball.euclidean_radius;
  }

  int nearest_shape(Point p) const {
    int best = -1;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < shapes_.size(); ++i) {
      const double d = hyp_dist_to_set(Space::disk, p, std::span<const Shape>(&shapes_[i], 1), 0.0, 1e-6).lower;
      if (d < best_d) best_d = d, best = static_cast<int>(i);
    }
    return best;
  }

 private:
  std::vector<Shape> shapes_;
  double rho_;
};

static_assert(DomainOracle<DiskDomain>);
static_assert(DomainOracle<HalfPlaneDomain>);
static_assert(DomainOracle<NeighborhoodDomain>);

inline constexpr std::uint32_t kDefaultStepCap = 100000;

namespace detail {

template <DomainOracle D>
WalkResult finish(const D& dom, Point z, double d, std::uint32_t steps, bool flagged, double weight) {
  const BoundaryHit hit = dom.classify_nearest(z);
  return {hit.point, hit.label, steps, d, flagged, weight};
}

}  // namespace detail

/// Plain walk on spheres: jump the full distance to the boundary in a uniform
/// direction until within eps_stop, then project.
template <DomainOracle D>
WalkResult wos_walk(const D& dom, Point start, double eps_stop, WalkRng& rng,
                    std::uint32_t step_cap = kDefaultStepCap) {
  if (!(eps_stop > 0.0)) throw DomainError("eps_stop must be positive");
  Point z = start;
  for (std::uint32_t steps = 0;; ++steps) {
    const double d = dom.dist_to_boundary(z);
    if (d < eps_stop) return detail::finish(dom, z, d, steps, false, 1.0);
    if (steps >= step_cap) return detail::finish(dom, z, d, steps, true, 1.0);
    const double theta = kTwoPi * uniform01(rng);
    z = z + d * Point{std::cos(theta), std::sin(theta)};
  }
}

/// Half-plane walk. Inside the enclosing semicircle it is walk on spheres; outside
/// it jumps by the exact exit law of the far field. With `conditioned`, a start
/// outside the semicircle is forced onto it and the result carries the probability
/// of that event as its weight (walks that miss the semicircle contribute zero to
/// any functional vanishing on the real axis).
inline WalkResult wos_walk(const HalfPlaneDomain& dom, Point start, double eps_stop, WalkRng& rng,
                           std::uint32_t step_cap = kDefaultStepCap, bool conditioned = false) {
  if (!(eps_stop > 0.0)) throw DomainError("eps_stop must be positive");
  if (!(start.y > 0.0)) throw DomainError("start must lie in the open upper half-plane");
  if (dom.empty()) {
    const double x = start.x + start.y * std::tan(kPi * (uniform01(rng) - 0.5));
    return {{x, 0.0}, {BoundaryKind::real_axis, -1}, 1, 0.0, false, 1.0};
  }
  Point z = start;
  double weight = 1.0;
  std::uint32_t steps = 0;
  const double two_r = 2.0 * dom.far_radius();
  if (conditioned && dom.in_far_field(z)) {
    const Point w = dom.far_image(z);
    const double lo = std::atan((-two_r - w.x) / w.y), hi = std::atan((two_r - w.x) / w.y);
    weight = (hi - lo) / kPi;
    const double X = w.x + w.y * std::tan(lo + (hi - lo) * uniform01(rng));
    z = dom.semicircle_point(X);
    ++steps;
  }
  for (;; ++steps) {
    if (dom.in_far_field(z)) {
      if (steps >= step_cap) return detail::finish(dom, z, dom.dist_to_boundary(z), steps, true, weight);
      const Point w = dom.far_image(z);
      const double X = w.x + w.y * std::tan(kPi * (uniform01(rng) - 0.5));
      if (std::abs(X) > two_r) return {{dom.axis_point(X), 0.0}, {BoundaryKind::real_axis, -1}, steps + 1, 0.0, false, weight};
      z = dom.semicircle_point(X);
      continue;
    }
    const double d = dom.dist_to_boundary(z);
    if (d < eps_stop) return detail::finish(dom, z, d, steps, false, weight);
    if (steps >= step_cap) return detail::finish(dom, z, d, steps, true, weight);
    const double theta = kTwoPi * uniform01(rng);
    z = z + d * Point{std::cos(theta), std::sin(theta)};
  }
}

// ---------------------------------------------------------------------------
// Estimators

struct Estimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t n_walks = 0;
  double eps_stop = 0.0;
  std::uint64_t seed = 0;
  std::string bias_note;
  std::uint64_t flagged = 0;
};

struct WalkConfig {
  std::uint64_t n_walks = 200000;
  double eps_stop = 1e-4;
  std::uint64_t seed = 1;
  std::uint32_t step_cap = kDefaultStepCap;
  double max_flagged_fraction = 1e-3;
};

inline void check_flagged(std::uint64_t flagged, std::uint64_t n, const WalkConfig& cfg) {
  if (n > 0 && static_cast<double>(flagged) > cfg.max_flagged_fraction * static_cast<double>(n))
    throw EstimatorError(std::to_string(flagged) + " of " + std::to_string(n) + " walks hit the step cap");
}

inline Estimate make_estimate(const EnsembleStats& st, std::size_t k, const WalkConfig& cfg, std::string note) {
  return {st.mean[k], st.std_error[k], st.n, cfg.eps_stop, cfg.seed, std::move(note), st.flagged};
}

template <DomainOracle D>
WalkResult sample_exit(const D& dom, Point start, const WalkConfig& cfg, WalkRng& rng, bool conditioned = false) {
  if constexpr (std::same_as<D, HalfPlaneDomain>)
    return wos_walk(dom, start, cfg.eps_stop, rng, cfg.step_cap, conditioned);
  else
    return wos_walk(dom, start, cfg.eps_stop, rng, cfg.step_cap);
}

/// Runs cfg.n_walks walks from `start` and averages values(walk, out) component-wise.
template <DomainOracle D, class Values>
EnsembleStats walk_ensemble(const D& dom, Point start, const WalkConfig& cfg, std::size_t outputs, Values&& values,
                            bool conditioned = false) {
  EnsembleStats st = run_ensemble(cfg.n_walks, outputs, [&](std::uint64_t i, std::span<double> out) {
    WalkRng rng = walk_stream(cfg.seed, i);
    const WalkResult w = sample_exit(dom, start, cfg, rng, conditioned);
    values(w, out);
    return w.flagged;
  });
  check_flagged(st.flagged, st.n, cfg);
  return st;
}

/// Probability that the walk from `start` exits through a boundary piece accepted
/// by target(label, terminal).
template <DomainOracle D, class Target>
Estimate harmonic_measure(const D& dom, Point start, Target&& target, const WalkConfig& cfg) {
  const auto st = walk_ensemble(dom, start, cfg, 1, [&](const WalkResult& w, std::span<double> out) {
    out[0] = target(w.label, w.terminal) ? w.weight : 0.0;
  });
  return make_estimate(st, 0, cfg, "exit classified after projection from within eps_stop");
}

/// E log|B_tau| for walks from 0.
template <DomainOracle D>
Estimate expected_log_modulus(const D& dom, const WalkConfig& cfg) {
  if (dom.space() != Space::disk) throw DomainError("log modulus needs a disk-space domain");
  const auto st = walk_ensemble(dom, {0.0, 0.0}, cfg, 1, [](const WalkResult& w, std::span<double> out) {
    out[0] = w.label.kind == BoundaryKind::unit_circle ? 0.0 : std::log(norm(w.terminal));
  });
  return make_estimate(st, 0, cfg, "projection bias O(eps_stop)");
}

/// E Im B_tau for walks from `start`.
inline Estimate expected_height(const HalfPlaneDomain& dom, Point start, const WalkConfig& cfg) {
  const auto st = walk_ensemble(
      dom, start, cfg, 1,
      [](const WalkResult& w, std::span<double> out) {
        out[0] = w.label.kind == BoundaryKind::real_axis ? 0.0 : w.weight * w.terminal.y;
      },
      true);
  return make_estimate(st, 0, cfg, "projection bias O(eps_stop)");
}

}  // namespace hcap
