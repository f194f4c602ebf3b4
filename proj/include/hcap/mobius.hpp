#pragma once

// The transport maps T_y(z) = (z - iy)/(z + iy) from the upper half-plane onto the
// unit disk, their area factor, and pushforwards of hulls.

#include <complex>
#include <optional>
#include <span>
#include <string>

#include "geometry.hpp"
#include "hyperbolic.hpp"
#include "quadtree.hpp"

namespace hcap {

class TransportMap {
 public:
  explicit TransportMap(double y) : y_(y) {
    if (!(y > 0.0) || !std::isfinite(y)) throw DomainError("transport height must be positive");
  }

  double height() const { return y_; }

  Point operator()(Point z) const {
    const std::complex<double> w = to_complex(z), iy{0.0, y_};
    return to_point((w - iy) / (w + iy));
  }

  Point inverse(Point w) const {
    const std::complex<double> u = to_complex(w), iy{0.0, y_};
    return to_point(iy * (1.0 + u) / (1.0 - u));
  }

  /// |T_y'(z)|^2 = 4y^2 / |z + iy|^4.
  double jacobian(Point z) const {
    const double d2 = z.x * z.x + (z.y + y_) * (z.y + y_);
    return 4.0 * y_ * y_ / (d2 * d2);
  }

 private:
  double y_;
};

inline Point t_y(double y, Point z) { return TransportMap(y)(z); }
inline Point t_y_inverse(double y, Point w) { return TransportMap(y).inverse(w); }
inline double t_y_jacobian(double y, Point z) { return TransportMap(y).jacobian(z); }

namespace detail {

// Bounds the integral of the area factor over a cell: the factor is monotone in
// |z + iy|, whose extremes over a rectangle are the distance and the farthest corner.
struct JacobianClassifier {
  std::span<const Shape> region;  // empty span means the whole root rectangle
  TransportMap map;

  CellEval operator()(const Rect& r) const {
    const Point pole{0.0, -map.height()};
    const double dmin = r.distance(pole), dmax = r.max_distance(pole);
    const double y = map.height();
    const double jmax = 4.0 * y * y / (dmin * dmin * dmin * dmin);
    const double jmin = 4.0 * y * y / (dmax * dmax * dmax * dmax);
    const double m = r.area();
    if (region.empty()) return {CellClass::inside, m * jmin, m * jmax};
    for (const Shape& s : region)
      if (rect_inside_shape(r, s)) return {CellClass::inside, m * jmin, m * jmax};
    if (!set_intersects_disk(region, r.center(), r.half_diagonal())) return {CellClass::outside, 0.0, 0.0};
    return {CellClass::mixed, 0.0, m * jmax};
  }
};

}  // namespace detail

/// Certified bounds on |T_y(S)| for S a union of half-plane shapes.
inline AreaBounds image_area(std::span<const Shape> region, double y, const QuadOptions& opt) {
  const TransportMap map(y);
  if (region.empty() || set_area(region) == 0.0) return {};
  return certified_integral(bounding_box(region), detail::JacobianClassifier{region, map}, opt);
}

/// Certified bounds on |T_y(box)|.
inline AreaBounds image_area(const Rect& box, double y, const QuadOptions& opt) {
  const TransportMap map(y);
  if (box.area() <= 0.0) return {};
  if (box.y0 < 0.0) throw DomainError("box must lie in the closed upper half-plane");
  return certified_integral(box, detail::JacobianClassifier{{}, map}, opt);
}

/// Preimage under T_y of the closed disk |w| <= r: a euclidean disk in the
/// half-plane (hyperbolic ball about iy of radius 2 atanh r).
inline HypBall transport_preimage_disk(double y, double r) {
  return hyp_ball(Space::halfplane, {0.0, y}, 2.0 * std::atanh(r));
}

/// The set T_y(A) as a membership oracle in the disk.
class TransportedHull {
 public:
  TransportedHull(HalfPlaneHull hull, double y) : hull_(std::move(hull)), map_(y) {}

  const HalfPlaneHull& hull() const { return hull_; }
  const TransportMap& map() const { return map_; }
  double height() const { return map_.height(); }
  bool empty() const { return hull_.empty(); }

  bool contains(Point w) const {
    if (hull_.empty() || !(norm(w) < 1.0)) return false;
    return set_contains(hull_.shapes(), map_.inverse(w));
  }

  /// nullopt when T_y(A) lies in {1/2 < |w| < 1}, otherwise why it does not.
  std::optional<std::string> annulus_violation() const {
    const HypBall inner = transport_preimage_disk(map_.height(), 0.5);
    for (std::size_t i = 0; i < hull_.size(); ++i)
      if (shape_intersects_disk(hull_.shapes()[i], inner.euclidean_center, inner.euclidean_radius))
        return "shape " + std::to_string(i) + " maps into |w| <= 1/2 at y = " + std::to_string(map_.height());
    return std::nullopt;
  }
  bool within_annulus() const { return !annulus_violation(); }

 private:
  HalfPlaneHull hull_;
  TransportMap map_;
};

inline TransportedHull pushforward_set(const HalfPlaneHull& a, double y) { return TransportedHull(a, y); }

}  // namespace hcap
