#pragma once

// Primitive planar shapes, hull and disk-set containers, and exact euclidean
// distance / intersection queries.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

namespace hcap {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend constexpr Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }
  friend constexpr bool operator==(Point a, Point b) = default;
};

inline double norm(Point p) { return std::hypot(p.x, p.y); }
inline double dist(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }
inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline std::complex<double> to_complex(Point p) { return {p.x, p.y}; }
inline Point to_point(std::complex<double> z) { return {z.real(), z.imag()}; }
inline Point polar(double r, double theta) { return {r * std::cos(theta), r * std::sin(theta)}; }

/// Angle reduced to [0, 2pi).
inline double wrap_angle(double a) {
  a = std::fmod(a, kTwoPi);
  if (a < 0.0) a += kTwoPi;
  return a >= kTwoPi ? 0.0 : a;
}

/// Closed axis-aligned rectangle.
struct Rect {
  double x0 = 0.0, y0 = 0.0, x1 = 0.0, y1 = 0.0;

  double width() const { return x1 - x0; }
  double height() const { return y1 - y0; }
  double area() const { return width() * height(); }
  Point center() const { return {0.5 * (x0 + x1), 0.5 * (y0 + y1)}; }
  double half_diagonal() const { return 0.5 * std::hypot(width(), height()); }
  std::array<Point, 4> corners() const { return {{{x0, y0}, {x1, y0}, {x0, y1}, {x1, y1}}}; }
  bool contains(Point p) const { return p.x >= x0 && p.x <= x1 && p.y >= y0 && p.y <= y1; }
  /// Euclidean distance from p to the rectangle (0 inside).
  double distance(Point p) const {
    const double dx = std::max({x0 - p.x, 0.0, p.x - x1});
    const double dy = std::max({y0 - p.y, 0.0, p.y - y1});
    return std::hypot(dx, dy);
  }
  double max_distance(Point p) const {
    double m = 0.0;
    for (Point c : corners()) m = std::max(m, dist(c, p));
    return m;
  }
};

// ---------------------------------------------------------------------------
// Shapes

/// Vertical slit from (x, 0) to (x, h).
struct VSlit {
  double x;
  double h;
};

/// Axis-aligned box [x0, x1] x [y0, y1]; rooted when y0 == 0.
struct BoxShape {
  double x0, x1, y0, y1;
};

/// {|z - c| <= r, Im z >= 0}.
struct HalfDisk {
  double c;
  double r;
};

/// Segment from rho e^{i theta} to e^{i theta}.
struct RadialSlit {
  double theta;
  double rho;
};

/// {rho <= |z| <= 1, arg z in [theta0, theta1]}; theta1 - theta0 == 2pi is a full ring.
struct ArcBox {
  double theta0, theta1, rho;

  double width() const { return theta1 - theta0; }
  bool full_ring() const { return width() >= kTwoPi; }
  bool contains_angle(double phi) const { return full_ring() || wrap_angle(phi - theta0) <= width(); }
};

/// A single point. Degenerate; used for comparator tests and never accepted by the
/// hull validators.
struct PointShape {
  Point p;
};

using Shape = std::variant<VSlit, BoxShape, HalfDisk, RadialSlit, ArcBox, PointShape>;

namespace detail {

inline void require(bool ok, const char* what) {
  if (!ok) throw ValidationError(what);
}

inline bool finite(std::initializer_list<double> xs) {
  return std::all_of(xs.begin(), xs.end(), [](double v) { return std::isfinite(v); });
}

inline double segment_distance(Point p, Point a, Point b) {
  const Point u = b - a;
  const double uu = dot(u, u);
  const double t = uu > 0.0 ? std::clamp(dot(p - a, u) / uu, 0.0, 1.0) : 0.0;
  return dist(p, a + t * u);
}

inline Point segment_projection(Point p, Point a, Point b) {
  const Point u = b - a;
  const double uu = dot(u, u);
  const double t = uu > 0.0 ? std::clamp(dot(p - a, u) / uu, 0.0, 1.0) : 0.0;
  return a + t * u;
}

template <class... Fs>
struct overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
overloaded(Fs...) -> overloaded<Fs...>;

}  // namespace detail

inline Shape make_vslit(double x, double h) {
  detail::require(detail::finite({x, h}), "vslit: non-finite parameter");
  detail::require(h > 0.0, "vslit: height must be positive");
  return VSlit{x, h};
}

inline Shape make_box(double x0, double x1, double y0, double y1) {
  detail::require(detail::finite({x0, x1, y0, y1}), "box: non-finite parameter");
  detail::require(x0 < x1, "box: requires x0 < x1");
  detail::require(y0 >= 0.0 && y0 < y1, "box: requires 0 <= y0 < y1");
  return BoxShape{x0, x1, y0, y1};
}

inline Shape make_halfdisk(double c, double r) {
  detail::require(detail::finite({c, r}), "halfdisk: non-finite parameter");
  detail::require(r > 0.0, "halfdisk: radius must be positive");
  return HalfDisk{c, r};
}

// Radial shapes accept any inner radius in (0, 1) so that dyadic squares at scale 1
// (inner radius exactly 1/2) are representable; the disk-set validator enforces
// the stricter (1/2, 1) range.
inline Shape make_rslit(double theta, double rho) {
  detail::require(detail::finite({theta, rho}), "rslit: non-finite parameter");
  detail::require(rho > 0.0 && rho < 1.0, "rslit: inner radius must lie in (0, 1)");
  return RadialSlit{theta, rho};
}

inline Shape make_arcbox(double theta0, double theta1, double rho) {
  detail::require(detail::finite({theta0, theta1, rho}), "arcbox: non-finite parameter");
  detail::require(theta0 < theta1, "arcbox: requires theta0 < theta1");
  detail::require(theta1 - theta0 <= kTwoPi + 1e-12, "arcbox: angular width exceeds 2pi");
  detail::require(rho > 0.0 && rho < 1.0, "arcbox: inner radius must lie in (0, 1)");
  return ArcBox{theta0, std::min(theta1, theta0 + kTwoPi), rho};
}

inline Shape make_ring(double rho) { return make_arcbox(0.0, kTwoPi, rho); }

inline Shape make_point(Point p) {
  detail::require(detail::finite({p.x, p.y}), "point: non-finite coordinate");
  return PointShape{p};
}

inline const char* shape_name(const Shape& s) {
  static constexpr std::array<const char*, 6> names = {"vslit", "box", "halfdisk", "rslit", "arcbox", "point"};
  return names[s.index()];
}

// ---------------------------------------------------------------------------
// Distance and projection

inline Point nearest_point(Point p, const Shape& s) {
  return std::visit(
      detail::overloaded{
          [&](const VSlit& v) { return detail::segment_projection(p, {v.x, 0.0}, {v.x, v.h}); },
          [&](const BoxShape& b) { return Point{std::clamp(p.x, b.x0, b.x1), std::clamp(p.y, b.y0, b.y1)}; },
          [&](const HalfDisk& d) {
            if (p.y < 0.0) return Point{std::clamp(p.x, d.c - d.r, d.c + d.r), 0.0};
            const Point rel{p.x - d.c, p.y};
            const double n = norm(rel);
            if (n <= d.r) return p;
            return Point{d.c + d.r * rel.x / n, d.r * rel.y / n};
          },
          [&](const RadialSlit& r) {
            return detail::segment_projection(p, polar(r.rho, r.theta), polar(1.0, r.theta));
          },
          [&](const ArcBox& a) {
            const double n = norm(p);
            if (n == 0.0) return polar(a.rho, a.theta0);
            const double phi = std::atan2(p.y, p.x);
            if (a.contains_angle(phi)) {
              const double r = std::clamp(n, a.rho, 1.0);
              return Point{r * p.x / n, r * p.y / n};
            }
            const Point q0 = detail::segment_projection(p, polar(a.rho, a.theta0), polar(1.0, a.theta0));
            const Point q1 = detail::segment_projection(p, polar(a.rho, a.theta1), polar(1.0, a.theta1));
            return dist(p, q0) <= dist(p, q1) ? q0 : q1;
          },
          [&](const PointShape& q) { return q.p; },
      },
      s);
}

/// Exact euclidean distance from p to the closed point set of s (0 inside or on).
inline double euclid_dist(Point p, const Shape& s) {
  return std::visit(
      detail::overloaded{
          [&](const VSlit& v) { return detail::segment_distance(p, {v.x, 0.0}, {v.x, v.h}); },
          [&](const BoxShape& b) { return Rect{b.x0, b.y0, b.x1, b.y1}.distance(p); },
          [&](const HalfDisk& d) {
            if (p.y < 0.0) return detail::segment_distance(p, {d.c - d.r, 0.0}, {d.c + d.r, 0.0});
            return std::max(std::hypot(p.x - d.c, p.y) - d.r, 0.0);
          },
          [&](const RadialSlit& r) {
            return detail::segment_distance(p, polar(r.rho, r.theta), polar(1.0, r.theta));
          },
          [&](const ArcBox& a) {
            const double n = norm(p);
            if (n == 0.0) return a.rho;
            if (a.contains_angle(std::atan2(p.y, p.x))) {
              if (n < a.rho) return a.rho - n;
              if (n > 1.0) return n - 1.0;
              return 0.0;
            }
            return std::min(detail::segment_distance(p, polar(a.rho, a.theta0), polar(1.0, a.theta0)),
                            detail::segment_distance(p, polar(a.rho, a.theta1), polar(1.0, a.theta1)));
          },
          [&](const PointShape& q) { return dist(p, q.p); },
      },
      s);
}

/// True iff the closed disk of the given radius meets s.
inline bool shape_intersects_disk(const Shape& s, Point center, double radius) {
  return euclid_dist(center, s) <= radius;
}

inline bool shape_contains(const Shape& s, Point p) { return euclid_dist(p, s) == 0.0; }

inline double shape_area(const Shape& s) {
  return std::visit(detail::overloaded{
                        [](const VSlit&) { return 0.0; },
                        [](const BoxShape& b) { return (b.x1 - b.x0) * (b.y1 - b.y0); },
                        [](const HalfDisk& d) { return 0.5 * kPi * d.r * d.r; },
                        [](const RadialSlit&) { return 0.0; },
                        [](const ArcBox& a) { return 0.5 * a.width() * (1.0 - a.rho * a.rho); },
                        [](const PointShape&) { return 0.0; },
                    },
                    s);
}

inline Rect bounding_box(const Shape& s) {
  return std::visit(
      detail::overloaded{
          [](const VSlit& v) { return Rect{v.x, 0.0, v.x, v.h}; },
          [](const BoxShape& b) { return Rect{b.x0, b.y0, b.x1, b.y1}; },
          [](const HalfDisk& d) { return Rect{d.c - d.r, 0.0, d.c + d.r, d.r}; },
          [](const RadialSlit& r) {
            const Point a = polar(r.rho, r.theta), b = polar(1.0, r.theta);
            return Rect{std::min(a.x, b.x), std::min(a.y, b.y), std::max(a.x, b.x), std::max(a.y, b.y)};
          },
          [](const ArcBox& a) {
            std::vector<Point> pts = {polar(a.rho, a.theta0), polar(1.0, a.theta0), polar(a.rho, a.theta1),
                                      polar(1.0, a.theta1)};
            for (int q = 0; q < 4; ++q) {
              const double phi = q * 0.5 * kPi;
              if (a.contains_angle(phi)) pts.push_back(polar(1.0, phi));
            }
            Rect r{pts[0].x, pts[0].y, pts[0].x, pts[0].y};
            for (Point p : pts) {
              r.x0 = std::min(r.x0, p.x), r.x1 = std::max(r.x1, p.x);
              r.y0 = std::min(r.y0, p.y), r.y1 = std::max(r.y1, p.y);
            }
            return r;
          },
          [](const PointShape& q) { return Rect{q.p.x, q.p.y, q.p.x, q.p.y}; },
      },
      s);
}

/// Smallest and largest |z| over the shape.
inline std::pair<double, double> radial_range(const Shape& s) {
  return std::visit(detail::overloaded{
                        [](const RadialSlit& r) { return std::pair{r.rho, 1.0}; },
                        [](const ArcBox& a) { return std::pair{a.rho, 1.0}; },
                        [](const PointShape& q) { return std::pair{norm(q.p), norm(q.p)}; },
                        [](const auto& other) {
                          const Shape s{other};
                          const Rect b = bounding_box(s);
                          return std::pair{euclid_dist(Point{}, s), b.max_distance({})};
                        },
                    },
                    s);
}

namespace detail {

inline double min_norm(const Rect& r) { return r.distance({0.0, 0.0}); }
inline double max_norm(const Rect& r) { return r.max_distance({0.0, 0.0}); }

// Angular extent of a rectangle not containing the origin is attained at its corners.
inline bool rect_within_sector(const Rect& r, const ArcBox& a) {
  if (a.full_ring()) return true;
  const Point c = r.center();
  const double phic = std::atan2(c.y, c.x);
  double lo = kPi, hi = -kPi;
  for (Point q : r.corners()) {
    const double d = std::remainder(std::atan2(q.y, q.x) - phic, kTwoPi);
    lo = std::min(lo, d);
    hi = std::max(hi, d);
  }
  const double off = wrap_angle(phic - a.theta0);
  for (double shift : {-kTwoPi, 0.0, kTwoPi}) {
    if (off + lo + shift >= 0.0 && off + hi + shift <= a.width()) return true;
  }
  return false;
}

}  // namespace detail

/// True when the rectangle (or its part inside the unit disk, when clip_to_unit_disk)
/// lies inside s.
inline bool rect_inside_shape(const Rect& r, const Shape& s, bool clip_to_unit_disk = false) {
  return std::visit(detail::overloaded{
                        [&](const BoxShape& b) { return r.x0 >= b.x0 && r.x1 <= b.x1 && r.y0 >= b.y0 && r.y1 <= b.y1; },
                        [&](const HalfDisk& d) {
                          if (r.y0 < 0.0) return false;
                          return r.max_distance({d.c, 0.0}) <= d.r;
                        },
                        [&](const ArcBox& a) {
                          if (detail::min_norm(r) < a.rho) return false;
                          if (!clip_to_unit_disk && detail::max_norm(r) > 1.0) return false;
                          return detail::rect_within_sector(r, a);
                        },
                        [](const auto&) { return false; },
                    },
                    s);
}

/// Exact area of rect intersected with the disk |z| <= radius.
inline double rect_disk_area(const Rect& r, double radius = 1.0) {
  const double R = radius;
  const double a = std::max(r.x0, -R), b = std::min(r.x1, R);
  if (a >= b || r.y0 >= r.y1) return 0.0;
  const auto arc = [R](double x) { return std::sqrt(std::max(R * R - x * x, 0.0)); };
  const auto prim = [&](double x) { return 0.5 * (x * arc(x) + R * R * std::asin(std::clamp(x / R, -1.0, 1.0))); };
  std::vector<double> cuts = {a, b};
  for (double yy : {r.y0, r.y1}) {
    if (std::abs(yy) < R) {
      const double xx = std::sqrt(R * R - yy * yy);
      for (double c : {-xx, xx})
        if (c > a && c < b) cuts.push_back(c);
    }
  }
  std::sort(cuts.begin(), cuts.end());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double u = cuts[i], v = cuts[i + 1];
    if (v <= u) continue;
    const double s = arc(0.5 * (u + v));
    const bool top_flat = r.y1 < s;
    const bool bottom_flat = r.y0 > -s;
    const double top = top_flat ? r.y1 : s;
    const double bottom = bottom_flat ? r.y0 : -s;
    if (top <= bottom) continue;
    const double arc_int = prim(v) - prim(u);
    const double upper = top_flat ? r.y1 * (v - u) : arc_int;
    const double lower = bottom_flat ? r.y0 * (v - u) : -arc_int;
    total += upper - lower;
  }
  return total;
}

// ---------------------------------------------------------------------------
// Rigid motions used by the invariance checks

inline Shape translated(const Shape& s, double t) {
  return std::visit(detail::overloaded{
                        [&](const VSlit& v) -> Shape { return VSlit{v.x + t, v.h}; },
                        [&](const BoxShape& b) -> Shape { return BoxShape{b.x0 + t, b.x1 + t, b.y0, b.y1}; },
                        [&](const HalfDisk& d) -> Shape { return HalfDisk{d.c + t, d.r}; },
                        [&](const PointShape& q) -> Shape { return PointShape{{q.p.x + t, q.p.y}}; },
                        [](const auto&) -> Shape { throw DomainError("translation applies to half-plane shapes only"); },
                    },
                    s);
}

inline Shape scaled(const Shape& s, double k) {
  return std::visit(detail::overloaded{
                        [&](const VSlit& v) -> Shape { return VSlit{k * v.x, k * v.h}; },
                        [&](const BoxShape& b) -> Shape { return BoxShape{k * b.x0, k * b.x1, k * b.y0, k * b.y1}; },
                        [&](const HalfDisk& d) -> Shape { return HalfDisk{k * d.c, k * d.r}; },
                        [&](const PointShape& q) -> Shape { return PointShape{k * q.p}; },
                        [](const auto&) -> Shape { throw DomainError("scaling applies to half-plane shapes only"); },
                    },
                    s);
}

/// Mirror image across the imaginary axis.
inline Shape reflected(const Shape& s) {
  return std::visit(detail::overloaded{
                        [](const VSlit& v) -> Shape { return VSlit{-v.x, v.h}; },
                        [](const BoxShape& b) -> Shape { return BoxShape{-b.x1, -b.x0, b.y0, b.y1}; },
                        [](const HalfDisk& d) -> Shape { return HalfDisk{-d.c, d.r}; },
                        [](const RadialSlit& r) -> Shape { return RadialSlit{kPi - r.theta, r.rho}; },
                        [](const ArcBox& a) -> Shape { return ArcBox{kPi - a.theta1, kPi - a.theta0, a.rho}; },
                        [](const PointShape& q) -> Shape { return PointShape{{-q.p.x, q.p.y}}; },
                    },
                    s);
}

// ---------------------------------------------------------------------------
// Sets of shapes

inline double min_distance(Point p, std::span<const Shape> shapes) {
  double d = std::numeric_limits<double>::infinity();
  for (const Shape& s : shapes) d = std::min(d, euclid_dist(p, s));
  return d;
}

inline bool set_intersects_disk(std::span<const Shape> shapes, Point center, double radius) {
  return std::any_of(shapes.begin(), shapes.end(),
                     [&](const Shape& s) { return shape_intersects_disk(s, center, radius); });
}

inline bool set_contains(std::span<const Shape> shapes, Point p) {
  return std::any_of(shapes.begin(), shapes.end(), [&](const Shape& s) { return shape_contains(s, p); });
}

inline double set_area(std::span<const Shape> shapes) {
  double a = 0.0;
  for (const Shape& s : shapes) a += shape_area(s);
  return a;
}

inline Rect bounding_box(std::span<const Shape> shapes) {
  if (shapes.empty()) return {};
  Rect r = bounding_box(shapes.front());
  for (const Shape& s : shapes.subspan(1)) {
    const Rect b = bounding_box(s);
    r = {std::min(r.x0, b.x0), std::min(r.y0, b.y0), std::max(r.x1, b.x1), std::max(r.y1, b.y1)};
  }
  return r;
}

namespace detail {

// Half-plane shapes are subgraphs {a <= x <= b, 0 <= y <= f(x)}; returns [a, b].
inline std::pair<double, double> x_support(const Shape& s) {
  const Rect b = bounding_box(s);
  return {b.x0, b.x1};
}

inline bool positive_height_at(const Shape& s, double x) {
  return std::visit(overloaded{
                        [&](const VSlit& v) { return x == v.x; },
                        [&](const BoxShape& b) { return x >= b.x0 && x <= b.x1; },
                        [&](const HalfDisk& d) { return std::abs(x - d.c) < d.r; },
                        [](const auto&) { return false; },
                    },
                    s);
}

inline bool meet_in_open_halfplane(const Shape& a, const Shape& b) {
  const auto [a0, a1] = x_support(a);
  const auto [b0, b1] = x_support(b);
  const double lo = std::max(a0, b0), hi = std::min(a1, b1);
  if (lo > hi) return false;
  if (lo < hi) return true;
  return positive_height_at(a, lo) && positive_height_at(b, lo);
}

// Closed angular intervals on the circle; radial shapes all reach the unit circle,
// so two of them meet inside the disk iff their angular ranges meet.
inline std::pair<double, double> angular_range(const Shape& s) {
  if (const auto* r = std::get_if<RadialSlit>(&s)) return {r->theta, 0.0};
  const auto& a = std::get<ArcBox>(s);
  return {a.theta0, a.width()};
}

inline bool arcs_meet(std::pair<double, double> a, std::pair<double, double> b) {
  if (a.second >= kTwoPi || b.second >= kTwoPi) return true;
  return wrap_angle(b.first - a.first) <= a.second || wrap_angle(a.first - b.first) <= b.second;
}

}  // namespace detail

/// Returns nullopt when the shapes form a valid hull in the upper half-plane,
/// otherwise a description of the first violated constraint.
inline std::optional<std::string> validate_hull(std::span<const Shape> shapes) {
  for (std::size_t i = 0; i < shapes.size(); ++i) {
    const Shape& s = shapes[i];
    const std::string id = "shape " + std::to_string(i) + " (" + shape_name(s) + ")";
    if (!(std::holds_alternative<VSlit>(s) || std::holds_alternative<BoxShape>(s) ||
          std::holds_alternative<HalfDisk>(s)))
      return id + " is not a half-plane shape";
    if (const auto* b = std::get_if<BoxShape>(&s); b && b->y0 != 0.0)
      return id + " is not rooted on the real axis";
  }
  for (std::size_t i = 0; i < shapes.size(); ++i)
    for (std::size_t j = i + 1; j < shapes.size(); ++j)
      if (detail::meet_in_open_halfplane(shapes[i], shapes[j]))
        return "shapes " + std::to_string(i) + " and " + std::to_string(j) + " overlap in the upper half-plane";
  return std::nullopt;
}

/// Disk-set analogue of validate_hull: shapes inside {1/2 < |z| < 1}, rooted on the
/// unit circle, pairwise disjoint away from it.
inline std::optional<std::string> validate_disk_set(std::span<const Shape> shapes) {
  for (std::size_t i = 0; i < shapes.size(); ++i) {
    const Shape& s = shapes[i];
    const std::string id = "shape " + std::to_string(i) + " (" + shape_name(s) + ")";
    if (!(std::holds_alternative<RadialSlit>(s) || std::holds_alternative<ArcBox>(s)))
      return id + " is not a disk shape";
    if (radial_range(s).first <= 0.5) return id + " reaches |z| <= 1/2";
  }
  for (std::size_t i = 0; i < shapes.size(); ++i)
    for (std::size_t j = i + 1; j < shapes.size(); ++j)
      if (detail::arcs_meet(detail::angular_range(shapes[i]), detail::angular_range(shapes[j])))
        return "shapes " + std::to_string(i) + " and " + std::to_string(j) + " overlap inside the disk";
  return std::nullopt;
}

enum class Space { halfplane, disk };

inline const char* space_name(Space s) { return s == Space::halfplane ? "halfplane" : "disk"; }

/// A validated hull: finite union of rooted half-plane shapes with simply connected
/// complement.
class HalfPlaneHull {
 public:
  HalfPlaneHull() = default;
  explicit HalfPlaneHull(std::vector<Shape> shapes) : shapes_(std::move(shapes)) {
    if (auto err = validate_hull(shapes_)) throw ValidationError(*err);
  }

  std::span<const Shape> shapes() const { return shapes_; }
  bool empty() const { return shapes_.empty(); }
  std::size_t size() const { return shapes_.size(); }

  Rect bbox() const { return bounding_box(shapes()); }
  /// Midpoint of the hull's real support.
  double center_x() const {
    const Rect b = bbox();
    return 0.5 * (b.x0 + b.x1);
  }
  /// Diagonal of the bounding box; an upper bound for the diameter.
  double scale() const {
    const Rect b = bbox();
    return std::hypot(b.width(), b.y1);
  }
  /// sup |z - center_x()| over the hull.
  double radius_about_center() const {
    const Point c{center_x(), 0.0};
    double r = 0.0;
    for (const Shape& s : shapes_) {
      if (const auto* d = std::get_if<HalfDisk>(&s))
        r = std::max(r, std::abs(d->c - c.x) + d->r);
      else
        r = std::max(r, bounding_box(s).max_distance(c));
    }
    return r;
  }
  double area() const { return set_area(shapes()); }

  HalfPlaneHull translated(double t) const { return map([t](const Shape& s) { return hcap::translated(s, t); }); }
  HalfPlaneHull scaled(double k) const { return map([k](const Shape& s) { return hcap::scaled(s, k); }); }
  HalfPlaneHull reflected() const { return map([](const Shape& s) { return hcap::reflected(s); }); }

 private:
  template <class F>
  HalfPlaneHull map(F f) const {
    std::vector<Shape> out;
    out.reserve(shapes_.size());
    for (const Shape& s : shapes_) out.push_back(f(s));
    return HalfPlaneHull(std::move(out));
  }

  std::vector<Shape> shapes_;
};

/// A validated compact subset of the annulus 1/2 < |z| < 1 with simply connected
/// complement in the unit disk.
class DiskCompact {
 public:
  DiskCompact() = default;
  explicit DiskCompact(std::vector<Shape> shapes) : shapes_(std::move(shapes)) {
    if (auto err = validate_disk_set(shapes_)) throw ValidationError(*err);
  }

  std::span<const Shape> shapes() const { return shapes_; }
  bool empty() const { return shapes_.empty(); }
  std::size_t size() const { return shapes_.size(); }
  double area() const { return set_area(shapes()); }

 private:
  std::vector<Shape> shapes_;
};

}  // namespace hcap
