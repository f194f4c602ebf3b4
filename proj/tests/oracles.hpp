#pragma once

// Brute-force reference computations used only by the tests. They share no code
// paths with the library beyond the shape structs themselves.

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <set>
#include <utility>
#include <variant>
#include <vector>

#include "hcap/geometry.hpp"

namespace oracle {

using hcap::Point;
using hcap::Shape;
constexpr double pi = std::numbers::pi;

/// Points filling each shape (boundary and interior), spaced about h apart.
inline std::vector<Point> sample_shape(const Shape& s, double h) {
  std::vector<Point> out;
  const auto line = [&](Point a, Point b) {
    const int n = std::max(1, static_cast<int>(std::ceil(std::hypot(b.x - a.x, b.y - a.y) / h)));
    for (int i = 0; i <= n; ++i) out.push_back({a.x + (b.x - a.x) * i / n, a.y + (b.y - a.y) * i / n});
  };
  if (const auto* v = std::get_if<hcap::VSlit>(&s)) {
    line({v->x, 0}, {v->x, v->h});
  } else if (const auto* b = std::get_if<hcap::BoxShape>(&s)) {
    for (double y = b->y0; y <= b->y1 + 1e-12; y += h) line({b->x0, y}, {b->x1, y});
    line({b->x0, b->y1}, {b->x1, b->y1});
  } else if (const auto* d = std::get_if<hcap::HalfDisk>(&s)) {
    for (double r = 0; r <= d->r + 1e-12; r += h) {
      const int n = std::max(2, static_cast<int>(std::ceil(pi * r / h)));
      for (int i = 0; i <= n; ++i) out.push_back({d->c + r * std::cos(pi * i / n), r * std::sin(pi * i / n)});
    }
    for (int i = 0; i <= 4000; ++i) out.push_back({d->c + d->r * std::cos(pi * i / 4000), d->r * std::sin(pi * i / 4000)});
  } else if (const auto* r = std::get_if<hcap::RadialSlit>(&s)) {
    line({r->rho * std::cos(r->theta), r->rho * std::sin(r->theta)}, {std::cos(r->theta), std::sin(r->theta)});
  } else if (const auto* a = std::get_if<hcap::ArcBox>(&s)) {
    for (double rad = a->rho; rad <= 1.0 + 1e-12; rad += h) {
      const int n = std::max(2, static_cast<int>(std::ceil(a->width() * rad / h)));
      for (int i = 0; i <= n; ++i) {
        const double t = a->theta0 + a->width() * i / n;
        out.push_back({rad * std::cos(t), rad * std::sin(t)});
      }
    }
  } else {
    out.push_back(std::get<hcap::PointShape>(s).p);
  }
  return out;
}

inline std::vector<Point> sample_set(const std::vector<Shape>& shapes, double h) {
  std::vector<Point> out;
  for (const auto& s : shapes) {
    auto p = sample_shape(s, h);
    out.insert(out.end(), p.begin(), p.end());
  }
  return out;
}

inline double min_dist(Point z, const std::vector<Point>& pts) {
  double d = INFINITY;
  for (Point p : pts) d = std::min(d, std::hypot(z.x - p.x, z.y - p.y));
  return d;
}

inline double hyp_h(Point a, Point b) {
  return std::acosh(1.0 + ((a.x - b.x) * (a.x - b.x) + (a.y - b.y) * (a.y - b.y)) / (2.0 * a.y * b.y));
}

inline double hyp_d(Point a, Point b) {
  const std::complex<double> z{a.x, a.y}, w{b.x, b.y};
  return 2.0 * std::atanh(std::abs((z - w) / (1.0 - std::conj(w) * z)));
}

/// Midpoint-grid area of {p in box : member(p)} with n x n cells.
inline double grid_area(double x0, double y0, double x1, double y1, int n, const std::function<bool(Point)>& member) {
  const double hx = (x1 - x0) / n, hy = (y1 - y0) / n;
  long count = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (member({x0 + (i + 0.5) * hx, y0 + (j + 0.5) * hy})) ++count;
  return count * hx * hy;
}

/// Composite Simpson rule on [a, b] x [c, d].
inline double simpson2(const std::function<double(double, double)>& f, double a, double b, double c, double d, int n) {
  if (n % 2) ++n;
  const double hx = (b - a) / n, hy = (d - c) / n;
  const auto w = [n](int i) { return i == 0 || i == n ? 1.0 : (i % 2 ? 4.0 : 2.0); };
  double s = 0.0;
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j) s += w(i) * w(j) * f(a + i * hx, c + j * hy);
  return s * hx * hy / 9.0;
}

/// Area of the union of closed Whitney squares [j2^k,(j+1)2^k] x [2^k, 2^(k+1)]
/// that meet the sampled set, by explicit enumeration over levels kmin..kmax.
inline double whitney_enumeration(const std::vector<Point>& pts, int kmin, int kmax) {
  double area = 0.0;
  for (int k = kmin; k <= kmax; ++k) {
    const double s = std::ldexp(1.0, k);
    std::set<long long> cols;
    for (Point p : pts) {
      if (p.y < s - 1e-12 || p.y > 2 * s + 1e-12) continue;
      const double u = p.x / s;
      const long long j = static_cast<long long>(std::floor(u));
      cols.insert(j);
      if (std::abs(u - std::round(u)) < 1e-12) cols.insert(static_cast<long long>(std::round(u)) - 1);
    }
    area += static_cast<double>(cols.size()) * s * s;
  }
  return area;
}

/// Integral of sup_{p in set} (Im p - |x - Re p|)^+ by the trapezoid rule.
inline double lipschitz_oracle(const std::vector<Point>& pts, double x0, double x1, int n) {
  double s = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double x = x0 + (x1 - x0) * i / n;
    double f = 0.0;
    for (Point p : pts) f = std::max(f, p.y - std::abs(x - p.x));
    s += (i == 0 || i == n ? 0.5 : 1.0) * f;
  }
  return s * (x1 - x0) / n;
}

/// Area of the complement components of `blocked` (on a grid over the unit disk)
/// that do not contain the origin, by breadth-first flood fill.
inline double enclosed_area(int n, const std::function<bool(Point)>& blocked) {
  const double h = 2.0 / n;
  std::vector<char> state(static_cast<std::size_t>(n) * n, 0);  // 0 unseen, 1 blocked, 2 reached
  const auto at = [&](int i, int j) { return Point{-1.0 + (i + 0.5) * h, -1.0 + (j + 0.5) * h}; };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Point p = at(i, j);
      if (std::hypot(p.x, p.y) >= 1.0 || blocked(p)) state[static_cast<std::size_t>(i) * n + j] = 1;
    }
  std::vector<std::pair<int, int>> queue{{n / 2, n / 2}};
  state[static_cast<std::size_t>(n / 2) * n + n / 2] = 2;
  for (std::size_t q = 0; q < queue.size(); ++q) {
    const auto [i, j] = queue[q];
    for (auto [di, dj] : {std::pair{1, 0}, {-1, 0}, {0, 1}, {0, -1}}) {
      const int a = i + di, b = j + dj;
      if (a < 0 || b < 0 || a >= n || b >= n) continue;
      char& s = state[static_cast<std::size_t>(a) * n + b];
      if (s == 0) s = 2, queue.push_back({a, b});
    }
  }
  double area = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Point p = at(i, j);
      if (state[static_cast<std::size_t>(i) * n + j] == 0 && std::hypot(p.x, p.y) < 1.0) area += h * h;
    }
  return area;
}

}  // namespace oracle
