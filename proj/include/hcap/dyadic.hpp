#pragma once

// Dyadic "squares" (annular sectors) of the disk, their top halves and the cover
// Q(B); the dyadic layers D_n; Whitney squares and the minimal 1-Lipschitz majorant
// in the half-plane.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <utility>
#include <vector>

#include "geometry.hpp"
#include "quadtree.hpp"

namespace hcap {

/// Q_{n,k} = {arg z / 2pi in [(k-1)/2^n, k/2^n), 1 - |z| <= 2^-n}.
struct DyadicSquare {
  int n = 1;
  std::int64_t k = 1;

  double inner_radius() const { return 1.0 - std::ldexp(1.0, -n); }
  double theta0() const { return kTwoPi * std::ldexp(static_cast<double>(k - 1), -n); }
  double theta1() const { return kTwoPi * std::ldexp(static_cast<double>(k), -n); }
  double area() const { return kPi * std::ldexp(1.0, -n) * (std::ldexp(1.0, 1 - n) - std::ldexp(1.0, -2 * n)); }
  Shape shape() const { return ArcBox{theta0(), theta1(), inner_radius()}; }
  DyadicSquare parent() const { return {n - 1, (k + 1) / 2}; }

  friend auto operator<=>(const DyadicSquare&, const DyadicSquare&) = default;
};

struct LayerIndex {
  int n;
  friend bool operator==(LayerIndex, LayerIndex) = default;
};

namespace detail {

// n with 2^-(n+1) <= t < 2^-n.
inline int layer_for_gap(double t) {
  int e = 0;
  std::frexp(t, &e);
  return -e;
}

// n with 2^-(n+1) < t <= 2^-n (top-half convention).
inline int top_half_level(double t) {
  int e = 0;
  const double m = std::frexp(t, &e);
  return m == 0.5 ? 1 - e : -e;
}

// Angular ranges of a disk shape in turns, split at the positive real axis.
inline std::vector<std::pair<double, double>> turn_ranges(const Shape& s) {
  const auto turns = [](double theta) { return wrap_angle(theta) / kTwoPi; };
  if (const auto* r = std::get_if<RadialSlit>(&s)) return {{turns(r->theta), turns(r->theta)}};
  if (const auto* p = std::get_if<PointShape>(&s)) {
    const double t = turns(std::atan2(p->p.y, p->p.x));
    return {{t, t}};
  }
  const auto& a = std::get<ArcBox>(s);
  if (a.full_ring()) return {{0.0, 1.0}};
  const double a0 = turns(a.theta0), a1 = a0 + a.width() / kTwoPi;
  if (a1 < 1.0) return {{a0, a1}};
  return {{a0, 1.0}, {0.0, a1 - 1.0}};
}

}  // namespace detail

/// Layer D_n containing z, for 0 < 1 - |z| < 1/2.
inline LayerIndex layer_of(Point z) {
  const double t = 1.0 - norm(z);
  if (!(t > 0.0) || t >= 0.5) throw DomainError("layer_of requires 0 < 1 - |z| < 1/2");
  return {detail::layer_for_gap(t)};
}

/// Generalized layer index: n >= 0 with 2^-(n+1) <= 1 - |z| < 2^-n, or -1 on or
/// outside the unit circle.
inline int layer_index(Point z) {
  const double t = 1.0 - norm(z);
  if (!(t > 0.0)) return -1;
  return detail::layer_for_gap(t);
}

struct DyadicCover {
  std::vector<DyadicSquare> squares;   // every square with T(Q) meeting B, up to `depth`
  std::vector<DyadicSquare> maximal;   // squares not contained in another listed one
  AreaBounds area;                     // |Q(B)|
  int depth = 0;                       // deeper squares are nested in listed ones
};

/// The cover Q(B). Throws when B needs squares deeper than n_max.
inline DyadicCover dyadic_cover(std::span<const Shape> shapes, int n_max = 20) {
  struct Need {
    const Shape* shape;
    double r_lo, r_hi;
    int first, last;
  };
  std::vector<Need> needs;
  int depth = 0;
  for (const Shape& s : shapes) {
    if (!(std::holds_alternative<RadialSlit>(s) || std::holds_alternative<ArcBox>(s) ||
          std::holds_alternative<PointShape>(s)))
      throw DomainError("dyadic cover applies to disk shapes only");
    const auto [r_lo, r_hi] = radial_range(s);
    if (r_lo >= 1.0) continue;                           // on the circle: no top half meets it
    const double t_lo = 1.0 - r_lo, t_hi = 1.0 - r_hi;  // t_hi <= t_lo
    if (t_hi > 0.5) continue;                            // strictly inside |z| < 1/2
    const int first = detail::top_half_level(std::min(t_lo, 0.5));
    const int last = t_hi > 0.0 ? detail::top_half_level(t_hi) : first;
    needs.push_back({&s, r_lo, r_hi, std::min(first, last), std::max(first, last)});
    depth = std::max(depth, std::max(first, last));
  }
  if (depth > n_max) throw DomainError("set reaches deeper than the dyadic scale cap");

  std::set<DyadicSquare> found;
  for (const Need& nd : needs) {
    for (int n = std::max(1, nd.first); n <= nd.last; ++n) {
      const double top_lo = 1.0 - std::ldexp(1.0, -n), top_hi = 1.0 - std::ldexp(1.0, -(n + 1));
      if (!(nd.r_lo < top_hi && nd.r_hi >= top_lo)) continue;
      const std::int64_t count = std::int64_t{1} << n;
      for (const auto& [a0, a1] : detail::turn_ranges(*nd.shape)) {
        const auto k_lo = static_cast<std::int64_t>(std::floor(std::ldexp(a0, n))) + 1;
        const auto k_hi = std::min(count, static_cast<std::int64_t>(std::floor(std::ldexp(a1, n))) + 1);
        for (std::int64_t k = std::max<std::int64_t>(1, k_lo); k <= k_hi; ++k) found.insert({n, k});
      }
    }
  }
  DyadicCover cover;
  cover.depth = depth;
  cover.squares.assign(found.begin(), found.end());
  double area = 0.0;
  for (const DyadicSquare& q : cover.squares) {
    bool nested = false;
    for (DyadicSquare p = q; p.n > 1 && !nested;) {
      p = p.parent();
      nested = found.count(p) > 0;
    }
    if (!nested) {
      cover.maximal.push_back(q);
      area += q.area();
    }
  }
  cover.area = {area, area, 0, true};
  return cover;
}

inline std::vector<Shape> cover_shapes(const DyadicCover& cover) {
  std::vector<Shape> out;
  for (const DyadicSquare& q : cover.maximal) out.push_back(q.shape());
  return out;
}

/// B_n = B cap D_n as radial pieces of the shapes; layers deeper than n_max are
/// reported as one tail piece with n = n_max + 1.
struct LayerPiece {
  int n;
  std::size_t shape;
  double r_lo, r_hi;  // D_n pieces are (r_lo, r_hi] in |z|
  double area;
};

inline std::vector<LayerPiece> layer_pieces(const DiskCompact& b, int n_max = 20) {
  std::vector<LayerPiece> out;
  for (std::size_t i = 0; i < b.size(); ++i) {
    const Shape& s = b.shapes()[i];
    const double rho = radial_range(s).first;
    const double width = std::holds_alternative<ArcBox>(s) ? std::get<ArcBox>(s).width() : 0.0;
    const auto sector = [&](double lo, double hi) { return 0.5 * width * (hi * hi - lo * lo); };
    for (int n = layer_index({rho, 0.0}); n <= n_max; ++n) {
      const double lo = std::max(rho, 1.0 - std::ldexp(1.0, -n));
      const double hi = 1.0 - std::ldexp(1.0, -(n + 1));
      if (hi > lo) out.push_back({n, i, lo, hi, sector(lo, hi)});
    }
    const double tail_lo = std::max(rho, 1.0 - std::ldexp(1.0, -(n_max + 1)));
    out.push_back({n_max + 1, i, tail_lo, 1.0, sector(tail_lo, 1.0)});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Half-plane comparators

/// [j 2^k, (j+1) 2^k] x [2^k, 2^(k+1)].
struct WhitneySquare {
  int k;
  std::int64_t j;

  Rect rect() const {
    const double s = std::ldexp(1.0, k);
    return {static_cast<double>(j) * s, s, static_cast<double>(j + 1) * s, 2.0 * s};
  }
};

namespace detail {

// x-range where the shape meets the closed band lo <= y <= hi.
inline std::optional<std::pair<double, double>> band_support(const Shape& s, double lo, double hi) {
  using R = std::optional<std::pair<double, double>>;
  return std::visit(overloaded{
                        [&](const VSlit& v) -> R { return v.h >= lo ? R{{v.x, v.x}} : R{}; },
                        [&](const BoxShape& b) -> R { return b.y1 >= lo && b.y0 <= hi ? R{{b.x0, b.x1}} : R{}; },
                        [&](const HalfDisk& d) -> R {
                          if (d.r < lo) return {};
                          const double w = std::sqrt(d.r * d.r - lo * lo);
                          return R{{d.c - w, d.c + w}};
                        },
                        [&](const PointShape& p) -> R {
                          return p.p.y >= lo && p.p.y <= hi ? R{{p.p.x, p.p.x}} : R{};
                        },
                        [](const auto&) -> R { throw DomainError("Whitney cover applies to half-plane shapes"); },
                    },
                    s);
}

}  // namespace detail

/// Total area of the distinct closed Whitney squares meeting A. Exact down to
/// scale 2^-kLevels below the top; the remaining tail is bounded analytically.
inline AreaBounds whitney_cover_area(std::span<const Shape> shapes) {
  if (shapes.empty()) return {};
  const Rect box = bounding_box(shapes);
  if (!(box.y1 > 0.0)) throw DomainError("hull has no height");
  constexpr int kLevels = 48;
  const int k_top = static_cast<int>(std::floor(std::log2(box.y1)));
  const int k_min = k_top - kLevels;
  double total = 0.0;
  std::vector<std::pair<std::int64_t, std::int64_t>> runs;
  for (int k = k_top; k >= k_min; --k) {
    const double s = std::ldexp(1.0, k);
    runs.clear();
    for (const Shape& sh : shapes) {
      if (const auto x = detail::band_support(sh, s, 2.0 * s)) {
        const auto j0 = static_cast<std::int64_t>(std::ceil(x->first / s)) - 1;
        const auto j1 = static_cast<std::int64_t>(std::floor(x->second / s));
        runs.emplace_back(j0, j1);
      }
    }
    std::sort(runs.begin(), runs.end());
    std::int64_t count = 0, cur_lo = 0, cur_hi = -1;
    bool open = false;
    for (auto [a, b] : runs) {
      if (open && a <= cur_hi) {
        cur_hi = std::max(cur_hi, b);
        continue;
      }
      if (open) count += cur_hi - cur_lo + 1;
      cur_lo = a, cur_hi = b, open = true;
    }
    if (open) count += cur_hi - cur_lo + 1;
    total += static_cast<double>(count) * s * s;
  }
  // below k_min each shape meets at most width/s + 2 squares per level
  double width = 0.0;
  for (const Shape& sh : shapes) width += bounding_box(sh).width();
  const double smin = std::ldexp(1.0, k_min);
  const double tail = width * smin + 2.0 * static_cast<double>(shapes.size()) * smin * smin / 3.0;
  return {total, total + tail, 0, true};
}

namespace detail {

// One piece of a per-shape majorant: linear a + b x, or the arc sqrt(r^2 - (x - c)^2).
struct MajorantPiece {
  double lo, hi;
  bool arc;
  double a, b;  // linear
  double c, r;  // arc

  double value(double x) const {
    if (!arc) return a + b * x;
    return std::sqrt(std::max(r * r - (x - c) * (x - c), 0.0));
  }
  double integral(double u, double v) const {
    if (!arc) return a * (v - u) + 0.5 * b * (v * v - u * u);
    const auto prim = [&](double x) {
      const double t = std::clamp(x - c, -r, r);
      return 0.5 * (t * std::sqrt(std::max(r * r - t * t, 0.0)) + r * r * std::asin(t / r));
    };
    return prim(v) - prim(u);
  }
};

inline void add_tent(std::vector<MajorantPiece>& out, double u, double v) {
  if (v <= 0.0) return;
  out.push_back({u - v, u, false, v - u, 1.0, 0.0, 0.0});
  out.push_back({u, u + v, false, v + u, -1.0, 0.0, 0.0});
}

inline std::vector<MajorantPiece> majorant_pieces(const Shape& s) {
  std::vector<MajorantPiece> out;
  std::visit(overloaded{
                 [&](const VSlit& v) { add_tent(out, v.x, v.h); },
                 [&](const BoxShape& b) {
                   out.push_back({b.x0 - b.y1, b.x0, false, b.y1 - b.x0, 1.0, 0.0, 0.0});
                   out.push_back({b.x0, b.x1, false, b.y1, 0.0, 0.0, 0.0});
                   out.push_back({b.x1, b.x1 + b.y1, false, b.y1 + b.x1, -1.0, 0.0, 0.0});
                 },
                 [&](const HalfDisk& d) {
                   const double q = d.r / std::sqrt(2.0), p = d.r * std::sqrt(2.0);
                   out.push_back({d.c - p, d.c - q, false, p - d.c, 1.0, 0.0, 0.0});
                   out.push_back({d.c - q, d.c + q, true, 0.0, 0.0, d.c, d.r});
                   out.push_back({d.c + q, d.c + p, false, p + d.c, -1.0, 0.0, 0.0});
                 },
                 [&](const PointShape& p) { add_tent(out, p.p.x, p.p.y); },
                 [](const auto&) { throw DomainError("Lipschitz majorant applies to half-plane shapes"); },
             },
             s);
  return out;
}

inline void crossings(const MajorantPiece& p, const MajorantPiece& q, std::vector<double>& out) {
  const double lo = std::max(p.lo, q.lo), hi = std::min(p.hi, q.hi);
  if (lo >= hi) return;
  const auto keep = [&](double x) {
    if (x > lo && x < hi) out.push_back(x);
  };
  if (!p.arc && !q.arc) {
    if (p.b != q.b) keep((q.a - p.a) / (p.b - q.b));
    return;
  }
  if (p.arc && q.arc) {
    if (p.c != q.c) keep((q.r * q.r - p.r * p.r + p.c * p.c - q.c * q.c) / (2.0 * (p.c - q.c)));
    return;
  }
  const MajorantPiece& lin = p.arc ? q : p;
  const MajorantPiece& arc = p.arc ? p : q;
  // (a + b x)^2 + (x - c)^2 = r^2
  const double A = lin.b * lin.b + 1.0;
  const double B = 2.0 * (lin.a * lin.b - arc.c);
  const double C = lin.a * lin.a + arc.c * arc.c - arc.r * arc.r;
  const double disc = B * B - 4.0 * A * C;
  if (disc < 0.0) return;
  const double sq = std::sqrt(disc);
  keep((-B - sq) / (2.0 * A));
  keep((-B + sq) / (2.0 * A));
}

}  // namespace detail

/// Integral of L(x) = max over (u, v) in A of (v - |x - u|)^+, by a breakpoint sweep
/// over the upper envelope of the per-shape majorants.
inline double lipschitz_majorant_area(std::span<const Shape> shapes) {
  std::vector<detail::MajorantPiece> pieces;
  for (const Shape& s : shapes) {
    auto p = detail::majorant_pieces(s);
    pieces.insert(pieces.end(), p.begin(), p.end());
  }
  if (pieces.empty()) return 0.0;
  std::vector<double> cuts;
  for (const auto& p : pieces) {
    cuts.push_back(p.lo);
    cuts.push_back(p.hi);
  }
  for (std::size_t i = 0; i < pieces.size(); ++i)
    for (std::size_t j = i + 1; j < pieces.size(); ++j) detail::crossings(pieces[i], pieces[j], cuts);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double u = cuts[i], v = cuts[i + 1], m = 0.5 * (u + v);
    const detail::MajorantPiece* best = nullptr;
    double best_val = 0.0;
    for (const auto& p : pieces) {
      if (m < p.lo || m > p.hi) continue;
      const double val = p.value(m);
      if (val > best_val) best_val = val, best = &p;
    }
    if (best) total += best->integral(u, v);
  }
  return total;
}

}  // namespace hcap
