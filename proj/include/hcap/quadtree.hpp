#pragma once

// Certified adaptive quadtree integration. A classifier bounds the integral over
// each cell from below and above; cells whose bounds differ are split level by
// level until the summed gap meets the tolerance.

#include <cstdint>
#include <limits>
#include <vector>

#include "geometry.hpp"
#include "parallel.hpp"

namespace hcap {

/// Certified lower/upper bounds on an area (or integral).
struct AreaBounds {
  double lower = 0.0;
  double upper = 0.0;
  std::uint64_t cells_refined = 0;
  bool tolerance_met = true;

  double mid() const { return 0.5 * (lower + upper); }
  double width() const { return upper - lower; }
  bool contains(double v) const { return v >= lower && v <= upper; }
};

enum class CellClass : std::uint8_t { outside, inside, mixed };

struct CellEval {
  CellClass cls = CellClass::mixed;
  double lower = 0.0;
  double upper = 0.0;
};

struct QuadOptions {
  double tol = 1e-3;
  bool relative = true;
  int max_depth = 24;
  std::size_t max_leaves = std::size_t{1} << 22;
};

struct QuadNode {
  Rect rect;
  std::int32_t first_child = -1;
  std::uint32_t ix = 0, iy = 0;
  std::uint8_t level = 0;
  CellEval eval;

  bool leaf() const { return first_child < 0; }
};

template <class Classify>
class CertifiedQuadtree {
 public:
  CertifiedQuadtree(Rect root, Classify classify) : classify_(std::move(classify)) {
    QuadNode n;
    n.rect = root;
    n.eval = classify_(root);
    nodes_.push_back(n);
    if (gap(nodes_[0]) > 0.0) frontier_.push_back(0);
    leaves_ = 1;
  }

  const std::vector<QuadNode>& nodes() const { return nodes_; }
  const Rect& root() const { return nodes_.front().rect; }
  int depth() const { return depth_; }
  std::size_t leaves() const { return leaves_; }
  std::uint64_t cells_refined() const { return refined_; }
  bool can_refine() const { return !frontier_.empty(); }

  /// Splits every leaf with a positive gap. Returns false when there is nothing left
  /// to split or a cap would be exceeded.
  bool refine_level(const QuadOptions& opt) {
    if (frontier_.empty() || depth_ >= opt.max_depth) return false;
    if (leaves_ + 3 * frontier_.size() > opt.max_leaves) return false;
    const std::size_t base = nodes_.size();
    nodes_.resize(base + 4 * frontier_.size());
    parallel_for(frontier_.size(), [&](std::size_t f) {
      const QuadNode& parent = nodes_[frontier_[f]];
      const Rect& r = parent.rect;
      const Point c = r.center();
      for (std::uint32_t q = 0; q < 4; ++q) {
        const std::uint32_t bx = q & 1u, by = q >> 1;
        QuadNode& child = nodes_[base + 4 * f + q];
        child.rect = Rect{bx ? c.x : r.x0, by ? c.y : r.y0, bx ? r.x1 : c.x, by ? r.y1 : c.y};
        child.level = static_cast<std::uint8_t>(parent.level + 1);
        child.ix = 2 * parent.ix + bx;
        child.iy = 2 * parent.iy + by;
        child.eval = classify_(child.rect);
      }
    });
    std::vector<std::int32_t> next;
    for (std::size_t f = 0; f < frontier_.size(); ++f) {
      nodes_[frontier_[f]].first_child = static_cast<std::int32_t>(base + 4 * f);
      for (std::size_t q = 0; q < 4; ++q) {
        const auto idx = static_cast<std::int32_t>(base + 4 * f + q);
        if (gap(nodes_[idx]) > 0.0) next.push_back(idx);
      }
    }
    refined_ += frontier_.size();
    leaves_ += 3 * frontier_.size();
    frontier_ = std::move(next);
    ++depth_;
    return true;
  }

  AreaBounds bounds() const {
    AreaBounds b;
    for (const QuadNode& n : nodes_) {
      if (!n.leaf()) continue;
      b.lower += n.eval.lower;
      b.upper += n.eval.upper;
    }
    b.cells_refined = refined_;
    return b;
  }

  /// Leaf (or subdivided node at `level`) covering grid cell (level, ix, iy).
  std::int32_t descend(int level, std::uint32_t ix, std::uint32_t iy) const {
    std::int32_t cur = 0;
    for (int l = 0; l < level; ++l) {
      const QuadNode& n = nodes_[cur];
      if (n.leaf()) return cur;
      const int shift = level - l - 1;
      const std::uint32_t bx = (ix >> shift) & 1u, by = (iy >> shift) & 1u;
      cur = n.first_child + static_cast<std::int32_t>(bx + 2 * by);
    }
    return cur;
  }

  /// Calls visit(neighbor_leaf, shared_edge) for every leaf sharing an edge segment
  /// with leaf `idx`. The shared edge is returned as a degenerate Rect.
  template <class Visit>
  void for_each_neighbor(std::int32_t idx, Visit&& visit) const {
    const QuadNode& n = nodes_[idx];
    const std::int64_t side = std::int64_t{1} << n.level;
    static constexpr int dirs[4][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
    for (const auto& d : dirs) {
      const std::int64_t jx = static_cast<std::int64_t>(n.ix) + d[0];
      const std::int64_t jy = static_cast<std::int64_t>(n.iy) + d[1];
      if (jx < 0 || jy < 0 || jx >= side || jy >= side) continue;
      const std::int32_t m = descend(n.level, static_cast<std::uint32_t>(jx), static_cast<std::uint32_t>(jy));
      collect_facing(m, d[0], d[1], n, visit);
    }
  }

 private:
  static double gap(const QuadNode& n) { return n.eval.upper - n.eval.lower; }

  static Rect shared_edge(const Rect& small, int dx, int dy) {
    // edge of `small` facing direction (-dx, -dy), i.e. towards the querying leaf
    if (dx == 1) return {small.x0, small.y0, small.x0, small.y1};
    if (dx == -1) return {small.x1, small.y0, small.x1, small.y1};
    if (dy == 1) return {small.x0, small.y0, small.x1, small.y0};
    return {small.x0, small.y1, small.x1, small.y1};
  }

  template <class Visit>
  void collect_facing(std::int32_t m, int dx, int dy, const QuadNode& from, Visit& visit) const {
    const QuadNode& nb = nodes_[m];
    if (nb.leaf()) {
      const Rect& small = nb.level >= from.level ? nb.rect : from.rect;
      // when the neighbour is coarser the shared edge is the querying leaf's own side
      const Rect e = nb.level >= from.level ? shared_edge(small, dx, dy) : shared_edge(from.rect, -dx, -dy);
      visit(m, e);
      return;
    }
    for (std::uint32_t q = 0; q < 4; ++q) {
      const int bx = q & 1, by = q >> 1;
      const bool facing = (dx == 1 && bx == 0) || (dx == -1 && bx == 1) || (dy == 1 && by == 0) || (dy == -1 && by == 1);
      if (facing) collect_facing(nb.first_child + static_cast<std::int32_t>(q), dx, dy, from, visit);
    }
  }

  Classify classify_;
  std::vector<QuadNode> nodes_;
  std::vector<std::int32_t> frontier_;
  std::size_t leaves_ = 0;
  std::uint64_t refined_ = 0;
  int depth_ = 0;
};

inline double quad_target(const QuadOptions& opt, double upper) {
  return opt.relative ? opt.tol * upper : opt.tol;
}

/// Refines until upper - lower <= tolerance or a cap is reached.
template <class Classify>
AreaBounds certified_integral(Rect root, Classify classify, const QuadOptions& opt) {
  CertifiedQuadtree<Classify> tree(root, std::move(classify));
  for (;;) {
    AreaBounds b = tree.bounds();
    if (b.width() <= quad_target(opt, b.upper)) return b;
    if (!tree.refine_level(opt)) {
      b.tolerance_met = false;
      return b;
    }
  }
}

}  // namespace hcap
