#pragma once

// Seeded random hulls and disk sets. Every generated set passes validation; each
// element draws an overall size log-uniformly over four octaves so a corpus spans
// several dyadic scales.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "geometry.hpp"
#include "parallel.hpp"

namespace hcap {

enum class CorpusKind { slit_forest, staircase, halfdisk_mix, radial_slit_set, arcbox_set };

inline constexpr std::string_view corpus_kind_name(CorpusKind k) {
  switch (k) {
    case CorpusKind::slit_forest: return "slit-forest";
    case CorpusKind::staircase: return "staircase";
    case CorpusKind::halfdisk_mix: return "halfdisk-mix";
    case CorpusKind::radial_slit_set: return "radial-slit-set";
    case CorpusKind::arcbox_set: return "arcbox-set";
  }
  return "?";
}

inline std::optional<CorpusKind> parse_corpus_kind(std::string_view s) {
  for (CorpusKind k : {CorpusKind::slit_forest, CorpusKind::staircase, CorpusKind::halfdisk_mix,
                       CorpusKind::radial_slit_set, CorpusKind::arcbox_set})
    if (corpus_kind_name(k) == s) return k;
  return std::nullopt;
}

inline Space corpus_space(CorpusKind k) {
  return k == CorpusKind::radial_slit_set || k == CorpusKind::arcbox_set ? Space::disk : Space::halfplane;
}

struct CorpusSpec {
  CorpusKind kind = CorpusKind::slit_forest;
  std::size_t count = 10;
  std::uint64_t seed = 1;
  double max_height = 0.8;  // half-plane kinds stay below i
  int octaves = 4;          // spread of the per-element size
  int retry_cap = 1000;
};

struct CorpusElement {
  CorpusKind kind;
  Space space;
  std::vector<Shape> shapes;
  double size;  // the drawn overall size (half-plane: max height bound; disk: max depth 1 - rho)
};

namespace detail {

struct Draw {
  WalkRng rng;
  double u() { return uniform01(rng); }
  double uniform(double a, double b) { return a + (b - a) * u(); }
  double log_uniform(double a, double b) { return a * std::exp(std::log(b / a) * u()); }
  int integer(int a, int b) { return a + static_cast<int>(std::floor(u() * (b - a + 1))); }
};

inline std::vector<Shape> slit_forest(Draw& d, double L) {
  const int k = d.integer(3, 12);
  std::vector<Shape> out;
  double x = 0.0;
  for (int i = 0; i < k; ++i) {
    out.push_back(make_vslit(x, d.log_uniform(L / 8.0, L)));
    x += d.log_uniform(L / 16.0, L);
  }
  return out;
}

inline std::vector<Shape> staircase(Draw& d, double L) {
  const int k = d.integer(2, 6);
  std::vector<Shape> out;
  double x = 0.0;
  for (int i = 0; i < k; ++i) {
    const double w = d.log_uniform(L / 8.0, L);
    out.push_back(make_box(x, x + w, 0.0, d.log_uniform(L / 8.0, L)));
    x += w + d.log_uniform(L / 16.0, L / 2.0);
  }
  return out;
}

inline std::vector<Shape> halfdisk_mix(Draw& d, double L) {
  const int k = d.integer(2, 5);
  std::vector<Shape> out;
  double x = 0.0;
  for (int i = 0; i < k; ++i) {
    if (d.u() < 0.5) {
      const double r = d.log_uniform(L / 8.0, L);
      out.push_back(make_halfdisk(x + r, r));
      x += 2.0 * r;
    } else {
      out.push_back(make_vslit(x, d.log_uniform(L / 8.0, L)));
    }
    x += d.log_uniform(L / 16.0, L / 2.0);
  }
  return out;
}

inline std::vector<Shape> radial_slit_set(Draw& d, double T) {
  const int k = d.integer(1, 8);
  std::vector<Shape> out;
  std::vector<double> angles;
  while (static_cast<int>(angles.size()) < k) {
    const double a = d.uniform(0.0, kTwoPi);
    if (std::all_of(angles.begin(), angles.end(), [&](double b) { return std::abs(wrap_angle(a - b + kPi) - kPi) > 1e-3; }))
      angles.push_back(a);
  }
  for (double a : angles) out.push_back(make_rslit(a, 1.0 - d.log_uniform(T / 8.0, T)));
  return out;
}

inline std::vector<Shape> arcbox_set(Draw& d, double T) {
  const int k = d.integer(1, 5);
  std::vector<Shape> out;
  double theta = d.uniform(0.0, kTwoPi);
  const double start = theta;
  for (int i = 0; i < k; ++i) {
    const double w = d.log_uniform(kTwoPi / 64.0, kPi / 2.0);
    if (theta + w >= start + kTwoPi - 1e-6) break;
    out.push_back(make_arcbox(theta, theta + w, 1.0 - d.log_uniform(T / 8.0, T)));
    theta += w + d.log_uniform(kTwoPi / 128.0, kPi / 4.0);
  }
  return out;
}

}  // namespace detail

/// Element `index` of the corpus; independent of the other elements.
inline CorpusElement corpus_element(const CorpusSpec& spec, std::size_t index) {
  detail::Draw d{walk_stream(derive_seed(spec.seed, static_cast<std::uint64_t>(spec.kind) + 0xC0FFEEULL), index)};
  const Space space = corpus_space(spec.kind);
  for (int attempt = 0; attempt < spec.retry_cap; ++attempt) {
    const double f = std::exp2(-spec.octaves * d.u());  // in (2^-octaves, 1]
    std::vector<Shape> shapes;
    double size = 0.0;
    try {
      if (space == Space::halfplane) {
        size = spec.max_height * f;
        switch (spec.kind) {
          case CorpusKind::slit_forest: shapes = detail::slit_forest(d, size); break;
          case CorpusKind::staircase: shapes = detail::staircase(d, size); break;
          default: shapes = detail::halfdisk_mix(d, size); break;
        }
        if (!validate_hull(shapes) && bounding_box(std::span<const Shape>(shapes)).y1 <= spec.max_height)
          return {spec.kind, space, std::move(shapes), size};
      } else {
        size = 0.45 * f;
        shapes = spec.kind == CorpusKind::radial_slit_set ? detail::radial_slit_set(d, size) : detail::arcbox_set(d, size);
        if (!shapes.empty() && !validate_disk_set(shapes)) return {spec.kind, space, std::move(shapes), size};
      }
    } catch (const DomainError&) {
      // rejected draw
    }
  }
  throw ValidationError("corpus generation exceeded the retry cap");
}

inline std::vector<CorpusElement> corpus_generate(const CorpusSpec& spec) {
  std::vector<CorpusElement> out;
  out.reserve(spec.count);
  for (std::size_t i = 0; i < spec.count; ++i) out.push_back(corpus_element(spec, i));
  return out;
}

inline std::vector<HalfPlaneHull> halfplane_corpus(const CorpusSpec& spec) {
  if (corpus_space(spec.kind) != Space::halfplane) throw DomainError("not a half-plane corpus kind");
  std::vector<HalfPlaneHull> out;
  for (auto& e : corpus_generate(spec)) out.emplace_back(std::move(e.shapes));
  return out;
}

inline std::vector<DiskCompact> disk_corpus(const CorpusSpec& spec) {
  if (corpus_space(spec.kind) != Space::disk) throw DomainError("not a disk corpus kind");
  std::vector<DiskCompact> out;
  for (auto& e : corpus_generate(spec)) out.emplace_back(std::move(e.shapes));
  return out;
}

/// Interleaves the given kinds: element i comes from kinds[i % kinds.size()].
inline std::vector<CorpusElement> mixed_corpus(const std::vector<CorpusKind>& kinds, std::size_t count, std::uint64_t seed) {
  std::vector<CorpusElement> out;
  for (std::size_t i = 0; i < count; ++i) {
    CorpusSpec s;
    s.kind = kinds[i % kinds.size()];
    s.seed = seed;
    out.push_back(corpus_element(s, i / kinds.size()));
  }
  return out;
}

}  // namespace hcap
