#include <gtest/gtest.h>

#include "hcap/corpus.hpp"
#include "hcap/dyadic.hpp"
#include "oracles.hpp"

using namespace hcap;

TEST(Layers, Examples) {
  EXPECT_EQ(layer_of({0.8, 0}).n, 2);
  EXPECT_EQ(layer_of({0.75, 0}).n, 1);
  EXPECT_EQ(layer_of({0, 0.99}).n, 6);
  EXPECT_THROW(layer_of({0.3, 0}), DomainError);
  EXPECT_THROW(layer_of({1.0, 0}), DomainError);
  EXPECT_EQ(layer_index({0.2, 0}), 0);
  EXPECT_EQ(layer_index({1.0, 0}), -1);
}

TEST(Layers, MatchDirectInequality) {
  for (int i = 1; i < 5000; ++i) {
    const double t = 0.5 * i / 5000.0;
    const int n = layer_of({1.0 - t, 0}).n;
    const double gap = 1.0 - (1.0 - t);
    EXPECT_LE(std::ldexp(1.0, -(n + 1)), gap);
    EXPECT_LT(gap, std::ldexp(1.0, -n));
  }
}

TEST(DyadicSquare, AreaFormula) {
  for (int n = 1; n < 8; ++n)
    for (std::int64_t k : {std::int64_t{1}, std::int64_t{1} << (n - 1)}) {
      const DyadicSquare q{n, k};
      const double exact = 0.5 * (q.theta1() - q.theta0()) * (1.0 - q.inner_radius() * q.inner_radius());
      EXPECT_NEAR(q.area(), exact, 1e-14);
      EXPECT_NEAR(q.area(), shape_area(q.shape()), 1e-14);
    }
  EXPECT_EQ((DyadicSquare{3, 5}.parent()), (DyadicSquare{2, 3}));
}

TEST(DyadicCover, PointExample) {
  const DyadicCover c = dyadic_cover(std::vector<Shape>{make_point({0.8, 0})});
  ASSERT_EQ(c.maximal.size(), 1u);
  EXPECT_EQ(c.maximal[0], (DyadicSquare{2, 1}));
}

TEST(DyadicCover, Empty) {
  const DyadicCover c = dyadic_cover(std::vector<Shape>{});
  EXPECT_TRUE(c.squares.empty());
  EXPECT_EQ(c.area.upper, 0.0);
}

TEST(DyadicCover, ContainsEveryCorpusSet) {
  CorpusSpec spec;
  spec.count = 20;
  for (CorpusKind k : {CorpusKind::radial_slit_set, CorpusKind::arcbox_set}) {
    spec.kind = k;
    for (const auto& e : corpus_generate(spec)) {
      const DyadicCover c = dyadic_cover(e.shapes);
      const auto cover = cover_shapes(c);
      for (Point p : oracle::sample_set(e.shapes, 2e-3)) {
        if (norm(p) >= 1.0) continue;
        EXPECT_TRUE(set_contains(cover, p)) << p.x << "," << p.y;
      }
      EXPECT_GE(c.area.lower, set_area(e.shapes) - 1e-12);
    }
  }
}

TEST(DyadicCover, ListsOnlySquaresWhoseTopHalfMeetsTheSet) {
  const std::vector<Shape> b{make_arcbox(0.1, 0.5, 0.8)};
  const DyadicCover c = dyadic_cover(b);
  for (const DyadicSquare& q : c.squares) {
    // top half is 2^-(n+1) < 1 - |z| <= 2^-n
    const double r_hi = 1.0 - std::ldexp(1.0, -(q.n + 1));
    const double r_lo = q.inner_radius();
    bool hit = false;
    for (double r = r_lo; r <= r_hi && !hit; r += (r_hi - r_lo) / 64)
      for (double t = q.theta0(); t <= q.theta1() && !hit; t += (q.theta1() - q.theta0()) / 64)
        hit = set_contains(b, polar(r, t));
    EXPECT_TRUE(hit) << q.n << "," << q.k;
  }
}

TEST(LayerPieces, RingSplitsIntoLayers) {
  const auto pieces = layer_pieces(DiskCompact({make_ring(0.7)}), 6);
  double total = 0.0;
  for (const auto& p : pieces) total += p.area;
  EXPECT_NEAR(total, kPi * (1 - 0.49), 1e-12);
  EXPECT_EQ(pieces.front().n, 1);
  EXPECT_EQ(pieces.back().n, 7);
}

TEST(Whitney, SlitByEnumeration) {
  const std::vector<Shape> s{make_vslit(0, 1)};
  const AreaBounds a = whitney_cover_area(s);
  EXPECT_NEAR(a.mid(), 8.0 / 3.0, 1e-9);
  EXPECT_TRUE(a.contains(8.0 / 3.0));
  const auto pts = oracle::sample_set(s, 1e-5);
  EXPECT_NEAR(oracle::whitney_enumeration(pts, -14, 1), 8.0 / 3.0, 1e-6);
}

TEST(Whitney, PointAndEmpty) {
  EXPECT_NEAR(whitney_cover_area(std::vector<Shape>{make_point({0.5, 1.5})}).mid(), 1.0, 1e-12);
  EXPECT_EQ(whitney_cover_area(std::vector<Shape>{}).upper, 0.0);
}

TEST(Whitney, CorpusAgainstEnumeration) {
  CorpusSpec spec;
  spec.kind = CorpusKind::staircase;
  spec.count = 5;
  for (const auto& e : corpus_generate(spec)) {
    // boxes sampled on a fine mesh; the enumeration stops at 2^-10 and so runs slightly low
    const AreaBounds a = whitney_cover_area(e.shapes);
    const double lo = oracle::whitney_enumeration(oracle::sample_set(e.shapes, 2e-4), -10, 2);
    EXPECT_GE(a.upper + 1e-9, lo);
    EXPECT_NEAR(a.mid(), lo, 0.02 * a.mid());
  }
}

TEST(Lipschitz, Examples) {
  EXPECT_NEAR(lipschitz_majorant_area(std::vector<Shape>{make_vslit(0, 1)}), 1.0, 1e-12);
  EXPECT_NEAR(lipschitz_majorant_area(std::vector<Shape>{make_vslit(0, 1), make_vslit(10, 1)}), 2.0, 1e-12);
  EXPECT_EQ(lipschitz_majorant_area(std::vector<Shape>{}), 0.0);
}

TEST(Lipschitz, AgreesWithEnvelopeOracle) {
  const std::vector<std::vector<Shape>> sets{
      {make_halfdisk(0, 1)},
      {make_vslit(0, 1), make_vslit(0.5, 0.8)},
      {make_box(0, 1, 0, 0.5), make_halfdisk(2, 0.4), make_vslit(3, 1.2)}};
  for (const auto& s : sets) {
    const auto pts = oracle::sample_set(s, 1e-3);
    const Rect b = bounding_box(std::span<const Shape>(s));
    const double o = oracle::lipschitz_oracle(pts, b.x0 - b.y1 - 1, b.x1 + b.y1 + 1, 20000);
    EXPECT_NEAR(lipschitz_majorant_area(s), o, 3e-3);
  }
}
