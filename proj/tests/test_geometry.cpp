#include <gtest/gtest.h>

#include <set>

#include "hcap/corpus.hpp"
#include "hcap/geometry.hpp"
#include "oracles.hpp"

using namespace hcap;

TEST(EuclidDist, SlitExamples) {
  EXPECT_DOUBLE_EQ(euclid_dist({0, 2}, make_vslit(0, 1)), 1.0);
  EXPECT_DOUBLE_EQ(euclid_dist({0, 1}, make_vslit(0, 1)), 0.0);
}

TEST(EuclidDist, HalfDiskAgainstSampling) {
  const Shape d = make_halfdisk(0, 1);
  EXPECT_NEAR(euclid_dist({3, 4}, d), 4.0, 1e-12);
  const auto pts = oracle::sample_shape(d, 1e-3);
  EXPECT_NEAR(euclid_dist({3, 4}, d), oracle::min_dist({3, 4}, pts), 1e-3);
}

TEST(EuclidDist, EveryShapeMatchesDenseSampling) {
  const std::vector<Shape> shapes{make_vslit(0.3, 0.7), make_box(-1, -0.5, 0, 0.4), make_halfdisk(2, 0.5),
                                  make_rslit(1.0, 0.6), make_arcbox(2.0, 3.0, 0.7), make_arcbox(5.5, 7.0, 0.6)};
  WalkRng rng = walk_stream(11, 0);
  for (const Shape& s : shapes) {
    const auto pts = oracle::sample_shape(s, 2e-3);
    for (int t = 0; t < 40; ++t) {
      const Point z{4 * uniform01(rng) - 2, 2 * uniform01(rng) - 0.5};
      EXPECT_NEAR(euclid_dist(z, s), oracle::min_dist(z, pts), 2e-3) << shape_name(s) << " at " << z.x << "," << z.y;
      EXPECT_NEAR(dist(nearest_point(z, s), z), euclid_dist(z, s), 1e-12);
    }
  }
}

TEST(ShapeIntersectsDisk, Examples) {
  EXPECT_TRUE(shape_intersects_disk(make_vslit(0, 1), {0, 2}, 1.0));
  EXPECT_FALSE(shape_intersects_disk(make_vslit(0, 1), {0, 2}, 0.5));
  EXPECT_FALSE(shape_intersects_disk(make_arcbox(0, kPi / 2, 0.8), {0, 0}, 0.79));
  EXPECT_TRUE(shape_intersects_disk(make_arcbox(0, kPi / 2, 0.8), {0, 0}, 0.8));
}

TEST(Validate, HullExamples) {
  const std::vector<Shape> ok{make_vslit(0, 1), make_vslit(1, 1)};
  EXPECT_FALSE(validate_hull(ok));
  const std::vector<Shape> bad{make_halfdisk(0, 1), make_halfdisk(1, 1)};
  EXPECT_TRUE(validate_hull(bad));
  EXPECT_FALSE(validate_hull(std::vector<Shape>{}));
  EXPECT_THROW(HalfPlaneHull{bad}, ValidationError);
}

TEST(Validate, FloatingBoxRejected) {
  EXPECT_TRUE(validate_hull(std::vector<Shape>{make_box(0, 1, 0.5, 1)}));
}

TEST(Validate, DiskSetMustStayInAnnulus) {
  EXPECT_FALSE(validate_disk_set(std::vector<Shape>{make_ring(0.7)}));
  EXPECT_TRUE(validate_disk_set(std::vector<Shape>{make_rslit(0, 0.4)}));
}

TEST(Constructors, RejectDegenerateParameters) {
  EXPECT_THROW(make_vslit(0, -1), ValidationError);
  EXPECT_THROW(make_halfdisk(0, 0), ValidationError);
  EXPECT_THROW(make_box(1, 0, 0, 1), ValidationError);
  EXPECT_THROW(make_rslit(0, 1.5), ValidationError);
}

TEST(Rect, AreaAndContainment) {
  const Shape b = make_box(0, 2, 0, 1);
  EXPECT_DOUBLE_EQ(shape_area(b), 2.0);
  EXPECT_TRUE(rect_inside_shape({0.5, 0.2, 1.0, 0.8}, b));
  EXPECT_FALSE(rect_inside_shape({1.5, 0.2, 2.5, 0.8}, b));
  EXPECT_NEAR(shape_area(make_halfdisk(0, 1)), kPi / 2, 1e-12);
  EXPECT_NEAR(shape_area(make_ring(0.5)), kPi * 0.75, 1e-12);
}

TEST(Hull, ScaleAndCenter) {
  const HalfPlaneHull a({make_vslit(-1, 1), make_vslit(3, 2)});
  EXPECT_DOUBLE_EQ(a.center_x(), 1.0);
  EXPECT_NEAR(a.scale(), std::hypot(4.0, 2.0), 1e-12);
  EXPECT_NEAR(a.radius_about_center(), std::hypot(2.0, 2.0), 1e-12);
  EXPECT_NEAR(a.translated(5).center_x(), 6.0, 1e-12);
  EXPECT_NEAR(a.reflected().center_x(), -1.0, 1e-12);
  EXPECT_NEAR(a.scaled(2).scale(), 2 * a.scale(), 1e-12);
}

TEST(Corpus, DeterministicAndValid) {
  for (CorpusKind k : {CorpusKind::slit_forest, CorpusKind::staircase, CorpusKind::halfdisk_mix,
                       CorpusKind::radial_slit_set, CorpusKind::arcbox_set}) {
    CorpusSpec spec;
    spec.kind = k;
    spec.count = 25;
    spec.seed = 3;
    const auto a = corpus_generate(spec), b = corpus_generate(spec);
    ASSERT_EQ(a.size(), 25u);
    for (std::size_t i = 0; i < a.size(); ++i) {
      ASSERT_EQ(a[i].shapes.size(), b[i].shapes.size());
      if (a[i].space == Space::halfplane) {
        EXPECT_FALSE(validate_hull(a[i].shapes));
        EXPECT_LE(bounding_box(std::span<const Shape>(a[i].shapes)).y1, spec.max_height);
      } else {
        EXPECT_FALSE(validate_disk_set(a[i].shapes));
      }
    }
  }
}

TEST(Corpus, SpansSeveralDyadicScales) {
  CorpusSpec spec;
  spec.count = 40;
  std::set<int> octaves;
  for (const auto& e : corpus_generate(spec))
    octaves.insert(static_cast<int>(std::floor(std::log2(HalfPlaneHull(e.shapes).scale()))));
  EXPECT_GE(octaves.size(), 3u);
}

TEST(Corpus, KindNamesRoundTrip) {
  for (const char* n : {"slit-forest", "staircase", "halfdisk-mix", "radial-slit-set", "arcbox-set"})
    EXPECT_EQ(corpus_kind_name(*parse_corpus_kind(n)), n);
  EXPECT_FALSE(parse_corpus_kind("spiral"));
}
