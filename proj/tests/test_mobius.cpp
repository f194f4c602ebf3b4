#include <gtest/gtest.h>

#include <complex>

#include "hcap/mobius.hpp"
#include "hcap/parallel.hpp"
#include "oracles.hpp"

using namespace hcap;

TEST(Transport, Examples) {
  EXPECT_NEAR(norm(t_y(1, {0, 1})), 0.0, 1e-15);
  const Point w = t_y(1, {0, 3});
  EXPECT_NEAR(w.x, 0.5, 1e-15);
  EXPECT_NEAR(w.y, 0.0, 1e-15);
  const Point b = t_y(1, {0, 0});
  EXPECT_NEAR(b.x, -1.0, 1e-15);
  EXPECT_THROW(TransportMap(0.0), DomainError);
}

TEST(Transport, InverseAndIsometry) {
  WalkRng rng = walk_stream(9, 0);
  for (int i = 0; i < 200; ++i) {
    const double y = 0.5 + 10 * uniform01(rng);
    const Point z{8 * uniform01(rng) - 4, 5 * uniform01(rng) + 1e-3}, u{8 * uniform01(rng) - 4, 5 * uniform01(rng) + 1e-3};
    const Point back = t_y_inverse(y, t_y(y, z));
    EXPECT_NEAR(back.x, z.x, 1e-9 * (1 + norm(z)));
    EXPECT_NEAR(back.y, z.y, 1e-9 * (1 + norm(z)));
    EXPECT_LT(norm(t_y(y, z)), 1.0);
    EXPECT_NEAR(oracle::hyp_d(t_y(y, z), t_y(y, u)), oracle::hyp_h(z, u), 1e-7 * (1 + oracle::hyp_h(z, u)));
  }
}

TEST(Jacobian, ExamplesAndFiniteDifference) {
  EXPECT_NEAR(t_y_jacobian(1, {0, 1}), 0.25, 1e-15);
  for (double y : {1.0, 3.0, 50.0}) EXPECT_NEAR(t_y_jacobian(y, {0, 0}), 4.0 / (y * y), 1e-15);
  for (double y : {1.0, 7.0}) {
    const Point z{0.3, 0.8};
    const double h = 1e-6;
    const std::complex<double> d = (to_complex(t_y(y, {z.x + h, z.y})) - to_complex(t_y(y, {z.x - h, z.y}))) / (2 * h);
    EXPECT_NEAR(t_y_jacobian(y, z), std::norm(d), 1e-6);
  }
  EXPECT_NEAR(t_y_jacobian(1e4, {0.2, 0.5}) * 1e8 / 4.0, 1.0, 1e-3);
}

TEST(ImageArea, AgainstSimpson) {
  for (double y : {1.0, 5.0}) {
    const Rect box{-1, 0, 1, 1.5};
    const AreaBounds a = image_area(box, y, QuadOptions{});
    const double s = oracle::simpson2([y](double x, double v) { return 4 * y * y / std::pow(x * x + (v + y) * (v + y), 2); },
                                      box.x0, box.x1, box.y0, box.y1, 400);
    EXPECT_TRUE(a.contains(s)) << a.lower << " " << s << " " << a.upper;
  }
}

TEST(ImageArea, UnitBoxFarAway) {
  const Rect box{0, 0, 1, 1};
  for (double y : {100.0, 200.0, 400.0}) {
    const AreaBounds a = image_area(box, y, QuadOptions{});
    const double r = y * y * a.mid() / 4.0;
    EXPECT_LE(r, 1.0);
    EXPECT_GE(r, 1.0 - 12.0 / y);
  }
  const AreaBounds a = image_area(box, 400, QuadOptions{});
  EXPECT_GE(400.0 * 400.0 * a.lower / 4.0, 0.97);
}

TEST(ImageArea, ShapeRegionAndEmpty) {
  const std::vector<Shape> s{make_halfdisk(0, 1)};
  const AreaBounds a = image_area(s, 2.0, QuadOptions{});
  const double g = oracle::simpson2(
      [](double r, double t) {
        const double x = r * std::cos(t), v = r * std::sin(t);
        return r * 16.0 / std::pow(x * x + (v + 2) * (v + 2), 2);
      },
      0, 1, 0, kPi, 400);
  EXPECT_NEAR(a.mid(), g, 2e-3 * g);
  EXPECT_EQ(image_area(std::vector<Shape>{}, 2.0, QuadOptions{}).upper, 0.0);
}

TEST(ImageArea, DoublingYQuartersArea) {
  const Rect box{0, 0, 1, 1};
  const double r1 = 1000.0 * 1000.0 * image_area(box, 1000, QuadOptions{}).mid() / 4;
  const double r2 = 2000.0 * 2000.0 * image_area(box, 2000, QuadOptions{}).mid() / 4;
  EXPECT_NEAR(r2 / r1, 1.0, 3e-3);
}

TEST(TransportedHull, AnnulusCheck) {
  EXPECT_TRUE(pushforward_set(HalfPlaneHull({make_halfdisk(0, 1)}), 1.0).annulus_violation());
  EXPECT_TRUE(pushforward_set(HalfPlaneHull({make_halfdisk(0, 1)}), 8.0).within_annulus());
  EXPECT_TRUE(pushforward_set(HalfPlaneHull(), 1.0).within_annulus());
}

TEST(TransportedHull, MembershipConsistency) {
  const HalfPlaneHull a({make_vslit(0, 1), make_box(1, 2, 0, 0.5)});
  const TransportedHull t = pushforward_set(a, 3.0);
  WalkRng rng = walk_stream(2, 0);
  int inside = 0;
  for (int i = 0; i < 20000; ++i) {
    const Point z{3 * uniform01(rng) - 0.5, uniform01(rng)};
    EXPECT_EQ(t.contains(t_y(3.0, z)), set_contains(a.shapes(), z));
    inside += set_contains(a.shapes(), z);
  }
  EXPECT_GT(inside, 0);
}
