#include <gtest/gtest.h>

#include <complex>

#include "hcap/capacity.hpp"
#include "hcap/corpus.hpp"
#include "oracles.hpp"

using namespace hcap;

namespace {

WalkConfig cfg(std::uint64_t n, std::uint64_t seed, double eps = 1e-4) {
  WalkConfig c;
  c.n_walks = n;
  c.seed = seed;
  c.eps_stop = eps;
  return c;
}

// lim z (g(z) - z) along the imaginary axis, by Richardson extrapolation in 1/y^2
double hcap_from_map(const CanonicalHull& c) {
  const auto at = [&](double y) {
    const std::complex<double> z{c.shift, y};
    return (z * (c.g(z) - z)).real();
  };
  return (4.0 * at(2e3) - at(1e3)) / 3.0;
}

}  // namespace

TEST(ClosedForm, Hcap) {
  EXPECT_DOUBLE_EQ(hcap_exact(CanonicalHull::half_disk(1)), 1.0);
  EXPECT_DOUBLE_EQ(hcap_exact(CanonicalHull::slit(1)), 0.5);
  EXPECT_DOUBLE_EQ(hcap_exact(CanonicalHull::slit(1, 7.0)), 0.5);
  for (const auto& c : {CanonicalHull::half_disk(0.7, 2), CanonicalHull::slit(1.3, -1), CanonicalHull::slit(2, 0, 3)})
    EXPECT_NEAR(hcap_exact(c), hcap_from_map(c), 1e-6 * hcap_exact(c));
}

TEST(ClosedForm, MapsAreNormalizedAndRealOnTheBoundary) {
  for (const auto& c : {CanonicalHull::half_disk(1), CanonicalHull::slit(1)}) {
    for (double x : {-3.0, -1.5, 1.5, 3.0}) EXPECT_NEAR(c.g({x, 0}).imag(), 0.0, 1e-12);
    const std::complex<double> on_hull = c.kind == CanonicalKind::halfdisk ? std::polar(1.0, 1.0) : std::complex<double>{0, 0.5};
    EXPECT_NEAR(c.g(on_hull).imag(), 0.0, 1e-12) << "hull boundary maps to the axis";
    const std::complex<double> z{0.4, 2.0};
    EXPECT_GT(c.g(z).imag(), 0.0);
    const double h = 1e-6;
    const std::complex<double> fd = (c.g(z + h) - c.g(z - h)) / (2 * h);
    EXPECT_NEAR(std::abs(fd - c.g_prime(z)), 0.0, 1e-6);
  }
}

TEST(ClosedForm, Dcap) {
  EXPECT_NEAR(dcap_exact(CanonicalHull::ring(0.7)), 0.356675, 1e-6);
  EXPECT_THROW(CanonicalHull::ring(0.4), DomainError);
}

TEST(ClosedForm, Crad) {
  EXPECT_NEAR(crad_exact(CanonicalHull::half_disk(0.3), {0, 1}), 2 * (1 - 0.09) / (1 + 0.09), 1e-12);
  EXPECT_NEAR(crad_exact(CanonicalHull::half_disk(0.3), {0, 1}), 1.669725, 1e-6);
  for (double s : {0.1, 0.3}) EXPECT_NEAR(crad_exact(CanonicalHull::slit(s), {0, 1}), 2 * (1 - s * s), 1e-12);
  for (double y : {2.0, 8.0}) {
    const double v = crad_exact(CanonicalHull::half_disk(1), {0, y});
    EXPECT_NEAR(v, 2 * y * (1 - 1 / (y * y)) / (1 + 1 / (y * y)), 1e-12);
  }
}

TEST(MapResiduals, HalfDiskFamily) {
  for (double e : {0.3, 0.1, 0.03}) {
    const MapResiduals m = map_residuals(CanonicalHull::half_disk(e));
    EXPECT_NEAR(m.h, e * e, 1e-15);
    // g(i) = i(1 - e^2), exactly i - ih
    EXPECT_NEAR(m.g_residual, 0.0, 1e-15);
    // 1/g'(i) = 1/(1 + e^2)
    EXPECT_NEAR(m.gprime_residual, std::abs(1 / (1 + e * e) - 1 + e * e), 1e-15);
    EXPECT_LE(m.max_displacement, 3 * e);
  }
  const double e = 0.3;
  const double v = (2 - crad_exact(CanonicalHull::half_disk(e), {0, 1})) / hcap_exact(CanonicalHull::half_disk(e));
  EXPECT_NEAR(v, 3.669725, 1e-6);
  EXPECT_NEAR(std::abs(v - 4), 0.330275, 1e-6);
  const double e2 = 0.1;
  const double v2 = (2 - crad_exact(CanonicalHull::half_disk(e2), {0, 1})) / hcap_exact(CanonicalHull::half_disk(e2));
  EXPECT_NEAR(std::abs(v2 - 4), 0.039604, 1e-6);
}

TEST(Dcap, RingExact) {
  for (double rho : {0.6, 0.7, 0.8}) {
    const Estimate e = dcap_mc(DiskCompact({make_ring(rho)}), cfg(5000, 1));
    EXPECT_NEAR(e.mean, -std::log(rho), 1e-12);
  }
}

TEST(Dcap, EmptyAndMonotone) {
  EXPECT_EQ(dcap_mc(DiskCompact(), cfg(1000, 1)).mean, 0.0);
  const Estimate a = dcap_mc(DiskCompact({make_arcbox(0, 1, 0.8)}), cfg(40000, 2));
  const Estimate b = dcap_mc(DiskCompact({make_arcbox(-0.5, 1.5, 0.75)}), cfg(40000, 2));
  EXPECT_LE(a.mean, b.mean + 3 * std::hypot(a.std_error, b.std_error));
}

TEST(Hcap, HalfDiskIsUnbiasedAtEveryHeight) {
  const HalfPlaneHull a = CanonicalHull::half_disk(1).hull();
  const HcapResult r = hcap_mc(a, cfg(60000, 3, halfplane_eps(a)));
  ASSERT_EQ(r.per_y.size(), 4u);
  for (const Estimate& e : r.per_y) EXPECT_NEAR(e.mean, 1.0, 4 * e.std_error + 1e-3);
  EXPECT_NEAR(r.estimate.mean, 1.0, 0.02);
  EXPECT_FALSE(r.fit_rejected);
}

TEST(Hcap, SlitRawValueAndFit) {
  const HalfPlaneHull a = CanonicalHull::slit(1).hull();
  const HcapResult r = hcap_mc(a, {4, 8, 16, 32}, cfg(100000, 4, halfplane_eps(a)));
  EXPECT_NEAR(r.per_y[0].mean, 4 * (4 - std::sqrt(15.0)), 4 * r.per_y[0].std_error + 1e-3);
  EXPECT_NEAR(4 * (4 - std::sqrt(15.0)), 0.5080666, 1e-7);
  EXPECT_NEAR(r.estimate.mean, 0.5, 0.015);
}

TEST(Hcap, PreconditionsAndEmpty) {
  const HalfPlaneHull a = CanonicalHull::half_disk(1).hull();
  EXPECT_THROW(hcap_mc(a, {8, 16}, cfg(100, 1)), DomainError);
  EXPECT_THROW(hcap_mc(a, {1.5, 16, 32}, cfg(100, 1)), DomainError);
  EXPECT_EQ(hcap_mc(HalfPlaneHull(), {8, 16, 32}, cfg(100, 1)).estimate.mean, 0.0);
}

TEST(Hcap, WeightedFitRecoversALine) {
  const LineFit f = weighted_line_fit({1, 2, 3, 4}, {3, 5, 7, 9}, {1, 1, 1, 1});
  EXPECT_NEAR(f.h, 1.0, 1e-12);
  EXPECT_NEAR(f.c, 2.0, 1e-12);
}

TEST(Crad, HalfPlaneByTransport) {
  const HalfPlaneHull a = CanonicalHull::half_disk(0.3).hull();
  const Estimate e = crad_halfplane(a, 1.0, cfg(100000, 5, halfplane_eps(a)));
  EXPECT_NEAR(e.mean, 1.669725, 4 * e.std_error + 2e-4);
  EXPECT_NEAR(crad_halfplane(HalfPlaneHull(), 1.0, cfg(100, 5)).mean, 2.0, 1e-12);
}

TEST(Crad, KoebeBracketOnCorpusHulls) {
  CorpusSpec spec;
  spec.kind = CorpusKind::halfdisk_mix;
  spec.count = 6;
  for (const auto& e : corpus_generate(spec)) {
    const HalfPlaneHull a(e.shapes);
    const double d = std::min(1.0, min_distance({0, 1}, a.shapes()));
    const Estimate c = crad_halfplane(a, 1.0, cfg(20000, 6, halfplane_eps(a)));
    EXPECT_GE(c.mean + 3 * c.std_error, d);
    EXPECT_LE(c.mean - 3 * c.std_error, 4 * d);
  }
}

TEST(Transport, PairedRatioIsNearTwo) {
  const HalfPlaneHull a = CanonicalHull::half_disk(1).hull();
  const TransportSample t = transport_sample(a, 16.0, cfg(40000, 7, halfplane_eps(a)));
  // exact: y^2 dcap / (y Im(iy - g)) with dcap = -log(crad/2y)
  const double crad = crad_exact(CanonicalHull::half_disk(1), {0, 16});
  const double exact_dcap = -std::log(crad / 32.0);
  EXPECT_NEAR(t.dcap.mean, exact_dcap, 4 * t.dcap.std_error + 1e-5);
  EXPECT_NEAR(t.paired_ratio.mean, 2.0, 0.01);
  EXPECT_NEAR(t.crad.mean, crad, 4 * t.crad.std_error + 1e-3);
}

TEST(LayerSum, RingExample) {
  const LayerSum s = dcap_layer_sum(DiskCompact({make_ring(0.7)}), cfg(5000, 8));
  EXPECT_NEAR(s.omega[1].mean, 1.0, 1e-15);
  for (std::size_t n = 0; n < s.omega.size(); ++n)
    if (n != 1) EXPECT_EQ(s.omega[n].mean, 0.0);
  EXPECT_NEAR(s.lower, 0.25, 1e-12);
  EXPECT_NEAR(s.upper, 2 * std::log(2.0) * 0.5, 1e-12);
  EXPECT_GE(s.dcap.mean, s.lower);
  EXPECT_LE(s.dcap.mean, s.upper);
  EXPECT_EQ(s.violations, 0u);
}

TEST(LayerSum, EmptyAndCorpusHaveNoViolations) {
  const LayerSum e = dcap_layer_sum(DiskCompact(), cfg(500, 9));
  EXPECT_EQ(e.lower, 0.0);
  EXPECT_EQ(e.upper, 0.0);
  CorpusSpec spec;
  spec.kind = CorpusKind::radial_slit_set;
  spec.count = 6;
  for (const auto& el : corpus_generate(spec)) {
    const LayerSum s = dcap_layer_sum(DiskCompact(el.shapes), cfg(5000, 10));
    EXPECT_EQ(s.violations, 0u);
    EXPECT_LE(s.lower, s.dcap.mean + 2e-4);
    EXPECT_GE(s.upper + 2e-4, s.dcap.mean);
  }
}

TEST(Report, ExactHalfDisk) {
  CapacityOptions opt;
  opt.exact = true;
  opt.walks = cfg(20000, 11);
  const CapacityReport r = capacity_report(CanonicalHull::half_disk(1).hull(), opt);
  ASSERT_TRUE(r.hcap_closed_form);
  EXPECT_DOUBLE_EQ(*r.hcap_closed_form, 1.0);
  EXPECT_FALSE(r.areas.empty());
}

TEST(Report, RingDisk) {
  CapacityOptions opt;
  opt.walks = cfg(5000, 12);
  const CapacityReport r = capacity_report(DiskCompact({make_ring(0.7)}), opt);
  ASSERT_TRUE(r.dcap);
  EXPECT_NEAR(r.dcap->mean, 0.356675, 1e-6);
  ASSERT_TRUE(r.crad);
  EXPECT_NEAR(r.crad->mean, 0.7, 1e-9);
}
