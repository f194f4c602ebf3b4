#pragma once

// Empirical constants for the comparability checks. Values come from the pilot run
// (`hcapctl pilot --seed 2024`): observed ranges widened by the factor 1.5.

#include <limits>

namespace hcap {

struct Bracket {
  double lo = 0.0;
  double hi = std::numeric_limits<double>::infinity();

  constexpr bool contains(double v) const { return v >= lo && v <= hi; }
};

/// Widens an observed range [lo, hi] by `margin` on each side multiplicatively.
constexpr Bracket widen(double lo, double hi, double margin) { return {lo / margin, hi * margin}; }

struct Fixtures {
  Bracket t1_ratio;          // hcap / |N(A)|
  double t1_spread;          // max / min of t1_ratio over a corpus
  Bracket t1_whitney;        // hcap / |Whitney cover|
  Bracket t1_lipschitz;      // hcap / integral of the Lipschitz majorant
  Bracket t2_ratio;          // dcap / |N(B)|
  double t2_spread;
  Bracket prop1_c1;          // dcap(B) / |B|
  Bracket prop1_c2;          // dcap(Q(B)) / |Q(B)|
  Bracket induction;         // dcap increment / |Q_m|
  double fattening;          // dcap N^(B) / dcap(B)
  double fattening_step;     // one radius-1/4 step
  double omega;              // smoothed layer measure over the three adjacent layers
  double hcap_crad;          // |(2 - crad)/hcap - 4| / eps
  double map_c1;             // |g(i) - i + ih| / (h eps)
  double map_c2;             // |1/g'(i) - 1 + h| / (h eps)
};

inline constexpr double kFixtureMargin = 1.5;

// pilot: seed 2024, 200000 walks (50000 per corpus set, 20000 per neighborhood set)
inline constexpr Fixtures kPilotFixtures{
    .t1_ratio = widen(0.0990737, 0.14333, kFixtureMargin),
    .t1_spread = 1.37738 * kFixtureMargin,
    .t1_whitney = widen(0.182846, 0.694838, kFixtureMargin),
    .t1_lipschitz = widen(0.420444, 0.531107, kFixtureMargin),
    .t2_ratio = widen(0.0560398, 0.133819, kFixtureMargin),
    .t2_spread = 2.38792 * kFixtureMargin,
    .prop1_c1 = widen(0.181097, 0.458455, kFixtureMargin),
    .prop1_c2 = widen(0.193076, 0.417896, kFixtureMargin),
    .induction = widen(0.263076, 0.357914, kFixtureMargin),
    .fattening = 12.8019 * kFixtureMargin,
    .fattening_step = 2.30968 * kFixtureMargin,
    .omega = 1.22252 * kFixtureMargin,
    .hcap_crad = 1.10092 * kFixtureMargin,
    .map_c1 = 0.0785777 * kFixtureMargin,
    .map_c2 = 0.275229 * kFixtureMargin,
};

}  // namespace hcap
