#include <gtest/gtest.h>

#include <set>

#include "hcap/verify.hpp"

using namespace hcap;

namespace {

VerifyConfig small_config() {
  VerifyConfig c;
  c.n_walks = 20000;
  c.corpus_walks = 5000;
  c.neighborhood_walks = 3000;
  c.corpus_size = 3;
  c.halfplane_corpus_size = 3;
  c.pair_count = 2;
  c.prop1_cases = 2;
  c.fattening_cases = 1;
  c.omega_cases = 2;
  return c;
}

std::size_t count_claim(const std::vector<CheckResult>& rows, const std::string& claim) {
  std::size_t n = 0;
  for (const auto& r : rows) n += r.claim == claim;
  return n;
}

}  // namespace

TEST(CheckLog, BracketVerdicts) {
  CheckLog log("x");
  log.in_bracket("c", "inside", 1.0, 0.1, {0.5, 2.0}, "f");
  log.in_bracket("c", "near edge", 2.05, 0.1, {0.5, 2.0}, "f");
  log.in_bracket("c", "outside", 3.0, 0.1, {0.5, 2.0}, "f");
  log.in_bracket("c", "nan", std::nan(""), 0.1, {0.5, 2.0}, "f");
  const auto& r = log.rows();
  EXPECT_EQ(*r[0].verdict, Verdict::pass);
  EXPECT_EQ(*r[1].verdict, Verdict::inconclusive);
  EXPECT_EQ(*r[2].verdict, Verdict::fail);
  EXPECT_EQ(*r[3].verdict, Verdict::fail);
  EXPECT_EQ(r[0].fixture, "f");
}

TEST(CheckLog, UpperLimitVerdicts) {
  CheckLog log("x");
  log.at_most("c", "q", 0.9, 0.0, 1.0, "");
  log.at_most("c", "q", 1.05, 0.1, 1.0, "");
  log.at_most("c", "q", 1.5, 0.1, 1.0, "");
  EXPECT_EQ(*log.rows()[0].verdict, Verdict::pass);
  EXPECT_EQ(*log.rows()[1].verdict, Verdict::inconclusive);
  EXPECT_EQ(*log.rows()[2].verdict, Verdict::fail);
  EXPECT_EQ(count_verdicts(log.rows()).fail, 1u);
}

TEST(Fixtures, WidenIsMultiplicative) {
  const Bracket b = widen(0.2, 0.6, 1.5);
  EXPECT_NEAR(b.lo, 0.2 / 1.5, 1e-15);
  EXPECT_NEAR(b.hi, 0.9, 1e-15);
  EXPECT_TRUE(kPilotFixtures.t1_ratio.lo > 0.0);
  EXPECT_TRUE(kPilotFixtures.t2_ratio.lo < kPilotFixtures.t2_ratio.hi);
}

TEST(RunClaim, UnknownClaimRejected) {
  EXPECT_THROW(run_claim("t3", small_config()), ValidationError);
}

TEST(RunClaim, ClaimIdsAreDistinct) {
  const auto& names = claim_names();
  EXPECT_EQ(std::set<std::string>(names.begin(), names.end()).size(), names.size());
  EXPECT_EQ(names.size(), 9u);
}

TEST(HcapCrad, ClosedFormPathIsExact) {
  VerifyConfig c = small_config();
  c.eps_list = {0.3, 0.1};
  const auto rows = hcap_crad_residual(CanonicalKind::halfdisk, c);
  bool saw = false;
  for (const auto& r : rows)
    if (r.quantity == "(2-crad)/hcap closed form") {
      saw = true;
      EXPECT_EQ(*r.verdict, Verdict::pass);
    }
  EXPECT_TRUE(saw);
  EXPECT_EQ(count_verdicts(rows).fail, 0u);
}

TEST(HcapCrad, SlitResidualVanishes) {
  VerifyConfig c = small_config();
  c.eps_list = {0.3, 0.1};
  for (const auto& r : hcap_crad_residual(CanonicalKind::vslit, c))
    if (r.quantity == "residual/eps") EXPECT_LT(r.value, 1e-9);
}

TEST(Corollary, RatioApproachesTwo) {
  const VerifyConfig c = small_config();
  const auto rows = corollary_limit(limit_cases().front(), {8, 16, 32}, c);
  EXPECT_EQ(count_verdicts(rows).fail, 0u);
  EXPECT_GE(count_verdicts(rows).pass, 2u);
}

TEST(Corollary, EmptyHullRejected) {
  EXPECT_THROW(transport_sample(HalfPlaneHull(), 8.0, WalkConfig{}), DomainError);
}

TEST(Prop1, ZeroAreaSetRejected) {
  const Prop1Case pc{"slit", DiskCompact({make_rslit(0, 0.8)})};
  EXPECT_THROW(prop1_check(pc, small_config(), 1000), ValidationError);
}

TEST(Prop1, RingOrderingIsStrict) {
  const auto rows = prop1_report(small_config());
  for (const auto& r : rows)
    if (r.quantity == "strict dcap(Q(B))>dcap(B)") EXPECT_EQ(*r.verdict, Verdict::pass);
  EXPECT_EQ(count_verdicts(rows).fail, 0u);
}

TEST(Determinism, ClaimsIgnoreWorkerCount) {
  const VerifyConfig c = small_config();
  set_worker_count(1);
  const auto a = run_claim("t2", c);
  set_worker_count(3);
  const auto b = run_claim("t2", c);
  set_worker_count(1);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].quantity, b[i].quantity);
    EXPECT_TRUE(a[i].value == b[i].value || (std::isnan(a[i].value) && std::isnan(b[i].value))) << a[i].quantity;
  }
}

TEST(Omega, RingConcentratesInOneLayer) {
  VerifyConfig c = small_config();
  const DiskCase ring{"ring(0.7)", DiskCompact({make_ring(0.7)})};
  const auto rows = smoothed_omega_check(ring, c);
  EXPECT_EQ(count_verdicts(rows).fail, 0u);
  EXPECT_EQ(count_claim(rows, "omega"), rows.size());
}
