#include "isobary/verify.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace isobary {
namespace {

ScanConfig coarse(int threads = 1) {
  ScanConfig c;
  c.grid = GridSpec::symmetric(Rational(1, 16), Rational(1, 32));
  c.threads = threads;
  return c;
}

TEST(Verify, DiagPassesAndReportsGap) {
  const ScanReport r = scan_diag({1, 8}, coarse());
  EXPECT_EQ(r.verdict(), Verdict::kPass);
  EXPECT_EQ(r.rows().size(), 8U * 32);
  ASSERT_TRUE(r.min_abs_value());
  EXPECT_GT(*r.min_abs_value(), 0.0);
}

TEST(Verify, DerivedAndConjecture) {
  const ScanReport d = scan_derived({1, 8}, 1, coarse());
  EXPECT_TRUE(d.assertive());
  EXPECT_EQ(d.verdict(), Verdict::kPass);
  const ScanReport c = scan_derived({1, 8}, 2, coarse());
  EXPECT_FALSE(c.assertive());
  EXPECT_EQ(c.verdict(), Verdict::kReportOnly);
  EXPECT_EQ(c.violation_count(), 0U);
  EXPECT_EQ(c.metrics().size(), 8U);
}

TEST(Verify, DeterministicAcrossThreadCounts) {
  EXPECT_EQ(scan_diag({1, 6}, coarse(1)).to_json(), scan_diag({1, 6}, coarse(3)).to_json());
  EXPECT_EQ(scan_derived({2, 6}, 1, coarse(1)).to_json(),
            scan_derived({2, 6}, 1, coarse(4)).to_json());
}

TEST(Verify, RegionsAndCombined) {
  const RegionParamsForN params = [](int n) { return RegionParams{2.0, 3.0, 0.5, n}; };
  const ScanReport r = scan_lemma_regions({12, 14}, params, {Region::k1, Region::k2, Region::k3, Region::k4, Region::k5}, coarse());
  EXPECT_EQ(r.verdict(), Verdict::kPass);
  EXPECT_EQ(scan_combined({12, 14}, coarse()).verdict(), Verdict::kPass);
  EXPECT_THROW(scan_combined({7, 12}, coarse()), DomainError);
}

TEST(Verify, FindN0) {
  const N0Result r = find_n0(2000);
  EXPECT_EQ(r.first_hold[1], 28);
  EXPECT_GE(r.n0, 28);
  for (int f : r.first_hold) EXPECT_LE(f, r.n0);
}

TEST(Verify, IdentitiesPass) {
  for (const auto& r : scan_identities({1, 5}, coarse())) {
    EXPECT_FALSE(r.failed()) << r.name();
  }
}

TEST(Verify, MonotoneInN) {
  const auto reports = scan_monotone_in_n(8, coarse());
  ASSERT_EQ(reports.size(), 3U);
  EXPECT_EQ(reports[2].name(), "peakedness");
  EXPECT_EQ(reports[2].verdict(), Verdict::kPass);
}

TEST(Verify, McCheckSmall) {
  const ScanReport a = scan_mc_check(6, 20000, 11, 1);
  const ScanReport b = scan_mc_check(6, 20000, 11, 2);
  EXPECT_EQ(a.to_json(), b.to_json());
  EXPECT_EQ(a.rows().size(), 6U);
}

}  // namespace
}  // namespace isobary
