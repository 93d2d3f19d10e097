#include "isobary/parallel.hpp"
#include "isobary/scan_report.hpp"

#include <gtest/gtest.h>

#include <atomic>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "json.hpp"

namespace isobary {
namespace {

TEST(GridSpec, SymmetricDefault) {
  const auto pts = GridSpec::symmetric().points();
  ASSERT_EQ(pts.size(), 512U);
  EXPECT_EQ(pts.front(), Rational(-511, 512));
  EXPECT_EQ(pts.back(), Rational(511, 512));
  EXPECT_EQ(pts[1] - pts[0], Rational(1, 256));
}

TEST(GridSpec, InclusiveEnd) {
  const GridSpec g{Rational(0), Rational(1), Rational(1, 4)};
  EXPECT_EQ(g.points().size(), 5U);
}

TEST(FormatDouble, ShortestRoundTrip) {
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(format_double(-0.9), "-0.9");
  EXPECT_EQ(format_double(1.0 / 3), "0.3333333333333333");
  EXPECT_EQ(std::stod(format_double(M_PI)), M_PI);
}

TEST(ScanReport, VerdictLogic) {
  ScanReport r("x", true);
  EXPECT_EQ(r.verdict(), Verdict::kPass);
  r.add({1, "0", 0.1, 0.2, 0.1, true});
  r.add({1, "0.5", 0.3, 0.2, -0.1, false});
  EXPECT_EQ(r.verdict(), Verdict::kFail);
  EXPECT_EQ(r.violation_count(), 1U);
  ASSERT_TRUE(r.worst_point());
  EXPECT_EQ(r.worst_point()->t, "0.5");
  r.set_allowed_violations(1);
  EXPECT_EQ(r.verdict(), Verdict::kPass);

  ScanReport info("y", false);
  info.add({1, "0", 1, 0, -1, false});
  EXPECT_EQ(info.verdict(), Verdict::kReportOnly);
  EXPECT_FALSE(info.failed());
}

TEST(ScanReport, NanIsWorst) {
  ScanReport r("x", true);
  r.add({1, "a", 0, 0, 0.5, true});
  r.add({1, "b", 0, 0, std::numeric_limits<double>::quiet_NaN(), false});
  r.add({1, "c", 0, 0, -2, false});
  EXPECT_EQ(r.worst_point()->t, "b");
}

TEST(ScanReport, ViolationListIsCapped) {
  ScanReport r("x", true);
  for (int i = 0; i < 250; ++i) r.add({1, std::to_string(i), 0, 0, -1, false});
  EXPECT_EQ(r.violation_count(), 250U);
  EXPECT_EQ(r.violations().size(), ScanReport::kMaxListedViolations);
}

TEST(ScanReport, JsonShape) {
  ScanReport r("diag", true);
  r.set_n_range(1, 2);
  r.set_grid(GridSpec::symmetric());
  r.add({1, "0", -0.25, 0, 0.25, true});
  r.add_metric({"max_gap", 1, -0.25, "0"});
  const auto j = nlohmann::json::parse(r.to_json());
  for (const char* key : {"name", "verdict", "assertive", "n_range", "grid", "points", "worst_point",
                          "violation_count", "allowed_violations", "violations", "metrics",
                          "skipped", "notes"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  EXPECT_EQ(j["name"], "diag");
  EXPECT_EQ(j["verdict"], "pass");
  EXPECT_EQ(j["points"], 1);
  EXPECT_EQ(j["metrics"][0]["name"], "max_gap");

  const auto arr = nlohmann::json::parse(reports_to_json({r, r}));
  ASSERT_TRUE(arr.is_array());
  EXPECT_EQ(arr.size(), 2U);
}

TEST(ScanReport, Csv) {
  ScanReport r("x", true);
  r.add({3, "0.5", 0.1, 0.2, 0.1, true});
  r.add({3, "0.75", 0.3, 0.2, -0.1, false});
  std::ostringstream os;
  r.write_csv(os);
  EXPECT_EQ(os.str(),
            "n,t,value,bound,margin,verdict\n"
            "3,0.5,0.1,0.2,0.1,pass\n"
            "3,0.75,0.3,0.2,-0.1,fail\n");
}

TEST(Parallel, CoversEveryIndexOnce) {
  for (int threads : {1, 2, 5}) {
    std::vector<std::atomic<int>> hits(1000);
    parallel_for(hits.size(), threads, [&](std::size_t i) { hits[i]++; });
    for (const auto& h : hits) EXPECT_EQ(h.load(), 1);
  }
  parallel_for(0, 4, [](std::size_t) { FAIL(); });
}

TEST(Parallel, RethrowsLowestFailingIndex) {
  for (int threads : {1, 3}) {
    try {
      parallel_for(100, threads, [](std::size_t i) {
        if (i == 17 || i == 60) throw std::runtime_error(std::to_string(i));
      });
      FAIL();
    } catch (const std::runtime_error& e) {
      EXPECT_STREQ(e.what(), "17");
    }
  }
}

}  // namespace
}  // namespace isobary
