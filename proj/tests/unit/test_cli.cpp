#include "cli.hpp"

#include <gtest/gtest.h>

#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

namespace {

struct Invocation {
  int code;
  std::string out;
  std::string err;
};

Invocation run(std::vector<std::string> args) {
  args.insert(args.begin(), "isobary");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = isobary::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

TEST(Cli, Tail) {
  const Invocation r = run({"tail", "--n", "2", "--t", "1/2"});
  EXPECT_EQ(r.code, isobary::cli::kExitOk);
  EXPECT_EQ(r.out, "1/8\n");
}

TEST(Cli, MeanJson) {
  const Invocation r = run({"mean", "--n", "2", "--t", "0", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_NE(j.dump().find("1/3"), std::string::npos);
  EXPECT_NE(j.dump().find("1/8"), std::string::npos);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, isobary::cli::kExitUsage);
  EXPECT_EQ(run({"tail", "--n", "2"}).code, isobary::cli::kExitUsage);
  EXPECT_EQ(run({"tail", "--n", "0", "--t", "0"}).code, isobary::cli::kExitUsage);
  EXPECT_EQ(run({"tail", "--n", "2", "--t", "abc"}).code, isobary::cli::kExitUsage);
  EXPECT_EQ(run({"solve", "--x", "0,0"}).code, isobary::cli::kExitUsage);
  EXPECT_EQ(run({"verify", "diag", "--format", "xml"}).code, isobary::cli::kExitUsage);
  EXPECT_EQ(run({"bogus"}).code, isobary::cli::kExitUsage);
}

TEST(Cli, ScanJsonIsDeterministic) {
  const std::vector<std::string> args{"verify", "diag", "--n", "1..4", "--step", "1/16",
                                      "--inset", "1/32", "--threads", "1"};
  const Invocation a = run(args);
  ASSERT_EQ(a.code, 0) << a.err;
  std::vector<std::string> threaded = args;
  threaded.back() = "3";
  EXPECT_EQ(run(threaded).out, a.out);
  const auto j = nlohmann::json::parse(a.out);
  EXPECT_EQ(j.is_array() ? j[0]["verdict"] : j["verdict"], "pass");
}

TEST(Cli, ScanCsv) {
  const Invocation r = run({"verify", "derived", "--n", "3", "--step", "1/4", "--inset", "1/8",
                     "--format", "csv"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.rfind("n,t,value,bound,margin,verdict\n", 0), 0U) << r.out;
}

TEST(Cli, McCheckFixedSeedIsByteIdentical) {
  const std::vector<std::string> args{"verify", "mc-check", "--cases", "4", "--samples", "20000",
                                      "--seed", "99"};
  const Invocation a = run(args);
  const Invocation b = run(args);
  EXPECT_EQ(a.out, b.out);
  EXPECT_FALSE(a.out.empty());
}

TEST(Cli, Solve) {
  const Invocation r = run({"solve", "--n", "2", "--m", "5/6"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("3/4"), std::string::npos) << r.out;
}

}  // namespace
