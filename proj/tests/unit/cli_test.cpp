#include <gtest/gtest.h>

#include <cstdlib>
#include <sstream>

#include <nlohmann/json.hpp>

#include "goedel/cli/cli.hpp"

using namespace goedel::cli;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_command(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const char* name) { return std::string(GOEDEL_TEST_DATA_DIR) + "/" + name; }

nlohmann::json result_of(const Outcome& r) {
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_TRUE(j.contains("command"));
  EXPECT_TRUE(j.contains("seed"));
  return j.at("result");
}

}  // namespace

TEST(Cli, CheckExitCodes) {
  EXPECT_EQ(run({"check", "--taut", "D p | ~p"}).code, kHolds);
  const Outcome fails = run({"--format", "json", "check", "--entail", data("T.thy"), "p"});
  EXPECT_EQ(fails.code, kFails);
  EXPECT_EQ(result_of(fails)["witness"]["relations"]["p"]["()"], "1/2");
  EXPECT_EQ(run({"check", "--entail", "p -> q; p", "q"}).code, kHolds);
  EXPECT_EQ(run({"check", "--sat", "p; ~p"}).code, kFails);
  EXPECT_EQ(run({"check", "--sat", "p; !!q"}).code, kHolds);
}

TEST(Cli, FirstOrderChecksAreBounded) {
  const Outcome r = run({"--sig", "rel R/1\nconst c\n", "check", "--entail", "forall x. R(x)", "R(c)"});
  EXPECT_EQ(r.code, kInconclusive) << r.err;
  EXPECT_EQ(run({"--sig", "rel R/1\n", "check", "--entail", "exists x. R(x)", "forall x. R(x)"}).code,
            kFails);
}

TEST(Cli, InterpolateAndCountermodel) {
  const Outcome i = run({"--format", "json", "interpolate", "p & q", "p | r"});
  ASSERT_EQ(i.code, kHolds) << i.err;
  EXPECT_EQ(result_of(i)["interpolant"], "p");
  EXPECT_EQ(run({"interpolate", "!!p", "p"}).code, kFails);
  EXPECT_EQ(run({"interpolate", "~q", "r -> ~q", "--g-only"}).code, kFails);
  const Outcome c = run({"--format", "json", "countermodel", "!!p", "p"});
  ASSERT_EQ(c.code, kHolds) << c.err;
  EXPECT_TRUE(result_of(c).contains("valuation"));
  EXPECT_EQ(run({"countermodel", "p", "D p"}).code, kFails);
  EXPECT_EQ(run({"separate", "p", "q"}).code, kFails);
  EXPECT_EQ(run({"separate", "p", "!p"}).code, kHolds);
}

TEST(Cli, ChainCommands) {
  const Outcome a = run({"amalgamate", data("amalgam.json"), "--dot"});
  ASSERT_EQ(a.code, kHolds) << a.err;
  EXPECT_NE(a.out.find("chain: 0 a d m c b 1"), std::string::npos) << a.out;
  EXPECT_NE(a.out.find("digraph"), std::string::npos);
  const Outcome e = run({"embed", "0,a,b,1"});
  ASSERT_EQ(e.code, kHolds);
  EXPECT_NE(e.out.find("a 1/3"), std::string::npos) << e.out;
  const Outcome l = run({"--format", "json", "lindenbaum", "--valuation", data("valuation.json"), "--depth", "1"});
  ASSERT_EQ(l.code, kHolds) << l.err;
  EXPECT_EQ(result_of(l)["classes"].size(), 3u);
  EXPECT_EQ(run({"lindenbaum", "--valuation", data("valuation.json"), "--depth", "9"}).code, kUsage);
}

TEST(Cli, LemmaSuiteSmoke) {
  const Outcome r = run({"--format", "json", "lemmas", "--suite", "property", "--cases", "20"});
  EXPECT_EQ(r.code, kHolds) << r.out;
  EXPECT_TRUE(result_of(r)["passed"].get<bool>());
}

TEST(Cli, OutputIsDeterministic) {
  const std::vector<std::string> args = {"--format", "json", "--seed", "5", "countermodel", "p | q", "q"};
  const Outcome a = run(args), b = run(args);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.code, b.code);
  const Outcome text = run({"--seed", "5", "embed", "0,1"});
  EXPECT_EQ(text.out.rfind("seed: 5", 0), 0u) << text.out;
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({"frobnicate"}).code, kUsage);
  EXPECT_EQ(run({"check"}).code, kUsage);
  EXPECT_EQ(run({"check", "--taut", "p &"}).code, kUsage);
  EXPECT_EQ(run({"--format", "yaml", "check", "--taut", "p"}).code, kUsage);
  EXPECT_EQ(run({"amalgamate", "{\"b0\": 1}"}).code, kUsage);
}

TEST(Cli, BudgetEnvironment) {
  ::setenv("GOEDEL_BUDGET", "50", 1);
  EXPECT_EQ(default_config().clone_budget, 50u);
  EXPECT_EQ(run({"separate", "D p & q", "~p & r"}).code, kHolds);
  EXPECT_EQ(run({"separate", "!!p & !!q", "~p | ~q"}).code, kInconclusive);
  ::setenv("GOEDEL_BUDGET", "lots", 1);
  EXPECT_THROW(default_config(), std::invalid_argument);
  EXPECT_EQ(run({"embed", "0,1"}).code, kUsage);
  ::unsetenv("GOEDEL_BUDGET");
  EXPECT_EQ(default_config().clone_budget, RunConfig{}.clone_budget);
}
