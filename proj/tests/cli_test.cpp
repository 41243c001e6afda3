#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "cli.hpp"

namespace lqw::cli {
namespace {

namespace fs = std::filesystem;

struct Invocation {
  int code;
  std::string out;
  std::string err;
};

Invocation invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "lqw");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("lqw_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

TEST_F(CliTest, RunResolvesAutoWeight) {
  const auto r = invoke({"run", "--topology", "triangular", "--width", "16", "--height", "16",
                         "--loop-weight", "auto", "--out", path("run.csv")});
  EXPECT_EQ(r.code, kOk) << r.err;
  EXPECT_NE(r.out.find("l=0.0234375"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("t_peak="), std::string::npos);
  std::istringstream csv(slurp(path("run.csv")));
  std::string line;
  std::getline(csv, line);
  EXPECT_EQ(line, "t,success_probability,overlap_abs");
  std::getline(csv, line);
  EXPECT_EQ(line, "0,0.00390625,1");
}

TEST_F(CliTest, RunToStdoutSendsSummaryToStderr) {
  const auto r = invoke({"run", "--width", "8", "--height", "8", "--steps", "3"});
  EXPECT_EQ(r.out.rfind("t,success_probability,overlap_abs\n0,0.015625,1\n", 0), 0u);
  EXPECT_NE(r.err.find("triangular 8x8"), std::string::npos);
}

TEST_F(CliTest, OddHoneycombIsInvalidConfig) {
  const auto r = invoke({"run", "--topology", "honeycomb", "--width", "5", "--height", "4",
                         "--out", path("x.csv")});
  EXPECT_EQ(r.code, kInvalidConfig);
  EXPECT_NE(r.err.find("honeycomb requires even dimensions"), std::string::npos) << r.err;
}

TEST_F(CliTest, InvalidFlagValues) {
  EXPECT_EQ(invoke({"run", "--topology", "square"}).code, kInvalidConfig);
  EXPECT_EQ(invoke({"run", "--loop-weight", "-1"}).code, kInvalidConfig);
  EXPECT_EQ(invoke({"run", "--loop-weight", "abc"}).code, kInvalidConfig);
  EXPECT_EQ(invoke({"run", "--marked", "3"}).code, kInvalidConfig);
  EXPECT_EQ(invoke({"run", "--marked", "99,0"}).code, kInvalidConfig);
  EXPECT_EQ(invoke({"run", "--format", "xml"}).code, kInvalidConfig);
  EXPECT_EQ(invoke({"run", "--width", "1"}).code, kInvalidConfig);
  EXPECT_EQ(invoke({"run", "--bogus"}).code, kInvalidConfig);
  EXPECT_EQ(invoke({}).code, kInvalidConfig);
}

TEST_F(CliTest, NoPeakExitCodeStillWritesCurve) {
  const auto r = invoke({"run", "--width", "16", "--height", "16", "--steps", "5", "--out",
                         path("short.csv")});
  EXPECT_EQ(r.code, kNoPeak);
  EXPECT_NE(r.out.find("no peak found within horizon"), std::string::npos);
  const auto csv = slurp(path("short.csv"));
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 7);
}

TEST_F(CliTest, RunJsonFormat) {
  const auto r = invoke({"run", "--topology", "rectangular", "--width", "8", "--height", "8",
                         "--marked", "1,2", "--format", "json", "--out", path("run.json")});
  EXPECT_EQ(r.code, kOk) << r.err;
  const auto doc = nlohmann::json::parse(slurp(path("run.json")));
  EXPECT_EQ(doc["schema_version"], 1);
  EXPECT_EQ(doc["marked"][0][1], 2);
  EXPECT_EQ(doc["grid"]["topology"], "rectangular");
}

TEST_F(CliTest, SweepSinglePointMatchesRun) {
  const auto sweep = invoke({"sweep-loop", "--topology", "honeycomb", "--width", "16", "--height",
                             "16", "--l-min", "0.01171875", "--l-max", "0.01171875", "--l-points",
                             "1", "--out", path("sweep.csv")});
  ASSERT_EQ(sweep.code, kOk) << sweep.err;
  const auto run = invoke({"run", "--topology", "honeycomb", "--width", "16", "--height", "16",
                           "--loop-weight", "0.01171875", "--out", path("run.csv")});
  ASSERT_EQ(run.code, kOk);
  std::istringstream csv(slurp(path("sweep.csv")));
  std::string header, row;
  std::getline(csv, header);
  std::getline(csv, row);
  EXPECT_EQ(header, "l,t_peak,p_peak");
  // run prints "t_peak=<T> p_peak=<P>"; the sweep row must be "0.01171875,<T>,<P>".
  const auto pos = run.out.find("t_peak=");
  std::istringstream summary(run.out.substr(pos));
  std::string t_field, p_field;
  summary >> t_field >> p_field;
  EXPECT_EQ(row, "0.01171875," + t_field.substr(7) + "," + p_field.substr(7));
}

TEST_F(CliTest, SweepEchoesIncreasingWeights) {
  const auto r = invoke({"sweep-loop", "--width", "12", "--height", "12", "--l-points", "7",
                         "--out", path("sweep.csv")});
  EXPECT_EQ(r.code, kOk) << r.err;
  EXPECT_NE(r.out.find("argmax l="), std::string::npos);
  std::istringstream csv(slurp(path("sweep.csv")));
  std::string line;
  std::getline(csv, line);
  double prev = 0.0;
  int rows = 0;
  while (std::getline(csv, line)) {
    const double l = std::stod(line.substr(0, line.find(',')));
    EXPECT_GT(l, prev);
    prev = l;
    ++rows;
  }
  EXPECT_EQ(rows, 7);
}

TEST_F(CliTest, ScalingNeedsThreeSizes) {
  const auto r = invoke({"scaling", "--sizes", "16,24", "--out", path("s.csv")});
  EXPECT_EQ(r.code, kInvalidConfig);
  EXPECT_NE(r.err.find("at least 3 sizes"), std::string::npos);
}

TEST_F(CliTest, ScalingWritesCsvAndSummary) {
  const auto r = invoke({"scaling", "--topology", "triangular", "--sizes", "16,24,32", "--out",
                         path("s.csv"), "--summary", path("s.json")});
  ASSERT_EQ(r.code, kOk) << r.err;
  std::istringstream csv(slurp(path("s.csv")));
  std::string line;
  std::getline(csv, line);
  EXPECT_EQ(line, "N,t_peak,p_peak");
  std::getline(csv, line);
  EXPECT_EQ(line.rfind("256,", 0), 0u);
  const auto doc = nlohmann::json::parse(slurp(path("s.json")));
  EXPECT_TRUE(doc["c_natural"].is_number());
  EXPECT_TRUE(doc["c_base2"].is_number());
  EXPECT_EQ(nlohmann::json::parse(r.out), doc);
}

TEST_F(CliTest, HelpListsDefaults) {
  const auto r = invoke({"run", "--help"});
  EXPECT_EQ(r.code, kOk);
  for (const char* needle : {"--topology", "triangular", "--width", "16", "--loop-weight", "auto",
                             "--steps", "--out", "--format", "csv", "--marked"}) {
    EXPECT_NE(r.out.find(needle), std::string::npos) << needle;
  }
  const auto sweep = invoke({"sweep-loop", "--help"});
  for (const char* needle : {"--l-min", "--l-max", "--l-points", "25"}) {
    EXPECT_NE(sweep.out.find(needle), std::string::npos) << needle;
  }
  const auto scaling = invoke({"scaling", "--help"});
  EXPECT_NE(scaling.out.find("32,48,64,96,128"), std::string::npos);
}

TEST_F(CliTest, VerifyPasses) {
  const auto r = invoke({"verify"});
  EXPECT_EQ(r.code, kOk) << r.out;
  EXPECT_EQ(r.out.find("[FAIL]"), std::string::npos);
}

TEST(CliVerify, InjectedShiftSignErrorFails) {
  const verify::Stepper faulty = [](WalkState& s, const WalkParams& p) {
    apply_oracle(s, p.marked);
    apply_coin(s, CoinVector(p.grid.degree(), p.loop_weight));
    apply_shift(s);
    s.amplitudes()[1] = -s.amplitudes()[1];
  };
  std::ostringstream out;
  EXPECT_EQ(cmd_verify(out, faulty), kVerificationFailed);
  EXPECT_NE(out.str().find("[FAIL] dense equivalence"), std::string::npos);
}

TEST(CliParsing, AutoTokens) {
  EXPECT_FALSE(parse_auto_real("auto", "--x").has_value());
  EXPECT_DOUBLE_EQ(*parse_auto_real("0.25", "--x"), 0.25);
  EXPECT_EQ(*parse_auto_integer("12", "--x"), 12);
  EXPECT_THROW(parse_auto_integer("1.5", "--x"), ConfigError);
  EXPECT_THROW(parse_auto_real("inf", "--x"), ConfigError);
  EXPECT_EQ(parse_vertex("3,4"), (VertexCoord{3, 4}));
  EXPECT_THROW(parse_vertex("3;4"), ConfigError);
}

TEST(CliParsing, ResolveDefaults) {
  RunConfig config;
  config.topology = Topology::honeycomb;
  config.width = 10;
  config.height = 10;
  const auto params = resolve_params(config);
  EXPECT_DOUBLE_EQ(params.loop_weight, 0.03);
  EXPECT_EQ(params.marked, (std::vector<VertexCoord>{{5, 5}}));
  EXPECT_EQ(resolve_steps(config, params.grid), default_horizon(100));
  const auto grid = resolve_loop_grid(config, params.grid);
  EXPECT_EQ(grid.size(), 25u);
  EXPECT_NEAR(grid.front(), 0.003, 1e-15);
  EXPECT_NEAR(grid.back(), 0.3, 1e-15);
}

}  // namespace
}  // namespace lqw::cli
