#include <sstream>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "lqw/io.hpp"

namespace lqw::io {
namespace {

TEST(Format, TwelveSignificantDigits) {
  EXPECT_EQ(format_number(1.0), "1");
  EXPECT_EQ(format_number(1.0 / 256.0), "0.00390625");
  EXPECT_EQ(format_number(1.0 / 3.0), "0.333333333333");
  EXPECT_EQ(format_number(0.99999999999999978), "1");
  EXPECT_EQ(format_number(6.0 / 1e4), "0.0006");
}

TEST(Format, Parse) {
  EXPECT_EQ(parse_format("csv"), OutputFormat::csv);
  EXPECT_EQ(parse_format("json"), OutputFormat::json);
  EXPECT_THROW(parse_format("xml"), std::invalid_argument);
}

TEST(TimeSeriesCsv, HeaderAndInitialRow) {
  const WalkParams params{{Topology::triangular, 16, 16}, 6.0 / 256.0, {{8, 8}}};
  const auto series = run_curve(params, 3);
  std::ostringstream out;
  write_time_series(out, series, params, std::nullopt, OutputFormat::csv);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "t,success_probability,overlap_abs");
  std::getline(in, line);
  EXPECT_EQ(line, "0,0.00390625,1");
  int rows = 1;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 4);
  EXPECT_EQ(out.str().back(), '\n');
  EXPECT_EQ(out.str().find('\r'), std::string::npos);
}

TEST(TimeSeriesJson, Schema) {
  const WalkParams params{{Topology::honeycomb, 4, 4}, 0.1875, {{1, 1}}};
  const auto series = run_curve(params, 2);
  std::ostringstream out;
  write_time_series(out, series, params, PeakResult{7, 0.5}, OutputFormat::json);
  const auto doc = nlohmann::json::parse(out.str());
  EXPECT_EQ(doc["schema_version"], 1);
  EXPECT_EQ(doc["grid"]["topology"], "honeycomb");
  EXPECT_EQ(doc["grid"]["degree"], 3);
  EXPECT_EQ(doc["marked"][0][0], 1);
  EXPECT_EQ(doc["records"].size(), 3u);
  EXPECT_DOUBLE_EQ(doc["records"][0]["success_probability"].get<double>(), 0.0625);
  EXPECT_EQ(doc["peak"]["t_peak"], 7);
}

TEST(SweepCsv, Rows) {
  const std::vector<LoopSweepRecord> records{{0.001, 40, 0.5, true}, {0.002, 35, 0.75, true}};
  std::ostringstream out;
  write_sweep(out, records, GridSpec{Topology::triangular, 10, 10}, std::vector<VertexCoord>{{5, 5}},
              OutputFormat::csv);
  EXPECT_EQ(out.str(), "l,t_peak,p_peak\n0.001,40,0.5\n0.002,35,0.75\n");
}

TEST(SweepJson, ReportsArgmax) {
  const std::vector<LoopSweepRecord> records{{0.001, 40, 0.5, true}, {0.002, 35, 0.75, true},
                                             {0.004, 900, 0.9, false}};
  std::ostringstream out;
  write_sweep(out, records, GridSpec{Topology::triangular, 10, 10}, std::vector<VertexCoord>{{5, 5}},
              OutputFormat::json);
  const auto doc = nlohmann::json::parse(out.str());
  EXPECT_DOUBLE_EQ(doc["argmax_l"].get<double>(), 0.002);
  EXPECT_EQ(doc["records"][2]["peak_found"], false);
}

TEST(ScalingCsv, Rows) {
  const std::vector<ScalingRecord> records{{1024, 75, 0.97, true}, {4096, 162, 0.988, true}};
  std::ostringstream out;
  write_scaling(out, records, Topology::triangular, OutputFormat::csv);
  EXPECT_EQ(out.str(), "N,t_peak,p_peak\n1024,75,0.97\n4096,162,0.988\n");
}

TEST(ScalingSummary, FitsForEachBase) {
  const std::vector<ScalingRecord> records{
      {1024, 75, 0.97, true}, {2304, 119, 0.98, true}, {4096, 162, 0.988, true}};
  const auto doc = nlohmann::json::parse(scaling_summary_json(Topology::triangular, records));
  EXPECT_EQ(doc["schema_version"], 1);
  EXPECT_EQ(doc["topology"], "triangular");
  for (const char* key : {"c_natural", "c_base2", "r2"}) EXPECT_TRUE(doc[key].is_number()) << key;
  const auto natural = fit_runtime(records, LogBase::natural);
  EXPECT_NEAR(doc["c_natural"].get<double>(), natural.c, 1e-11);
  EXPECT_NEAR(doc["fits"]["base10"]["c"].get<double>(),
              fit_runtime(records, LogBase::base10).c, 1e-11);
}

TEST(ScalingSummary, NullFitsWithTooFewPeaks) {
  const std::vector<ScalingRecord> records{
      {1024, 75, 0.97, true}, {2304, 119, 0.98, false}, {4096, 162, 0.988, true}};
  const auto doc = nlohmann::json::parse(scaling_summary_json(Topology::triangular, records));
  EXPECT_TRUE(doc["fits"].is_null());
  EXPECT_TRUE(doc["c_natural"].is_null());
}

}  // namespace
}  // namespace lqw::io
