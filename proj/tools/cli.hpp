#pragma once

#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "lqw/io.hpp"
#include "lqw/verify.hpp"

namespace lqw::cli {

enum ExitCode : int {
  kOk = 0,
  kVerificationFailed = 1,
  kInvalidConfig = 2,
  kNoPeak = 3,
};

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Parsed command line. std::nullopt stands for the "auto" token.
struct RunConfig {
  std::string subcommand;
  Topology topology = Topology::triangular;
  int width = 16;
  int height = 16;
  std::optional<double> loop_weight;  // auto: degree / N
  std::vector<VertexCoord> marked;    // empty: grid centre
  std::optional<long> steps;          // auto: ceil(3 sqrt(N ln N))
  std::vector<int> sizes{32, 48, 64, 96, 128};
  std::optional<double> l_min;  // auto: degree / (10 N)
  std::optional<double> l_max;  // auto: 10 degree / N
  int l_points = 25;
  std::string out = "-";
  std::string summary;
  io::OutputFormat format = io::OutputFormat::csv;
  unsigned threads = 0;
};

/// "auto" -> nullopt, otherwise a finite number. Throws ConfigError.
std::optional<double> parse_auto_real(const std::string& text, const std::string& flag);
std::optional<long> parse_auto_integer(const std::string& text, const std::string& flag);
/// "x,y" -> VertexCoord. Throws ConfigError.
VertexCoord parse_vertex(const std::string& text);

/// Grid, loop weight and marks with auto tokens resolved; validated.
WalkParams resolve_params(const RunConfig& config);
long resolve_steps(const RunConfig& config, const GridSpec& grid);
std::vector<double> resolve_loop_grid(const RunConfig& config, const GridSpec& grid);

int cmd_run(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_sweep_loop(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_scaling(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_verify(std::ostream& out, const verify::Stepper& stepper = verify::engine_stepper());

/// Full command-line entry point; returns the process exit code.
int run_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace lqw::cli
