#include "cli.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "lqw/experiments.hpp"

namespace lqw::cli {

namespace {

template <typename T>
T parse_number(const std::string& text, const std::string& flag) {
  T value{};
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw ConfigError(fmt::format("{}: cannot parse '{}' as a number", flag, text));
  }
  if constexpr (std::is_floating_point_v<T>) {
    if (!std::isfinite(value)) throw ConfigError(fmt::format("{}: '{}' is not finite", flag, text));
  }
  return value;
}

std::vector<int> parse_sizes(const std::string& text) {
  std::vector<int> sizes;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    if (!item.empty()) sizes.push_back(parse_number<int>(item, "--sizes"));
  }
  return sizes;
}

/// Writes to `fallback` when path is "-", otherwise to a freshly truncated file.
void emit(const std::string& path, std::ostream& fallback,
          const std::function<void(std::ostream&)>& writer) {
  if (path == "-") {
    writer(fallback);
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw ConfigError(fmt::format("cannot open output file '{}'", path));
  writer(file);
  if (!file) throw ConfigError(fmt::format("failed writing output file '{}'", path));
}

/// Human-readable summary goes to stdout unless stdout already carries the data.
std::ostream& summary_stream(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return config.out == "-" ? err : out;
}

template <typename Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const std::invalid_argument& e) {  // ConfigError, GridError, validation
    err << "error: " << e.what() << '\n';
    return kInvalidConfig;
  }
}

}  // namespace

std::optional<double> parse_auto_real(const std::string& text, const std::string& flag) {
  if (text == "auto") return std::nullopt;
  return parse_number<double>(text, flag);
}

std::optional<long> parse_auto_integer(const std::string& text, const std::string& flag) {
  if (text == "auto") return std::nullopt;
  return parse_number<long>(text, flag);
}

VertexCoord parse_vertex(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) {
    throw ConfigError(fmt::format("--marked: expected 'x,y', got '{}'", text));
  }
  return {parse_number<int>(text.substr(0, comma), "--marked"),
          parse_number<int>(text.substr(comma + 1), "--marked")};
}

WalkParams resolve_params(const RunConfig& config) {
  WalkParams params;
  params.grid = GridSpec{config.topology, config.width, config.height};
  validate(params.grid);
  params.loop_weight = config.loop_weight.value_or(degree_rule_weight(params.grid));
  params.marked = config.marked.empty() ? std::vector{default_marked(params.grid)} : config.marked;
  validate(params);
  return params;
}

long resolve_steps(const RunConfig& config, const GridSpec& grid) {
  const long steps = config.steps.value_or(default_horizon(grid.vertex_count()));
  if (steps < 0) throw ConfigError(fmt::format("--steps must be non-negative, got {}", steps));
  return steps;
}

std::vector<double> resolve_loop_grid(const RunConfig& config, const GridSpec& grid) {
  const double rule = degree_rule_weight(grid);
  const double lo = config.l_min.value_or(rule / 10.0);
  const double hi = config.l_max.value_or(rule * 10.0);
  if (config.l_points < 1) throw ConfigError("--l-points must be at least 1");
  if (!(lo > 0.0) || hi < lo || (config.l_points > 1 && hi == lo)) {
    throw ConfigError(fmt::format("loop weight range needs 0 < l-min < l-max, got [{}, {}]", lo, hi));
  }
  return geometric_grid(lo, hi, config.l_points);
}

int cmd_run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto params = resolve_params(config);
    const long steps = resolve_steps(config, params.grid);
    const auto series = run_curve(params, steps);

    std::optional<PeakResult> peak;
    std::string failure;
    try {
      peak = find_first_peak(series);
    } catch (const NoPeakError& e) {
      failure = e.what();
    }
    emit(config.out, out, [&](std::ostream& os) {
      io::write_time_series(os, series, params, peak, config.format);
    });

    auto& info = summary_stream(config, out, err);
    info << fmt::format("{} l={} marked=({},{}) steps={}\n", describe(params.grid),
                        io::format_number(params.loop_weight), params.marked.front().x,
                        params.marked.front().y, steps);
    if (!peak) {
      info << failure << '\n';
      return static_cast<int>(kNoPeak);
    }
    info << fmt::format("t_peak={} p_peak={}\n", peak->t_peak, io::format_number(peak->p_peak));
    return static_cast<int>(kOk);
  });
}

int cmd_sweep_loop(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto params = resolve_params(config);
    const auto weights = resolve_loop_grid(config, params.grid);
    ExecutionOptions options{config.threads, 0};
    if (config.steps) {
      if (*config.steps < 1) throw ConfigError("--steps must be at least 1 for a sweep");
      options.horizon = *config.steps;
    }
    const auto records = sweep_loop_weight(params.grid, params.marked, weights, options);
    emit(config.out, out, [&](std::ostream& os) {
      io::write_sweep(os, records, params.grid, params.marked, config.format);
    });

    auto& info = summary_stream(config, out, err);
    const auto best = best_loop_weight(records);
    const double rule = degree_rule_weight(params.grid);
    if (best) {
      info << fmt::format("{}: argmax l={} (= {} x degree/N) t_peak={} p_peak={}\n",
                          describe(params.grid), io::format_number(best->loop_weight),
                          io::format_number(best->loop_weight / rule), best->t_peak,
                          io::format_number(best->p_peak));
    } else {
      info << fmt::format("{}: no swept weight produced a peak\n", describe(params.grid));
    }
    for (const auto& r : records) {
      if (!r.peak_found) {
        info << fmt::format("no peak within horizon for l={}\n", io::format_number(r.loop_weight));
      }
    }
    const bool all_found =
        std::all_of(records.begin(), records.end(), [](const auto& r) { return r.peak_found; });
    return static_cast<int>(all_found ? kOk : kNoPeak);
  });
}

int cmd_scaling(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (config.sizes.size() < 3) {
      throw ConfigError(fmt::format("runtime fit needs at least 3 sizes, got {}", config.sizes.size()));
    }
    ExecutionOptions options{config.threads, 0};
    if (config.steps) {
      if (*config.steps < 1) throw ConfigError("--steps must be at least 1 for a scaling study");
      options.horizon = *config.steps;
    }
    const auto records = scaling_study(config.topology, config.sizes, options);
    emit(config.out, out, [&](std::ostream& os) {
      io::write_scaling(os, records, config.topology, config.format);
    });
    const auto summary = io::scaling_summary_json(config.topology, records);
    if (!config.summary.empty()) {
      emit(config.summary, out, [&](std::ostream& os) { os << summary << '\n'; });
    }
    summary_stream(config, out, err) << summary << '\n';
    const bool all_found =
        std::all_of(records.begin(), records.end(), [](const auto& r) { return r.peak_found; });
    return static_cast<int>(all_found ? kOk : kNoPeak);
  });
}

int cmd_verify(std::ostream& out, const verify::Stepper& stepper) {
  const auto results = verify::run_suite(stepper);
  bool all = true;
  for (const auto& r : results) {
    all = all && r.passed;
    out << fmt::format("[{}] {:<58} deviation={:.3e} tolerance={:.0e}\n", r.passed ? "PASS" : "FAIL",
                       r.name, r.deviation, r.tolerance);
  }
  out << fmt::format("{} of {} checks passed\n",
                     std::count_if(results.begin(), results.end(), [](const auto& r) { return r.passed; }),
                     results.size());
  return all ? kOk : kVerificationFailed;
}

int run_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Lackadaisical quantum walk search simulator"};
  app.require_subcommand(1);

  struct Flags {
    std::string topology = "triangular";
    int width = 16;
    int height = 16;
    std::string loop_weight = "auto";
    std::vector<std::string> marked;
    std::string steps = "auto";
    std::string sizes = "32,48,64,96,128";
    std::string l_min = "auto";
    std::string l_max = "auto";
    int l_points = 25;
    std::string out = "-";
    std::string summary;
    std::string format = "csv";
    unsigned threads = 0;
  } flags;

  auto add_grid_flags = [&](CLI::App* cmd) {
    cmd->add_option("--topology", flags.topology, "rectangular | triangular | honeycomb")
        ->capture_default_str();
    cmd->add_option("--width", flags.width, "Grid width")->capture_default_str();
    cmd->add_option("--height", flags.height, "Grid height")->capture_default_str();
  };
  auto add_marked_flag = [&](CLI::App* cmd) {
    cmd->add_option("--marked", flags.marked, "Marked vertex x,y (default: grid centre)");
  };
  auto add_common_flags = [&](CLI::App* cmd, const char* steps_help) {
    cmd->add_option("--steps", flags.steps, steps_help)->capture_default_str();
    cmd->add_option("--out", flags.out, "Output file, '-' for stdout")->capture_default_str();
    cmd->add_option("--format", flags.format, "csv | json")->capture_default_str();
    cmd->add_option("--threads", flags.threads, "Worker threads, 0 = all cores")
        ->capture_default_str();
  };

  auto* run = app.add_subcommand("run", "Success probability and overlap for every step");
  add_grid_flags(run);
  add_marked_flag(run);
  run->add_option("--loop-weight", flags.loop_weight, "Self-loop weight l, 'auto' = degree/N")
      ->capture_default_str();
  add_common_flags(run, "Steps to simulate, 'auto' = ceil(3 sqrt(N ln N))");

  auto* sweep = app.add_subcommand("sweep-loop", "First-peak probability across self-loop weights");
  add_grid_flags(sweep);
  add_marked_flag(sweep);
  sweep->add_option("--l-min", flags.l_min, "Smallest weight, 'auto' = degree/(10N)")
      ->capture_default_str();
  sweep->add_option("--l-max", flags.l_max, "Largest weight, 'auto' = 10 degree/N")
      ->capture_default_str();
  sweep->add_option("--l-points", flags.l_points, "Geometrically spaced weights")
      ->capture_default_str();
  add_common_flags(sweep, "Horizon per weight, 'auto' = ceil(3 sqrt(N ln N))");

  auto* scaling = app.add_subcommand("scaling", "First peak across square sizes with l = degree/N");
  scaling->add_option("--topology", flags.topology, "rectangular | triangular | honeycomb")
      ->capture_default_str();
  scaling->add_option("--sizes", flags.sizes, "Comma-separated side lengths")->capture_default_str();
  scaling->add_option("--summary", flags.summary, "Also write the JSON fit summary here");
  add_common_flags(scaling, "Horizon per size, 'auto' = ceil(3 sqrt(N ln N))");

  auto* verify_cmd = app.add_subcommand("verify", "Dense-oracle, unitarity and involution checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kInvalidConfig;
  }

  if (verify_cmd->parsed()) return cmd_verify(out);

  RunConfig config;
  try {
    config.topology = parse_topology(flags.topology);
    config.width = flags.width;
    config.height = flags.height;
    config.loop_weight = parse_auto_real(flags.loop_weight, "--loop-weight");
    for (const auto& m : flags.marked) config.marked.push_back(parse_vertex(m));
    config.steps = parse_auto_integer(flags.steps, "--steps");
    config.sizes = parse_sizes(flags.sizes);
    config.l_min = parse_auto_real(flags.l_min, "--l-min");
    config.l_max = parse_auto_real(flags.l_max, "--l-max");
    config.l_points = flags.l_points;
    config.out = flags.out;
    config.summary = flags.summary;
    config.format = io::parse_format(flags.format);
    config.threads = flags.threads;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidConfig;
  }

  if (run->parsed()) {
    config.subcommand = "run";
    return cmd_run(config, out, err);
  }
  if (sweep->parsed()) {
    config.subcommand = "sweep-loop";
    return cmd_sweep_loop(config, out, err);
  }
  config.subcommand = "scaling";
  return cmd_scaling(config, out, err);
}

}  // namespace lqw::cli
