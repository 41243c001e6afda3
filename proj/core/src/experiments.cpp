#include "lqw/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include <fmt/format.h>

namespace lqw {

long default_horizon(std::size_t vertex_count) {
  const auto n = static_cast<double>(vertex_count);
  return static_cast<long>(std::ceil(3.0 * std::sqrt(n * std::log(n))));
}

double degree_rule_weight(const GridSpec& grid) {
  return static_cast<double>(grid.degree()) / static_cast<double>(grid.vertex_count());
}

VertexCoord default_marked(const GridSpec& grid) { return {grid.width / 2, grid.height / 2}; }

TimeSeries run_curve(const WalkParams& params, long t_max) {
  if (t_max < 0) throw std::invalid_argument("t_max must be non-negative");
  Walker walker(params);
  TimeSeries series;
  series.records.reserve(static_cast<std::size_t>(t_max) + 1);
  series.records.push_back({0, walker.success_probability(), std::abs(walker.overlap_initial())});
  for (long t = 1; t <= t_max; ++t) {
    walker.step();
    series.records.push_back({t, walker.success_probability(), std::abs(walker.overlap_initial())});
  }
  return series;
}

PeakResult find_first_peak(const TimeSeries& series) {
  const auto& r = series.records;
  if (r.size() < 3) throw NoPeakError("no peak found within horizon (series too short)");
  const double threshold = 10.0 * r.front().success_probability;
  for (std::size_t t = 1; t + 1 < r.size(); ++t) {
    const double p = r[t].success_probability;
    if (p < r[t - 1].success_probability || p < r[t + 1].success_probability || p <= threshold) {
      continue;
    }
    const double floor = p * (1.0 - kPeakDropFraction);
    for (std::size_t u = t + 1; u < r.size(); ++u) {
      const double q = r[u].success_probability;
      if (q > p) break;
      if (q <= floor) return {r[t].t, p};
    }
  }
  throw NoPeakError(fmt::format("no peak found within horizon of {} steps", r.back().t));
}

std::vector<double> geometric_grid(double lo, double hi, int count) {
  if (count < 1) throw std::invalid_argument("grid needs at least one point");
  if (!(lo > 0.0) || !(hi >= lo)) {
    throw std::invalid_argument(fmt::format("geometric grid needs 0 < lo <= hi, got [{}, {}]", lo, hi));
  }
  if (count == 1) return {lo};
  if (hi == lo) throw std::invalid_argument("geometric grid with several points needs lo < hi");
  std::vector<double> out(static_cast<std::size_t>(count));
  const double ratio = std::log(hi / lo);
  for (int i = 0; i < count; ++i) out[i] = lo * std::exp(ratio * i / (count - 1));
  out.back() = hi;
  return out;
}

std::vector<double> default_loop_grid(const GridSpec& grid) {
  const double rule = degree_rule_weight(grid);
  return geometric_grid(rule / 10.0, rule * 10.0, 25);
}

void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& task) {
  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> workers;
    workers.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) {
      workers.emplace_back([&] {
        for (std::size_t i = next++; i < count; i = next++) {
          try {
            task(i);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

namespace {

struct PeakOutcome {
  long t_peak;
  double p_peak;
  bool found;
};

PeakOutcome peak_or_max(const TimeSeries& series) {
  try {
    const auto peak = find_first_peak(series);
    return {peak.t_peak, peak.p_peak, true};
  } catch (const NoPeakError&) {
    double best = 0.0;
    for (const auto& rec : series.records) best = std::max(best, rec.success_probability);
    return {series.records.back().t, best, false};
  }
}

}  // namespace

std::vector<LoopSweepRecord> sweep_loop_weight(const GridSpec& grid,
                                               std::span<const VertexCoord> marked,
                                               std::span<const double> loop_weights,
                                               const ExecutionOptions& options) {
  validate(grid);
  for (std::size_t i = 1; i < loop_weights.size(); ++i) {
    if (!(loop_weights[i] > loop_weights[i - 1])) {
      throw std::invalid_argument("loop weights must be strictly increasing");
    }
  }
  const long horizon = options.horizon > 0 ? options.horizon : default_horizon(grid.vertex_count());
  std::vector<LoopSweepRecord> out(loop_weights.size());
  parallel_for(loop_weights.size(), options.threads, [&](std::size_t i) {
    WalkParams params{grid, loop_weights[i], {marked.begin(), marked.end()}};
    const auto outcome = peak_or_max(run_curve(params, horizon));
    out[i] = {loop_weights[i], outcome.t_peak, outcome.p_peak, outcome.found};
  });
  return out;
}

std::optional<LoopSweepRecord> best_loop_weight(std::span<const LoopSweepRecord> records) {
  std::optional<LoopSweepRecord> best;
  for (const auto& r : records) {
    if (r.peak_found && (!best || r.p_peak > best->p_peak)) best = r;
  }
  return best;
}

std::vector<ScalingRecord> scaling_study(Topology topology, std::span<const int> sides,
                                         const ExecutionOptions& options) {
  std::vector<GridSpec> grids;
  for (int side : sides) {
    GridSpec grid{topology, side, side};
    validate(grid);
    grids.push_back(grid);
  }
  std::vector<ScalingRecord> out(grids.size());
  parallel_for(grids.size(), options.threads, [&](std::size_t i) {
    const auto& grid = grids[i];
    const long horizon =
        options.horizon > 0 ? options.horizon : default_horizon(grid.vertex_count());
    WalkParams params{grid, degree_rule_weight(grid), {default_marked(grid)}};
    const auto outcome = peak_or_max(run_curve(params, horizon));
    out[i] = {grid.vertex_count(), outcome.t_peak, outcome.p_peak, outcome.found};
  });
  return out;
}

std::string_view to_string(LogBase base) noexcept {
  switch (base) {
    case LogBase::natural: return "natural";
    case LogBase::base2: return "base2";
    case LogBase::base10: return "base10";
  }
  return "unknown";
}

FitResult fit_runtime(std::span<const RuntimeSample> samples, LogBase base) {
  if (samples.size() < 3) {
    throw std::invalid_argument(
        fmt::format("runtime fit needs at least 3 sizes, got {}", samples.size()));
  }
  auto scale = [base](double n) {
    double log_n = std::log(n);
    if (base == LogBase::base2) log_n = std::log2(n);
    if (base == LogBase::base10) log_n = std::log10(n);
    return std::sqrt(n * log_n);
  };
  double sxy = 0.0;
  double sxx = 0.0;
  double mean_t = 0.0;
  for (const auto& s : samples) {
    const double x = scale(s.vertex_count);
    sxy += s.steps * x;
    sxx += x * x;
    mean_t += s.steps;
  }
  mean_t /= static_cast<double>(samples.size());
  const double c = sxy / sxx;

  double ss_res = 0.0;
  double ss_tot = 0.0;
  for (const auto& s : samples) {
    ss_res += std::pow(s.steps - c * scale(s.vertex_count), 2);
    ss_tot += std::pow(s.steps - mean_t, 2);
  }
  const double r2 = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : (ss_res == 0.0 ? 1.0 : 0.0);
  return {c, r2, base};
}

FitResult fit_runtime(std::span<const ScalingRecord> records, LogBase base) {
  std::vector<RuntimeSample> samples;
  samples.reserve(records.size());
  for (const auto& r : records) {
    samples.push_back({static_cast<double>(r.vertex_count), static_cast<double>(r.t_peak)});
  }
  return fit_runtime(samples, base);
}

}  // namespace lqw
