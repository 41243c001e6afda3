#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "lqw/walk.hpp"

namespace lqw {

struct TimeSeriesRecord {
  long t = 0;
  double success_probability = 0.0;
  double overlap_abs = 0.0;
};

/// Success probability and |<psi(0)|psi(t)>| after each step, starting at t = 0.
struct TimeSeries {
  std::vector<TimeSeriesRecord> records;

  [[nodiscard]] std::size_t size() const noexcept { return records.size(); }
  [[nodiscard]] const TimeSeriesRecord& operator[](std::size_t i) const { return records[i]; }
};

struct PeakResult {
  long t_peak = 0;
  double p_peak = 0.0;
};

class NoPeakError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Default simulation horizon ceil(3 sqrt(N ln N)).
long default_horizon(std::size_t vertex_count);

/// degree / N, the self-loop weight that maximises the first-peak probability.
double degree_rule_weight(const GridSpec& grid);

/// Centre vertex (floor(w/2), floor(h/2)); any vertex is equivalent on a torus.
VertexCoord default_marked(const GridSpec& grid);

/// Records t = 0..t_max.
TimeSeries run_curve(const WalkParams& params, long t_max);

/// Fraction of its height a candidate peak must lose before the series
/// exceeds it again. Filters the period-2 ripple riding on the main oscillation.
inline constexpr double kPeakDropFraction = 0.5;

/// First peak of the success probability: the smallest t with
///   p(t) >= p(t-1), p(t) >= p(t+1), p(t) > 10 p(0),
/// after which p falls to at most p(t) * (1 - kPeakDropFraction) before ever
/// exceeding p(t). Throws NoPeakError if no step qualifies within the series.
PeakResult find_first_peak(const TimeSeries& series);

struct LoopSweepRecord {
  double loop_weight = 0.0;
  long t_peak = 0;
  double p_peak = 0.0;
  /// False when no peak qualified: t_peak is the horizon and p_peak the max observed.
  bool peak_found = true;
};

struct ExecutionOptions {
  /// Worker threads for independent parameter points; 0 = hardware concurrency.
  unsigned threads = 0;
  /// Steps per run; 0 = default_horizon(N).
  long horizon = 0;
};

/// `count` geometrically spaced points on [lo, hi] (count == 1 yields lo).
std::vector<double> geometric_grid(double lo, double hi, int count);

/// 25 points spanning [degree/(10N), 10 degree/N].
std::vector<double> default_loop_grid(const GridSpec& grid);

/// One record per weight, in the order given. Weights must be strictly increasing.
std::vector<LoopSweepRecord> sweep_loop_weight(const GridSpec& grid,
                                               std::span<const VertexCoord> marked,
                                               std::span<const double> loop_weights,
                                               const ExecutionOptions& options = {});

/// Weight with the largest p_peak among records that found a peak.
std::optional<LoopSweepRecord> best_loop_weight(std::span<const LoopSweepRecord> records);

struct ScalingRecord {
  std::size_t vertex_count = 0;
  long t_peak = 0;
  double p_peak = 0.0;
  bool peak_found = true;
};

/// Square side x side grids with l = degree/N and the default marked vertex.
std::vector<ScalingRecord> scaling_study(Topology topology, std::span<const int> sides,
                                         const ExecutionOptions& options = {});

enum class LogBase { natural, base2, base10 };

std::string_view to_string(LogBase base) noexcept;

struct FitResult {
  double c = 0.0;
  double r2 = 0.0;
  LogBase log_base = LogBase::natural;
};

/// One (N, T) observation for the runtime fit.
struct RuntimeSample {
  double vertex_count = 0.0;
  double steps = 0.0;
};

/// Least squares through the origin of T = c sqrt(N log N):
///   c = sum(T x) / sum(x^2), x = sqrt(N log_b N),
///   r2 = 1 - sum((T - c x)^2) / sum((T - mean T)^2).
/// Throws std::invalid_argument with fewer than 3 records.
FitResult fit_runtime(std::span<const RuntimeSample> samples, LogBase base);
FitResult fit_runtime(std::span<const ScalingRecord> records, LogBase base);

/// Runs `task(i)` for i in [0, count) on up to `threads` workers.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& task);

}  // namespace lqw
