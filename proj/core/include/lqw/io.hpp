#pragma once

#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>

#include "lqw/experiments.hpp"

namespace lqw::io {

inline constexpr int kSchemaVersion = 1;

enum class OutputFormat { csv, json };

std::string_view to_string(OutputFormat format) noexcept;
/// Throws std::invalid_argument for anything but "csv" or "json".
OutputFormat parse_format(std::string_view name);

/// 12 significant digits, shortest form ("%.12g").
std::string format_number(double value);

/// CSV header `t,success_probability,overlap_abs`, or a JSON document carrying
/// the run parameters, the records and the detected peak (null if none).
void write_time_series(std::ostream& out, const TimeSeries& series, const WalkParams& params,
                       const std::optional<PeakResult>& peak, OutputFormat format);

/// CSV header `l,t_peak,p_peak`.
void write_sweep(std::ostream& out, std::span<const LoopSweepRecord> records,
                 const GridSpec& grid, std::span<const VertexCoord> marked, OutputFormat format);

/// CSV header `N,t_peak,p_peak`.
void write_scaling(std::ostream& out, std::span<const ScalingRecord> records, Topology topology,
                   OutputFormat format);

/// JSON summary of a scaling study: records, fits for natural, base-2 and base-10
/// logs, plus the flat keys c_natural, c_base2 and r2. Fits use only sizes where
/// a peak was found and are null when fewer than 3 remain.
std::string scaling_summary_json(Topology topology, std::span<const ScalingRecord> records);

}  // namespace lqw::io
