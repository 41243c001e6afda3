#include "lqw/io.hpp"

#include <cstdlib>
#include <stdexcept>
#include <vector>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

namespace lqw::io {

namespace {

using nlohmann::ordered_json;

// Round-trips through the 12-digit text form so JSON and CSV agree.
double rounded(double value) { return std::strtod(format_number(value).c_str(), nullptr); }

ordered_json marked_json(std::span<const VertexCoord> marked) {
  auto out = ordered_json::array();
  for (const auto& v : marked) out.push_back({v.x, v.y});
  return out;
}

ordered_json grid_json(const GridSpec& grid) {
  return {{"topology", std::string(to_string(grid.topology))},
          {"width", grid.width},
          {"height", grid.height},
          {"degree", grid.degree()}};
}

}  // namespace

std::string_view to_string(OutputFormat format) noexcept {
  return format == OutputFormat::csv ? "csv" : "json";
}

OutputFormat parse_format(std::string_view name) {
  if (name == "csv") return OutputFormat::csv;
  if (name == "json") return OutputFormat::json;
  throw std::invalid_argument(fmt::format("unknown output format '{}' (expected csv or json)", name));
}

std::string format_number(double value) { return fmt::format("{:.12g}", value); }

void write_time_series(std::ostream& out, const TimeSeries& series, const WalkParams& params,
                       const std::optional<PeakResult>& peak, OutputFormat format) {
  if (format == OutputFormat::csv) {
    out << "t,success_probability,overlap_abs\n";
    for (const auto& r : series.records) {
      out << r.t << ',' << format_number(r.success_probability) << ','
          << format_number(r.overlap_abs) << '\n';
    }
    return;
  }
  ordered_json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["kind"] = "time_series";
  doc["grid"] = grid_json(params.grid);
  doc["loop_weight"] = rounded(params.loop_weight);
  doc["marked"] = marked_json(params.marked);
  doc["steps"] = series.records.empty() ? 0 : series.records.back().t;
  auto records = ordered_json::array();
  for (const auto& r : series.records) {
    records.push_back({{"t", r.t},
                       {"success_probability", rounded(r.success_probability)},
                       {"overlap_abs", rounded(r.overlap_abs)}});
  }
  doc["records"] = std::move(records);
  doc["peak"] = peak ? ordered_json{{"t_peak", peak->t_peak}, {"p_peak", rounded(peak->p_peak)}}
                     : ordered_json(nullptr);
  out << doc.dump(2) << '\n';
}

void write_sweep(std::ostream& out, std::span<const LoopSweepRecord> records,
                 const GridSpec& grid, std::span<const VertexCoord> marked, OutputFormat format) {
  if (format == OutputFormat::csv) {
    out << "l,t_peak,p_peak\n";
    for (const auto& r : records) {
      out << format_number(r.loop_weight) << ',' << r.t_peak << ',' << format_number(r.p_peak)
          << '\n';
    }
    return;
  }
  ordered_json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["kind"] = "loop_sweep";
  doc["grid"] = grid_json(grid);
  doc["marked"] = marked_json(marked);
  auto rows = ordered_json::array();
  for (const auto& r : records) {
    rows.push_back({{"l", rounded(r.loop_weight)},
                    {"t_peak", r.t_peak},
                    {"p_peak", rounded(r.p_peak)},
                    {"peak_found", r.peak_found}});
  }
  doc["records"] = std::move(rows);
  const auto best = best_loop_weight(records);
  doc["argmax_l"] = best ? ordered_json(rounded(best->loop_weight)) : ordered_json(nullptr);
  out << doc.dump(2) << '\n';
}

void write_scaling(std::ostream& out, std::span<const ScalingRecord> records, Topology topology,
                   OutputFormat format) {
  if (format == OutputFormat::csv) {
    out << "N,t_peak,p_peak\n";
    for (const auto& r : records) {
      out << r.vertex_count << ',' << r.t_peak << ',' << format_number(r.p_peak) << '\n';
    }
    return;
  }
  out << scaling_summary_json(topology, records) << '\n';
}

std::string scaling_summary_json(Topology topology, std::span<const ScalingRecord> records) {
  ordered_json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["kind"] = "scaling";
  doc["topology"] = std::string(to_string(topology));
  doc["loop_rule"] = "degree/N";
  auto rows = ordered_json::array();
  std::vector<ScalingRecord> usable;
  for (const auto& r : records) {
    rows.push_back({{"N", r.vertex_count},
                    {"t_peak", r.t_peak},
                    {"p_peak", rounded(r.p_peak)},
                    {"peak_found", r.peak_found}});
    if (r.peak_found) usable.push_back(r);
  }
  doc["records"] = std::move(rows);

  if (usable.size() >= 3) {
    ordered_json fits;
    for (auto base : {LogBase::natural, LogBase::base2, LogBase::base10}) {
      const auto fit = fit_runtime(usable, base);
      fits[std::string(to_string(base))] = {{"c", rounded(fit.c)}, {"r2", rounded(fit.r2)}};
    }
    doc["c_natural"] = fits["natural"]["c"];
    doc["c_base2"] = fits["base2"]["c"];
    doc["r2"] = fits["natural"]["r2"];
    doc["fits"] = std::move(fits);
  } else {
    doc["c_natural"] = nullptr;
    doc["c_base2"] = nullptr;
    doc["r2"] = nullptr;
    doc["fits"] = nullptr;
  }
  return doc.dump(2);
}

}  // namespace lqw::io
