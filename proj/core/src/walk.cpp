#include "lqw/walk.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <utility>

#include <fmt/format.h>

namespace lqw {

namespace {

// a <- 2 s (s^T a) - a with s = (1, ..., 1, sqrt(l)) / sqrt(d + l).
// Written as w = sum(edges) + sqrt(l) a_loop, f = 2 w / (d + l).
inline void reflect_vertex(std::span<Amplitude> a, int d, double sqrt_l, double two_over_norm) {
  Amplitude w{0.0, 0.0};
  for (int i = 0; i < d; ++i) w += a[i];
  w += sqrt_l * a[d];
  const Amplitude f = two_over_norm * w;
  for (int i = 0; i < d; ++i) a[i] = f - a[i];
  a[d] = sqrt_l * f - a[d];
}

std::vector<std::size_t> marked_indices(const GridSpec& grid, std::span<const VertexCoord> marked) {
  std::vector<std::size_t> out;
  out.reserve(marked.size());
  for (const auto& v : marked) out.push_back(grid.vertex_index(v));
  return out;
}

}  // namespace

void validate(const WalkParams& params) {
  validate(params.grid);
  if (!std::isfinite(params.loop_weight) || params.loop_weight < 0.0) {
    throw std::invalid_argument(
        fmt::format("loop weight must be finite and non-negative, got {}", params.loop_weight));
  }
  std::set<VertexCoord> seen;
  for (const auto& v : params.marked) {
    if (!params.grid.contains(v)) {
      throw std::invalid_argument(fmt::format("marked vertex ({},{}) lies outside the {} grid", v.x,
                                              v.y, describe(params.grid)));
    }
    if (!seen.insert(v).second) {
      throw std::invalid_argument(fmt::format("marked vertex ({},{}) listed twice", v.x, v.y));
    }
  }
}

CoinVector::CoinVector(int degree, double loop_weight)
    : degree_(degree),
      loop_weight_(loop_weight),
      edge_(1.0 / std::sqrt(degree + loop_weight)),
      loop_(std::sqrt(loop_weight) / std::sqrt(degree + loop_weight)) {}

WalkState::WalkState(GridSpec grid) : grid_(grid), amplitudes_(grid.dimension()) {}

WalkState::WalkState(GridSpec grid, std::vector<Amplitude> amplitudes)
    : grid_(grid), amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() != grid_.dimension()) {
    throw std::invalid_argument(fmt::format("state has {} amplitudes, {} grid needs {}",
                                            amplitudes_.size(), describe(grid_),
                                            grid_.dimension()));
  }
}

std::span<Amplitude> WalkState::vertex(std::size_t index) noexcept {
  const auto d1 = static_cast<std::size_t>(grid_.slots());
  return std::span<Amplitude>(amplitudes_).subspan(index * d1, d1);
}

std::span<const Amplitude> WalkState::vertex(std::size_t index) const noexcept {
  const auto d1 = static_cast<std::size_t>(grid_.slots());
  return std::span<const Amplitude>(amplitudes_).subspan(index * d1, d1);
}

double WalkState::norm_squared() const noexcept {
  double sum = 0.0;
  for (const auto& a : amplitudes_) sum += std::norm(a);
  return sum;
}

void WalkState::swap(WalkState& other) noexcept {
  std::swap(grid_, other.grid_);
  amplitudes_.swap(other.amplitudes_);
}

double max_abs_difference(std::span<const Amplitude> a, std::span<const Amplitude> b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument(
        fmt::format("cannot compare states of length {} and {}", a.size(), b.size()));
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

WalkState initial_state(const WalkParams& params) {
  const auto& grid = params.grid;
  const CoinVector coin(grid.degree(), params.loop_weight);
  const double scale = 1.0 / std::sqrt(static_cast<double>(grid.vertex_count()));
  WalkState state(grid);
  for (std::size_t v = 0; v < grid.vertex_count(); ++v) {
    auto a = state.vertex(v);
    for (int s = 0; s < grid.slots(); ++s) a[s] = coin[s] * scale;
  }
  return state;
}

void apply_oracle(WalkState& state, std::span<const VertexCoord> marked) {
  for (const auto& v : marked) {
    for (auto& a : state.vertex(state.grid().vertex_index(v))) a = -a;
  }
}

void apply_coin(WalkState& state, const CoinVector& coin) {
  const auto& grid = state.grid();
  if (coin.degree() != grid.degree()) {
    throw std::invalid_argument(fmt::format("coin of degree {} applied to {} grid", coin.degree(),
                                            describe(grid)));
  }
  const int d = grid.degree();
  const double sqrt_l = std::sqrt(coin.loop_weight());
  const double two_over_norm = 2.0 / (d + coin.loop_weight());
  for (std::size_t v = 0; v < grid.vertex_count(); ++v) {
    reflect_vertex(state.vertex(v), d, sqrt_l, two_over_norm);
  }
}

ShiftTable::ShiftTable(const GridSpec& grid) : grid_(grid), dest_(grid.dimension()) {
  for (std::size_t v = 0; v < grid.vertex_count(); ++v) {
    const auto coord = grid.vertex_at(v);
    for (int s = 0; s < grid.slots(); ++s) {
      const auto target = resolve_shift(grid, coord, CoinSlot{s});
      dest_[grid.amplitude_index(coord, CoinSlot{s})] =
          grid.amplitude_index(target.vertex, target.slot);
    }
  }
}

void ShiftTable::apply(std::span<const Amplitude> in, std::span<Amplitude> out) const {
  if (in.size() != dest_.size() || out.size() != dest_.size()) {
    throw std::invalid_argument("shift buffers do not match the grid dimension");
  }
  for (std::size_t i = 0; i < dest_.size(); ++i) out[dest_[i]] = in[i];
}

void apply_shift(WalkState& state, const ShiftTable& table) {
  if (!(table.grid() == state.grid())) {
    throw std::invalid_argument("shift table built for a different grid");
  }
  WalkState out(state.grid());
  table.apply(state.amplitudes(), out.amplitudes());
  state.swap(out);
}

void apply_shift(WalkState& state) { apply_shift(state, ShiftTable(state.grid())); }

void step(WalkState& state, const WalkParams& params) {
  apply_oracle(state, params.marked);
  apply_coin(state, CoinVector(params.grid.degree(), params.loop_weight));
  apply_shift(state);
}

double success_probability(const WalkState& state, std::span<const VertexCoord> marked) {
  double p = 0.0;
  for (const auto& v : marked) {
    for (const auto& a : state.vertex(state.grid().vertex_index(v))) p += std::norm(a);
  }
  return p;
}

Amplitude overlap_initial(const WalkState& state, const WalkParams& params) {
  const auto& grid = state.grid();
  const CoinVector coin(grid.degree(), params.loop_weight);
  const int d = grid.degree();
  Amplitude edges{0.0, 0.0};
  Amplitude loops{0.0, 0.0};
  for (std::size_t v = 0; v < grid.vertex_count(); ++v) {
    const auto a = state.vertex(v);
    for (int s = 0; s < d; ++s) edges += a[s];
    loops += a[d];
  }
  const double scale = 1.0 / std::sqrt(static_cast<double>(grid.vertex_count()));
  return scale * (coin.edge() * edges + coin.loop() * loops);
}

Walker::Walker(WalkParams params)
    : params_((validate(params), std::move(params))),
      coin_(params_.grid.degree(), params_.loop_weight),
      shift_(params_.grid),
      marked_index_(marked_indices(params_.grid, params_.marked)),
      state_(initial_state(params_)),
      scratch_(params_.grid) {}

void Walker::reset() {
  state_ = initial_state(params_);
  steps_ = 0;
}

void Walker::step() {
  const int d = params_.grid.degree();
  const double sqrt_l = std::sqrt(coin_.loop_weight());
  const double two_over_norm = 2.0 / (d + coin_.loop_weight());
  for (auto v : marked_index_) {
    for (auto& a : state_.vertex(v)) a = -a;
  }
  const std::size_t n = params_.grid.vertex_count();
  for (std::size_t v = 0; v < n; ++v) reflect_vertex(state_.vertex(v), d, sqrt_l, two_over_norm);
  shift_.apply(state_.amplitudes(), scratch_.amplitudes());
  state_.swap(scratch_);
  ++steps_;
}

void Walker::advance(long count) {
  for (long i = 0; i < count; ++i) step();
}

double Walker::success_probability() const {
  return lqw::success_probability(state_, params_.marked);
}

Amplitude Walker::overlap_initial() const { return lqw::overlap_initial(state_, params_); }

}  // namespace lqw
