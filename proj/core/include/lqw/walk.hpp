#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "lqw/grid.hpp"

namespace lqw {

using Amplitude = std::complex<double>;

/// Grid, self-loop weight and marked vertices. Fully determines the search evolution.
struct WalkParams {
  GridSpec grid;
  double loop_weight = 0.0;
  std::vector<VertexCoord> marked;
};

/// Throws GridError/std::invalid_argument on an invalid grid, negative or
/// non-finite loop weight, marked vertex outside the grid, or duplicate marks.
void validate(const WalkParams& params);

/// Weighted uniform coin state: 1/sqrt(d+l) on each edge slot, sqrt(l)/sqrt(d+l) on the loop.
class CoinVector {
 public:
  CoinVector(int degree, double loop_weight);

  [[nodiscard]] int degree() const noexcept { return degree_; }
  [[nodiscard]] double loop_weight() const noexcept { return loop_weight_; }
  [[nodiscard]] double edge() const noexcept { return edge_; }
  [[nodiscard]] double loop() const noexcept { return loop_; }
  [[nodiscard]] double operator[](int slot) const noexcept {
    return slot == degree_ ? loop_ : edge_;
  }

 private:
  int degree_;
  double loop_weight_;
  double edge_;
  double loop_;
};

/// Dense amplitudes indexed by (vertex, slot), vertex-major with d+1 slots per vertex.
class WalkState {
 public:
  explicit WalkState(GridSpec grid);
  WalkState(GridSpec grid, std::vector<Amplitude> amplitudes);

  [[nodiscard]] const GridSpec& grid() const noexcept { return grid_; }
  [[nodiscard]] std::size_t size() const noexcept { return amplitudes_.size(); }

  [[nodiscard]] std::span<Amplitude> amplitudes() noexcept { return amplitudes_; }
  [[nodiscard]] std::span<const Amplitude> amplitudes() const noexcept { return amplitudes_; }

  /// The d+1 amplitudes of one vertex.
  [[nodiscard]] std::span<Amplitude> vertex(std::size_t index) noexcept;
  [[nodiscard]] std::span<const Amplitude> vertex(std::size_t index) const noexcept;

  [[nodiscard]] Amplitude& at(VertexCoord v, CoinSlot s) noexcept {
    return amplitudes_[grid_.amplitude_index(v, s)];
  }
  [[nodiscard]] Amplitude at(VertexCoord v, CoinSlot s) const noexcept {
    return amplitudes_[grid_.amplitude_index(v, s)];
  }

  [[nodiscard]] double norm_squared() const noexcept;

  void swap(WalkState& other) noexcept;

 private:
  GridSpec grid_;
  std::vector<Amplitude> amplitudes_;
};

/// Largest elementwise |a_i - b_i|. Throws std::invalid_argument on size mismatch.
double max_abs_difference(std::span<const Amplitude> a, std::span<const Amplitude> b);

/// psi(0): the coin vector at every vertex, scaled by 1/sqrt(N).
WalkState initial_state(const WalkParams& params);

/// Negates every slot of each marked vertex.
void apply_oracle(WalkState& state, std::span<const VertexCoord> marked);

/// Grover reflection 2|s_c><s_c| - I at every vertex, O(d) per vertex.
void apply_coin(WalkState& state, const CoinVector& coin);

/// Precomputed flip-flop permutation: destination[i] is where amplitude i moves.
class ShiftTable {
 public:
  explicit ShiftTable(const GridSpec& grid);

  [[nodiscard]] const GridSpec& grid() const noexcept { return grid_; }
  [[nodiscard]] std::span<const std::size_t> destinations() const noexcept { return dest_; }

  /// out[destination[i]] = in[i]. `out` must not alias `in`.
  void apply(std::span<const Amplitude> in, std::span<Amplitude> out) const;

 private:
  GridSpec grid_;
  std::vector<std::size_t> dest_;
};

void apply_shift(WalkState& state, const ShiftTable& table);
void apply_shift(WalkState& state);

/// One search step U' = S (I x C) (Q x I): oracle, then coin, then shift.
void step(WalkState& state, const WalkParams& params);

/// Probability mass on the marked vertices, all coin slots included.
double success_probability(const WalkState& state, std::span<const VertexCoord> marked);

/// <psi(0)|state>.
Amplitude overlap_initial(const WalkState& state, const WalkParams& params);

/// Reusable stepping context: owns the state plus the shift table and scratch
/// buffer so repeated steps allocate nothing.
class Walker {
 public:
  explicit Walker(WalkParams params);

  [[nodiscard]] const WalkParams& params() const noexcept { return params_; }
  [[nodiscard]] const WalkState& state() const noexcept { return state_; }
  [[nodiscard]] WalkState& state() noexcept { return state_; }
  [[nodiscard]] long steps_taken() const noexcept { return steps_; }

  void reset();
  void step();
  void advance(long count);

  [[nodiscard]] double success_probability() const;
  [[nodiscard]] Amplitude overlap_initial() const;

 private:
  WalkParams params_;
  CoinVector coin_;
  ShiftTable shift_;
  std::vector<std::size_t> marked_index_;
  WalkState state_;
  WalkState scratch_;
  long steps_ = 0;
};

}  // namespace lqw
