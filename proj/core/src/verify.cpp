#include "lqw/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <fmt/format.h>

#include "lqw/dense.hpp"
#include "lqw/experiments.hpp"

namespace lqw::verify {

namespace {

WalkState random_unit_state(const GridSpec& grid, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  WalkState state(grid);
  for (auto& a : state.amplitudes()) a = {gauss(rng), gauss(rng)};
  const double scale = 1.0 / std::sqrt(state.norm_squared());
  for (auto& a : state.amplitudes()) a *= scale;
  return state;
}

}  // namespace

Stepper engine_stepper() {
  return [](WalkState& state, const WalkParams& params) {
    Walker walker(params);
    walker.state() = state;
    walker.step();
    state = walker.state();
  };
}

CheckResult check_dense_equivalence(const WalkParams& params, long steps, double tolerance,
                                    const Stepper& stepper) {
  const auto op = dense::build_dense_step(params);
  auto fast = initial_state(params);
  auto vec = dense::to_vector(fast);
  double worst = 0.0;
  for (long t = 0; t < steps; ++t) {
    stepper(fast, params);
    vec = op.matrix * vec;
    worst = std::max(worst, max_abs_difference(fast.amplitudes(),
                                               dense::from_vector(params.grid, vec).amplitudes()));
  }
  return {fmt::format("dense equivalence {} l={:.6g} ({} steps)", describe(params.grid),
                      params.loop_weight, steps),
          worst <= tolerance, worst, tolerance};
}

CheckResult check_norm_drift(const WalkParams& params, long steps, double tolerance,
                             const Stepper& stepper) {
  auto state = initial_state(params);
  double worst = 0.0;
  for (long t = 0; t < steps; ++t) {
    stepper(state, params);
    worst = std::max(worst, std::abs(1.0 - state.norm_squared()));
  }
  return {fmt::format("norm drift {} l={:.6g} ({} steps)", describe(params.grid), params.loop_weight,
                      steps),
          worst < tolerance, worst, tolerance};
}

CheckResult check_involutions(const WalkParams& params, unsigned seed, double tolerance) {
  const auto original = random_unit_state(params.grid, seed);
  const CoinVector coin(params.grid.degree(), params.loop_weight);
  const ShiftTable shift(params.grid);

  auto q = original;
  apply_oracle(q, params.marked);
  apply_oracle(q, params.marked);
  auto c = original;
  apply_coin(c, coin);
  apply_coin(c, coin);
  auto s = original;
  apply_shift(s, shift);
  apply_shift(s, shift);

  const double worst = std::max({max_abs_difference(q.amplitudes(), original.amplitudes()),
                                 max_abs_difference(c.amplitudes(), original.amplitudes()),
                                 max_abs_difference(s.amplitudes(), original.amplitudes())});
  return {fmt::format("Q^2 = C^2 = S^2 = I {} l={:.6g}", describe(params.grid), params.loop_weight),
          worst <= tolerance, worst, tolerance};
}

CheckResult check_shift_involution(const GridSpec& grid) {
  long failures = 0;
  for (std::size_t v = 0; v < grid.vertex_count(); ++v) {
    const auto coord = grid.vertex_at(v);
    for (int s = 0; s < grid.slots(); ++s) {
      const auto once = resolve_shift(grid, coord, CoinSlot{s});
      const auto twice = resolve_shift(grid, once.vertex, once.slot);
      if (!(twice == ShiftTarget{coord, CoinSlot{s}})) ++failures;
    }
  }
  return {fmt::format("flip-flop involution {} (exhaustive)", describe(grid)), failures == 0,
          static_cast<double>(failures), 0.0};
}

LooplessReference::LooplessReference(WalkParams params) : params_(std::move(params)) {
  const auto& grid = params_.grid;
  const auto d = static_cast<std::size_t>(grid.degree());
  const double amp = 1.0 / std::sqrt(static_cast<double>(grid.vertex_count() * d));
  amps_.assign(grid.vertex_count() * d, Amplitude{amp, 0.0});
  dest_.resize(amps_.size());
  for (std::size_t v = 0; v < grid.vertex_count(); ++v) {
    for (std::size_t s = 0; s < d; ++s) {
      const auto to = resolve_shift(grid, grid.vertex_at(v), CoinSlot{static_cast<int>(s)});
      dest_[v * d + s] = grid.vertex_index(to.vertex) * d + static_cast<std::size_t>(to.slot.index);
    }
  }
}

void LooplessReference::step() {
  const auto& grid = params_.grid;
  const auto d = static_cast<std::size_t>(grid.degree());
  for (const auto& m : params_.marked) {
    const auto base = grid.vertex_index(m) * d;
    for (std::size_t s = 0; s < d; ++s) amps_[base + s] = -amps_[base + s];
  }
  for (std::size_t v = 0; v < grid.vertex_count(); ++v) {
    Amplitude sum{0.0, 0.0};
    for (std::size_t s = 0; s < d; ++s) sum += amps_[v * d + s];
    const Amplitude f = (2.0 / static_cast<double>(d)) * sum;
    for (std::size_t s = 0; s < d; ++s) amps_[v * d + s] = f - amps_[v * d + s];
  }
  std::vector<Amplitude> out(amps_.size());
  for (std::size_t i = 0; i < amps_.size(); ++i) out[dest_[i]] = amps_[i];
  amps_.swap(out);
}

CheckResult check_loopless_embedding(const WalkParams& params, long steps, double tolerance,
                                     const Stepper& stepper) {
  WalkParams loopless = params;
  loopless.loop_weight = 0.0;
  const auto& grid = loopless.grid;
  const auto d = static_cast<std::size_t>(grid.degree());

  auto state = initial_state(loopless);
  LooplessReference reference(loopless);
  double worst = 0.0;
  bool loop_exactly_zero = true;
  for (long t = 0; t < steps; ++t) {
    stepper(state, loopless);
    reference.step();
    const auto& ref = reference.amplitudes();
    for (std::size_t v = 0; v < grid.vertex_count(); ++v) {
      const auto amps = state.vertex(v);
      for (std::size_t s = 0; s < d; ++s) worst = std::max(worst, std::abs(amps[s] - ref[v * d + s]));
      if (amps[d] != Amplitude{0.0, 0.0}) loop_exactly_zero = false;
    }
  }
  return {fmt::format("loopless embedding {} ({} steps)", describe(grid), steps),
          loop_exactly_zero && worst <= tolerance, loop_exactly_zero ? worst : INFINITY, tolerance};
}

std::vector<CheckResult> run_suite(const Stepper& stepper) {
  std::vector<CheckResult> results;
  const Topology topologies[] = {Topology::rectangular, Topology::triangular, Topology::honeycomb};

  for (auto topology : topologies) {
    const GridSpec small{topology, 4, 4};
    for (double l : {0.0, degree_rule_weight(small), 1.0}) {
      const WalkParams params{small, l, {{1, 2}}};
      results.push_back(check_dense_equivalence(params, 25, 1e-10, stepper));
    }
    const WalkParams rule{small, degree_rule_weight(small), {{1, 2}}};
    results.push_back({fmt::format("dense unitarity {}", describe(small)), false,
                       dense::unitarity_defect(dense::build_dense_step(rule).matrix), 1e-10});
    results.back().passed = results.back().deviation < 1e-10;
  }

  for (auto topology : topologies) {
    const GridSpec grid{topology, 6, 6};
    const WalkParams params{grid, degree_rule_weight(grid), {default_marked(grid)}};
    results.push_back(check_involutions(params, 2024U, 1e-12));
    results.push_back(check_norm_drift(params, 1000, 1e-10, stepper));
    results.push_back(check_loopless_embedding(params, 200, 1e-12, stepper));
    results.push_back(check_shift_involution(grid));
    results.push_back(check_shift_involution(GridSpec{topology, 8, 8}));
  }
  return results;
}

}  // namespace lqw::verify
