#pragma once

#include <functional>
#include <string>
#include <vector>

#include "lqw/walk.hpp"

namespace lqw::verify {

/// Advances a state by one search step. Lets tests substitute a faulty engine.
using Stepper = std::function<void(WalkState&, const WalkParams&)>;

/// The production engine (Walker's fused step, re-created per call).
Stepper engine_stepper();

struct CheckResult {
  std::string name;
  bool passed = false;
  /// Worst observed deviation (or count of failures for exhaustive checks).
  double deviation = 0.0;
  double tolerance = 0.0;
};

/// Engine vs explicit step matrix, elementwise over `steps` steps.
CheckResult check_dense_equivalence(const WalkParams& params, long steps, double tolerance,
                                    const Stepper& stepper);

/// Norm drift |1 - ||psi(t)||^2| maximised over t <= steps.
CheckResult check_norm_drift(const WalkParams& params, long steps, double tolerance,
                             const Stepper& stepper);

/// Q^2 = C^2 = S^2 = I on a seeded random unit state.
CheckResult check_involutions(const WalkParams& params, unsigned seed, double tolerance);

/// resolve_shift(resolve_shift(v, s)) == (v, s) for every basis pair.
CheckResult check_shift_involution(const GridSpec& grid);

/// With l = 0: loop amplitudes stay exactly 0 and the edge amplitudes match a
/// d-slot implementation that has no loop register at all.
CheckResult check_loopless_embedding(const WalkParams& params, long steps, double tolerance,
                                     const Stepper& stepper);

/// Loop-free reference walk over d slots per vertex.
class LooplessReference {
 public:
  explicit LooplessReference(WalkParams params);

  void step();
  [[nodiscard]] const std::vector<Amplitude>& amplitudes() const noexcept { return amps_; }

 private:
  WalkParams params_;
  std::vector<Amplitude> amps_;
  std::vector<std::size_t> dest_;
};

/// Full table run by `lqw verify`: 4x4 dense equivalence for every topology and
/// l in {0, degree/N, 1}, involutions, unitarity, loopless embedding and
/// exhaustive shift involution on 6x6 and 8x8 grids.
std::vector<CheckResult> run_suite(const Stepper& stepper = engine_stepper());

}  // namespace lqw::verify
