#pragma once

#include <cstdint>

#include "cascade/core.hpp"

namespace cascade {

/// Hard per-path step cap; absorption is almost sure, so hitting the cap
/// signals a dynamics bug rather than a long path.
inline constexpr std::int64_t kStepCap = 1'000'000;

/// Terminal record of one simulated path.
struct PathOutcome {
  CascadeStatus terminal = CascadeStatus::InPlay;
  std::int64_t yes_count = 0;
  std::int64_t no_count = 0;
  std::int64_t steps = 0;
};

/// Small counter-based generator (splitmix64). Each path owns one stream
/// derived from (seed, path index), so results are independent of how
/// paths are scheduled across workers.
class PathRng {
 public:
  explicit PathRng(std::uint64_t state) : state_(state) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform draw in [0, 1).
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

/// 64-bit avalanche mix (murmur3 finalizer).
inline std::uint64_t avalanche64(std::uint64_t z) {
  z ^= z >> 33;
  z *= 0xff51afd7ed558ccdULL;
  z ^= z >> 33;
  z *= 0xc4ceb9fe1a85ec53ULL;
  z ^= z >> 33;
  return z;
}

/// The stream for one path: seed and index mixed through avalanche64.
inline PathRng path_rng(std::uint64_t seed, std::uint64_t path_index) {
  return PathRng(avalanche64(seed ^ avalanche64(path_index + 0x9e3779b97f4a7c15ULL)));
}

namespace detail {

/// Core path loop, templated so tests can drive scripted draw sequences.
/// Until absorption every agent follows its private signal, so the draw
/// directly decides the action: Y with probability p1 under G and 1-p2
/// under B.
template <typename Rng>
PathOutcome run_path(const SignalQualities& q, const CascadeConstant& cc,
                     TruthState truth, Rng& rng) {
  const double yes_prob = truth == TruthState::G ? q.p1() : 1.0 - q.p2();
  WalkState state;
  std::int64_t steps = 0;
  while (state.status == CascadeStatus::InPlay) {
    if (steps >= kStepCap) {
      throw StepCapExceededError("simulate_path: no absorption within the step cap");
    }
    state = step(state, rng.next_unit() < yes_prob ? Action::Y : Action::N, cc);
    ++steps;
  }
  return PathOutcome{state.status, state.yes_count, state.no_count, steps};
}

}  // namespace detail

PathOutcome simulate_path(const SignalQualities& q, TruthState truth, PathRng& rng);
PathOutcome simulate_path(const SignalQualities& q, const CascadeConstant& cc,
                          TruthState truth, PathRng& rng);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

/// Aggregate of a batch of independent paths.
struct BatchEstimate {
  std::int64_t paths = 0;
  std::int64_t successes = 0;
  double estimate = 0.0;
  double std_error = 0.0;
  Interval ci95;
  std::uint64_t seed = 0;
};

/// Fraction of paths ending in `target`, deterministic given
/// (q, truth, target, paths, seed) and independent of worker count.
BatchEstimate estimate(const SignalQualities& q, TruthState truth,
                       CascadeStatus target, std::int64_t paths,
                       std::uint64_t seed);

/// Correct-cascade estimate: the first half of the paths run under G
/// counting Y cascades, the second half under B counting N cascades.
/// Requires an even path count.
BatchEstimate estimate_pcc(const SignalQualities& q, std::int64_t paths,
                           std::uint64_t seed);

}  // namespace cascade
