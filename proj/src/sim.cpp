#include "cascade/sim.hpp"

#include <cmath>

namespace cascade {

namespace {

BatchEstimate finalize(std::int64_t paths, std::int64_t successes,
                       std::uint64_t seed) {
  BatchEstimate out;
  out.paths = paths;
  out.successes = successes;
  out.estimate = static_cast<double>(successes) / static_cast<double>(paths);
  out.std_error = std::sqrt(out.estimate * (1.0 - out.estimate) /
                            static_cast<double>(paths));
  out.ci95 = Interval{out.estimate - 1.96 * out.std_error,
                      out.estimate + 1.96 * out.std_error};
  out.seed = seed;
  return out;
}

}  // namespace

PathOutcome simulate_path(const SignalQualities& q, TruthState truth, PathRng& rng) {
  const CascadeConstant cc = cascade_constant(q);
  return detail::run_path(q, cc, truth, rng);
}

PathOutcome simulate_path(const SignalQualities& q, const CascadeConstant& cc,
                          TruthState truth, PathRng& rng) {
  return detail::run_path(q, cc, truth, rng);
}

BatchEstimate estimate(const SignalQualities& q, TruthState truth,
                       CascadeStatus target, std::int64_t paths,
                       std::uint64_t seed) {
  if (paths < 1) throw OutOfRangeError("estimate: paths must be >= 1");
  if (target == CascadeStatus::InPlay) {
    throw OutOfRangeError("estimate: target must be a cascade outcome");
  }
  const CascadeConstant cc = cascade_constant(q);
  std::int64_t successes = 0;
  for (std::int64_t j = 0; j < paths; ++j) {
    PathRng rng = path_rng(seed, static_cast<std::uint64_t>(j));
    if (detail::run_path(q, cc, truth, rng).terminal == target) ++successes;
  }
  return finalize(paths, successes, seed);
}

BatchEstimate estimate_pcc(const SignalQualities& q, std::int64_t paths,
                           std::uint64_t seed) {
  if (paths < 2 || paths % 2 != 0) {
    throw OutOfRangeError("estimate_pcc: paths must be even and >= 2");
  }
  const CascadeConstant cc = cascade_constant(q);
  const std::int64_t half = paths / 2;
  std::int64_t successes = 0;
  for (std::int64_t j = 0; j < paths; ++j) {
    PathRng rng = path_rng(seed, static_cast<std::uint64_t>(j));
    if (j < half) {
      if (detail::run_path(q, cc, TruthState::G, rng).terminal ==
          CascadeStatus::YCascade) {
        ++successes;
      }
    } else {
      if (detail::run_path(q, cc, TruthState::B, rng).terminal ==
          CascadeStatus::NCascade) {
        ++successes;
      }
    }
  }
  return finalize(paths, successes, seed);
}

}  // namespace cascade
