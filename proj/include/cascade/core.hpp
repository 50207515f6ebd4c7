#pragma once

#include <cstdint>

#include "cascade/errors.hpp"

namespace cascade {

/// Unknown true value of the item: good or bad.
enum class TruthState { G, B };

/// Public action taken by an agent: buy (Y) or pass (N).
enum class Action { Y, N };

/// Private signal received by an agent.
enum class Signal { H, L };

/// Absorption status of the public-belief walk.
enum class CascadeStatus { InPlay, YCascade, NCascade };

/// Where an in-play walk sits relative to the pivot a-1.
/// In the lower segment only N keeps the walk in play, in the upper
/// segment only Y does; at the pivot both actions stay in play.
enum class WalkRegion { LowerSegment, Pivot, UpperSegment };

/// Tolerance for treating a walk value as sitting exactly on a boundary
/// when the cascade constant is irrational (exact hits are impossible
/// analytically, so this is purely a floating-point convention).
inline constexpr double kBoundaryTol = 1e-12;

/// Defaults for rationality detection via continued fractions.
inline constexpr double kRationalityTol = 1e-12;
inline constexpr std::int64_t kRationalityMaxDen = 1'000'000;

/// The channel pair (p1, p2): probabilities of receiving the correct
/// private signal under each true value. Both must lie in (0.5, 1),
/// i.e. signals are informative but never revealing.
class SignalQualities {
 public:
  SignalQualities(double p1, double p2);

  double p1() const { return p1_; }
  double p2() const { return p2_; }

  /// True when p1 <= p2, the ordering the analytic formulas assume.
  bool canonical() const { return p1_ <= p2_; }

  /// The pair with the roles of the two qualities exchanged. Swapping
  /// exchanges the roles of G and B and leaves the correct-cascade
  /// probability unchanged.
  SignalQualities swapped() const { return SignalQualities(p2_, p1_); }

 private:
  double p1_;
  double p2_;
};

/// Validates a quality pair; throws OutOfRangeError outside (0.5, 1).
SignalQualities validate_qualities(double p1, double p2);

/// Rationality classification of a cascade constant: either a reduced
/// fraction r/q within detection tolerance, or irrational.
struct Rationality {
  bool is_rational = false;
  std::int64_t r = 0;  // numerator, coprime with q
  std::int64_t q = 0;  // denominator
};

/// The cascade constant a = log(p1/(1-p2)) / log(p2/(1-p1)) together
/// with its rationality classification. It weights a Yes observation
/// relative to a No in the sufficient statistic; a >= 1 iff p1 <= p2,
/// with equality exactly at p1 = p2.
struct CascadeConstant {
  double a = 1.0;
  Rationality rationality;

  bool is_rational() const { return rationality.is_rational; }
  std::int64_t r() const { return rationality.r; }
  std::int64_t q() const { return rationality.q; }
};

/// Computes the cascade constant of a quality pair, classifying its
/// rationality with the default tolerance.
CascadeConstant cascade_constant(const SignalQualities& q);

/// Walks the continued-fraction convergents of a and returns the first
/// one with denominator <= max_den that matches a within tol; returns
/// an irrational classification if none does. Convergents are coprime
/// by construction.
Rationality classify_rationality(double a, double tol = kRationalityTol,
                                 std::int64_t max_den = kRationalityMaxDen);

/// k_index with a side flag: near_integer_ambiguity is set when the
/// constant is classified irrational yet (i+1)/a is within 1e-12 of an
/// integer, which signals a possible misclassification upstream.
struct KIndex {
  std::int64_t k = 0;
  bool near_integer_ambiguity = false;
};

/// Number of Yes actions in the unique Yes-cascading history with
/// exactly i No actions: floor((i+1)/a) + 1, evaluated in exact integer
/// arithmetic when the constant is rational.
KIndex k_index_checked(std::int64_t i, const CascadeConstant& cc);
std::int64_t k_index(std::int64_t i, const CascadeConstant& cc);

/// State of the public-belief walk h = n_N - a * n_Y. For a rational
/// constant r/q the exact integer state s = q*n_N - r*n_Y (= q*h) is
/// tracked alongside so boundary decisions never touch floats.
/// A default-constructed value is the initial state (h = 0, in play).
struct WalkState {
  std::int64_t yes_count = 0;
  std::int64_t no_count = 0;
  double h = 0.0;
  std::int64_t exact_state = 0;
  CascadeStatus status = CascadeStatus::InPlay;
};

/// Applies one action to an in-play walk and recomputes the status.
/// Cascade triggers are strict: h < -1 starts a Y cascade, h > a an
/// N cascade; landing exactly on a boundary (exact integers for a
/// rational constant, within kBoundaryTol otherwise) keeps the walk in
/// play, matching the tie rule that an indifferent agent follows its
/// signal. Throws SteppedAfterCascadeError if the walk is absorbed.
WalkState step(const WalkState& state, Action action, const CascadeConstant& cc);

/// Classifies an in-play walk relative to the pivot a-1.
WalkRegion region_of(const WalkState& state, const CascadeConstant& cc);

/// h recomputed from the action counts (vs. the incremental field).
double recompute_h(const WalkState& state, const CascadeConstant& cc);

/// Public likelihood ratio l = (p2/(1-p1))^h carried by the history.
double likelihood_ratio(const WalkState& state, const SignalQualities& q);

}  // namespace cascade
