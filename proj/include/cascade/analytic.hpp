#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cascade/core.hpp"

namespace cascade {

/// Default truncation tolerance for the infinite-series formulas.
inline constexpr double kSeriesTol = 1e-12;

/// Hard cap on series terms; exceeding it raises ToleranceUnreachableError
/// (p2 pathologically close to 1 combined with an absurd tolerance).
inline constexpr std::int64_t kSeriesTermCap = 10'000'000;

/// Consistency gate between a supplied fraction and the cascade constant.
inline constexpr double kFractionGate = 1e-9;

/// Two quality values within this band are treated as the symmetric case.
inline constexpr double kSymmetricBand = 1e-12;

/// Which formula family produced a probability.
enum class ProbabilityForm { IrrationalSeries, RationalClosedForm };

/// Formula selection for pcc().
enum class ProbabilityMode { Auto, Irrational, Rational };

/// Convention for k_i at exact hits of (i+1)/a on an integer. ExactFloor
/// is the literal expression; RightLimit is the limit from above in a,
/// which differs only at rational constants. The correct-cascade
/// probability is insensitive to the choice (the per-truth terms shift in
/// opposite directions and cancel).
enum class KConvention { ExactFloor, RightLimit };

/// One term of the cascade series at index i: the probability of a Yes
/// cascade with exactly i No actions, under each truth.
struct SeriesTerm {
  std::int64_t i = 0;
  std::int64_t k = 0;
  double term_g = 0.0;  // (1-p1)^i * p1^k
  double term_b = 0.0;  // p2^i * (1-p2)^k
};

SeriesTerm series_term(const SignalQualities& q, std::int64_t i);

/// A truncated series value with its truncation metadata.
struct SeriesValue {
  double value = 0.0;
  std::int64_t truncation_index = 0;
  double tail_bound = 0.0;
};

/// Sum_{i>=0} ratio^i * base^{k_i} with k_i = floor((i+1)/a) + 1,
/// truncated at the smallest I whose geometric tail ratio^{I+1}/(1-ratio)
/// is at most tol. Exposed so tests can drive alternate k conventions.
SeriesValue ycas_series(double ratio, double base, double a, double tol,
                        KConvention kc = KConvention::ExactFloor);

/// P(Y cascade | truth) by the infinite-series formula for an irrational
/// cascade constant. Requires the canonical ordering p1 <= p2.
/// The tail bound is (1-p1)^{I+1}/p1 for truth G and p2^{I+1}/(1-p2) for
/// truth B, evaluated at the returned truncation index I.
SeriesValue ycas_irrational(const SignalQualities& q, TruthState truth,
                            double tol = kSeriesTol);

/// P(Y cascade | truth) by the closed form for a rational constant
/// a = r/qden in lowest terms: the first r series terms divided by
/// 1 - 2 p1^qden (1-p1)^r (and the B analogue). Throws
/// ConstantMismatchError when the fraction does not match the pair's
/// cascade constant within kFractionGate.
double ycas_rational(const SignalQualities& q, std::int64_t r,
                     std::int64_t qden, TruthState truth);

/// The cascade probabilities of a quality pair plus P_cc and metadata.
struct CascadeProbabilities {
  double ycas_g = 0.0;
  double ycas_b = 0.0;
  double ncas_b = 0.0;  // 1 - ycas_b exactly
  double pcc = 0.0;     // (ycas_g + ncas_b) / 2
  ProbabilityForm form = ProbabilityForm::IrrationalSeries;
  std::optional<std::int64_t> truncation_index;  // series form only
  std::optional<double> tail_bound;              // sum of the two tails
  std::optional<Rationality> fraction;           // closed form only
};

/// Probability of a correct cascade. Non-canonical pairs are swapped
/// (exchanging the roles of G and B) before computing; the returned
/// conditionals refer to the canonical orientation.
///
/// Auto resolves to the rational closed form with r = q = 1 iff the two
/// qualities agree within kSymmetricBand, and to the irrational series
/// otherwise; explicit modes force a formula family. Rational mode
/// classifies the constant with tolerance kFractionGate and throws
/// NoRationalApproximationError when no convergent matches.
CascadeProbabilities pcc(const SignalQualities& q,
                         ProbabilityMode mode = ProbabilityMode::Auto,
                         double tol = kSeriesTol);

/// Finds p2 in [p1, 1) with cascade constant a_target by bisection
/// (the constant increases in p2). Throws NoSolutionError when the
/// target is unreachable below 1 - 1e-12. For targets large enough that
/// the constant moves by more than tol across one ulp of p2, returns
/// the closest representable root instead of failing.
double solve_p2_for_a(double p1, double a_target, double tol = 1e-12);

/// Absolute differences between the rational closed form and the
/// irrational series evaluated at the solved point where a = r/q, per
/// conditional probability and for P_cc. At a rational constant the
/// exact-floor k_i is r-periodic, so the irrational-model series sums in
/// closed form: S_r / (1 - p1^q (1-p1)^r) for truth G.
struct RationalGap {
  double gap_g = 0.0;
  double gap_b = 0.0;
  double gap_pcc = 0.0;
  double p2 = 0.0;  // the solved quality
};

RationalGap rational_gap(double p1, std::int64_t r, std::int64_t qden);

struct CensusEntry {
  std::int64_t r = 0;
  std::int64_t q = 0;
  double p2 = 0.0;
  double gap_g = 0.0;
  double gap_b = 0.0;
  double gap_pcc = 0.0;
};

/// Census of rational constants a = r/q (coprime, q <= r <= max_den)
/// reachable from p1: how many have formula gaps above epsilon, against
/// the theoretical per-conditional bound (log2(1/epsilon) + 1)^2.
struct CensusReport {
  double epsilon = 0.0;
  std::int64_t max_den = 0;
  std::vector<CensusEntry> entries;
  std::int64_t skipped = 0;  // fractions unreachable below p2 = 1 - 1e-12
  std::int64_t exceed_g = 0;
  std::int64_t exceed_b = 0;
  std::int64_t exceed_count = 0;  // max(gap_g, gap_b) > epsilon
  double theoretical_bound = 0.0;
};

CensusReport rational_census(double p1, double epsilon, std::int64_t max_den);

}  // namespace cascade
