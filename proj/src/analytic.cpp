#include "cascade/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace cascade {

namespace {

double constant_of(double p1, double p2) {
  return std::log(p1 / (1.0 - p2)) / std::log(p2 / (1.0 - p1));
}

void require_canonical(const SignalQualities& q, const char* op) {
  if (!q.canonical()) {
    std::ostringstream os;
    os << op << ": requires the canonical ordering p1 <= p2; swap the pair first";
    throw DomainViolationError(os.str());
  }
}

// Finite sum of the first r series terms with exact integer k_i, cut off
// once the remaining geometric mass cannot move the sum at double
// precision. Returns the sum and the one-period return factor
// base^qden * ratio^r.
struct PeriodSum {
  double sum = 0.0;
  double return_factor = 0.0;
};

PeriodSum period_sum(double ratio, double base, std::int64_t r, std::int64_t qden) {
  PeriodSum out;
  double rpow = 1.0;
  double kpow = 0.0;
  std::int64_t k_cur = -1;
  for (std::int64_t i = 0; i < r; ++i) {
    const std::int64_t k = ((i + 1) * qden) / r + 1;
    if (k_cur < 0) {
      kpow = std::pow(base, static_cast<double>(k));
    } else if (k == k_cur + 1) {
      kpow *= base;
    } else if (k != k_cur) {
      kpow = std::pow(base, static_cast<double>(k));
    }
    k_cur = k;
    out.sum += rpow * kpow;
    rpow *= ratio;
    if (kpow * rpow / (1.0 - ratio) <= out.sum * 1e-17) break;
  }
  out.return_factor =
      std::pow(base, static_cast<double>(qden)) * std::pow(ratio, static_cast<double>(r));
  return out;
}

void require_matching_fraction(const SignalQualities& q, std::int64_t r,
                               std::int64_t qden) {
  if (r < 1 || qden < 1) {
    throw OutOfRangeError("rational constant: r and q must be positive");
  }
  if (std::gcd(r, qden) != 1) {
    std::ostringstream os;
    os << "rational constant: " << r << "/" << qden << " is not in lowest terms";
    throw ConstantMismatchError(os.str());
  }
  const double a = constant_of(q.p1(), q.p2());
  const double approx = static_cast<double>(r) / static_cast<double>(qden);
  if (std::abs(a - approx) > kFractionGate) {
    std::ostringstream os;
    os << "rational constant: " << r << "/" << qden << " = " << approx
       << " does not match the cascade constant " << a;
    throw ConstantMismatchError(os.str());
  }
}

}  // namespace

SeriesTerm series_term(const SignalQualities& q, std::int64_t i) {
  require_canonical(q, "series_term");
  const CascadeConstant cc = cascade_constant(q);
  const std::int64_t k = k_index(i, cc);
  const double di = static_cast<double>(i);
  const double dk = static_cast<double>(k);
  return SeriesTerm{i, k, std::pow(1.0 - q.p1(), di) * std::pow(q.p1(), dk),
                    std::pow(q.p2(), di) * std::pow(1.0 - q.p2(), dk)};
}

SeriesValue ycas_series(double ratio, double base, double a, double tol,
                        KConvention kc) {
  if (!(ratio > 0.0) || !(ratio < 1.0) || !(base > 0.0) || !(base < 1.0)) {
    throw OutOfRangeError("ycas_series: ratio and base must lie in (0, 1)");
  }
  if (!(a > 0.0)) throw OutOfRangeError("ycas_series: a must be positive");
  if (!(tol > 0.0)) throw OutOfRangeError("ycas_series: tol must be positive");

  // Smallest I with ratio^{I+1}/(1-ratio) <= tol, from the log bound.
  const double needed =
      std::log(tol * (1.0 - ratio)) / std::log(ratio) - 1.0;
  if (needed > static_cast<double>(kSeriesTermCap)) {
    std::ostringstream os;
    os << "ycas_series: tolerance " << tol << " needs about " << needed
       << " terms, above the cap of " << kSeriesTermCap;
    throw ToleranceUnreachableError(os.str());
  }

  double sum = 0.0;
  double rpow = 1.0;
  double kpow = 0.0;
  std::int64_t k_cur = -1;
  for (std::int64_t i = 0; i <= kSeriesTermCap; ++i) {
    const double quotient = static_cast<double>(i + 1) / a;
    const double fl = std::floor(quotient);
    std::int64_t k = static_cast<std::int64_t>(fl) + 1;
    if (kc == KConvention::RightLimit && fl == quotient) k -= 1;
    if (k_cur < 0 || (k != k_cur && k != k_cur + 1)) {
      kpow = std::pow(base, static_cast<double>(k));
    } else if (k == k_cur + 1) {
      kpow *= base;
    }
    k_cur = k;
    sum += rpow * kpow;
    const double tail = rpow * ratio / (1.0 - ratio);
    if (tail <= tol) return SeriesValue{sum, i, tail};
    rpow *= ratio;
  }
  throw ToleranceUnreachableError("ycas_series: term cap exhausted");
}

SeriesValue ycas_irrational(const SignalQualities& q, TruthState truth, double tol) {
  require_canonical(q, "ycas_irrational");
  const double a = constant_of(q.p1(), q.p2());
  if (truth == TruthState::G) {
    return ycas_series(1.0 - q.p1(), q.p1(), a, tol);
  }
  return ycas_series(q.p2(), 1.0 - q.p2(), a, tol);
}

double ycas_rational(const SignalQualities& q, std::int64_t r, std::int64_t qden,
                     TruthState truth) {
  require_canonical(q, "ycas_rational");
  require_matching_fraction(q, r, qden);
  const PeriodSum ps = truth == TruthState::G
                           ? period_sum(1.0 - q.p1(), q.p1(), r, qden)
                           : period_sum(q.p2(), 1.0 - q.p2(), r, qden);
  return ps.sum / (1.0 - 2.0 * ps.return_factor);
}

CascadeProbabilities pcc(const SignalQualities& input, ProbabilityMode mode,
                         double tol) {
  const SignalQualities q = input.canonical() ? input : input.swapped();
  CascadeProbabilities out;

  bool use_series = true;
  Rationality fraction;
  switch (mode) {
    case ProbabilityMode::Auto:
      use_series = q.p2() - q.p1() > kSymmetricBand;
      if (!use_series) fraction = Rationality{true, 1, 1};
      break;
    case ProbabilityMode::Irrational:
      use_series = true;
      break;
    case ProbabilityMode::Rational: {
      use_series = false;
      const double a = constant_of(q.p1(), q.p2());
      fraction = classify_rationality(a, kFractionGate, kRationalityMaxDen);
      if (!fraction.is_rational) {
        std::ostringstream os;
        os << "pcc: no rational approximation of a = " << a << " within "
           << kFractionGate << " below denominator " << kRationalityMaxDen;
        throw NoRationalApproximationError(os.str());
      }
      break;
    }
  }

  if (use_series) {
    const SeriesValue yg = ycas_irrational(q, TruthState::G, tol);
    const SeriesValue yb = ycas_irrational(q, TruthState::B, tol);
    out.ycas_g = yg.value;
    out.ycas_b = yb.value;
    out.form = ProbabilityForm::IrrationalSeries;
    out.truncation_index = std::max(yg.truncation_index, yb.truncation_index);
    out.tail_bound = yg.tail_bound + yb.tail_bound;
  } else {
    out.ycas_g = ycas_rational(q, fraction.r, fraction.q, TruthState::G);
    out.ycas_b = ycas_rational(q, fraction.r, fraction.q, TruthState::B);
    out.form = ProbabilityForm::RationalClosedForm;
    out.fraction = fraction;
  }
  out.ncas_b = 1.0 - out.ycas_b;
  out.pcc = 0.5 * (out.ycas_g + out.ncas_b);
  return out;
}

double solve_p2_for_a(double p1, double a_target, double tol) {
  if (!(p1 > 0.5) || !(p1 < 1.0)) {
    throw OutOfRangeError("solve_p2_for_a: p1 must lie in (0.5, 1)");
  }
  if (!(a_target >= 1.0)) {
    throw OutOfRangeError("solve_p2_for_a: a_target must be >= 1");
  }
  if (!(tol > 0.0)) throw OutOfRangeError("solve_p2_for_a: tol must be positive");
  if (std::abs(a_target - 1.0) <= tol) return p1;  // a = 1 iff p1 = p2

  double lo = p1;
  double hi = 1.0 - 1e-12;
  if (constant_of(p1, hi) < a_target) {
    std::ostringstream os;
    os << "solve_p2_for_a: a = " << a_target << " is unreachable from p1 = " << p1
       << " below p2 = 1 - 1e-12";
    throw NoSolutionError(os.str());
  }
  // a increases in p2, so bisection converges to the unique root. For
  // large targets the constant moves by more than tol across one ulp of
  // p2; once the bracket collapses the closest representable root is
  // the best available answer.
  double best_p2 = hi;
  double best_err = std::abs(constant_of(p1, hi) - a_target);
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double a_mid = constant_of(p1, mid);
    const double err = std::abs(a_mid - a_target);
    if (err < best_err) {
      best_err = err;
      best_p2 = mid;
    }
    if (err <= tol) return mid;
    (a_mid < a_target ? lo : hi) = mid;
  }
  return best_p2;
}

RationalGap rational_gap(double p1, std::int64_t r, std::int64_t qden) {
  if (r < 1 || qden < 1 || r < qden) {
    throw OutOfRangeError("rational_gap: need positive integers with r >= q");
  }
  if (std::gcd(r, qden) != 1) {
    throw OutOfRangeError("rational_gap: fraction must be in lowest terms");
  }
  const double a_target = static_cast<double>(r) / static_cast<double>(qden);
  const double p2 = solve_p2_for_a(p1, a_target);

  const PeriodSum g = period_sum(1.0 - p1, p1, r, qden);
  const PeriodSum b = period_sum(p2, 1.0 - p2, r, qden);
  // Rational closed form vs. the irrational-model series at a = r/q; the
  // latter is r-periodic in its terms and sums to S_r/(1 - return_factor).
  const double ra_g = g.sum / (1.0 - 2.0 * g.return_factor);
  const double ir_g = g.sum / (1.0 - g.return_factor);
  const double ra_b = b.sum / (1.0 - 2.0 * b.return_factor);
  const double ir_b = b.sum / (1.0 - b.return_factor);

  RationalGap out;
  out.gap_g = std::abs(ra_g - ir_g);
  out.gap_b = std::abs(ra_b - ir_b);
  out.gap_pcc = std::abs(0.5 * (ra_g + 1.0 - ra_b) - 0.5 * (ir_g + 1.0 - ir_b));
  out.p2 = p2;
  return out;
}

CensusReport rational_census(double p1, double epsilon, std::int64_t max_den) {
  if (!(p1 > 0.5) || !(p1 < 1.0)) {
    throw OutOfRangeError("rational_census: p1 must lie in (0.5, 1)");
  }
  if (!(epsilon > 0.0)) throw OutOfRangeError("rational_census: epsilon must be positive");
  if (max_den < 1) throw OutOfRangeError("rational_census: max_den must be >= 1");

  CensusReport report;
  report.epsilon = epsilon;
  report.max_den = max_den;
  report.theoretical_bound = std::pow(std::log2(1.0 / epsilon) + 1.0, 2.0);

  for (std::int64_t r = 1; r <= max_den; ++r) {
    for (std::int64_t q = 1; q <= r; ++q) {
      if (std::gcd(r, q) != 1) continue;
      RationalGap gap;
      try {
        gap = rational_gap(p1, r, q);
      } catch (const NoSolutionError&) {
        report.skipped += 1;
        continue;
      }
      report.entries.push_back(
          CensusEntry{r, q, gap.p2, gap.gap_g, gap.gap_b, gap.gap_pcc});
      if (gap.gap_g > epsilon) report.exceed_g += 1;
      if (gap.gap_b > epsilon) report.exceed_b += 1;
      if (std::max(gap.gap_g, gap.gap_b) > epsilon) report.exceed_count += 1;
    }
  }
  return report;
}

}  // namespace cascade
