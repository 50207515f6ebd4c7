#include "cascade/core.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

namespace cascade {

namespace {

[[noreturn]] void throw_out_of_range(const char* name, double value) {
  std::ostringstream os;
  os << name << " must lie strictly between 0.5 and 1, got " << value;
  throw OutOfRangeError(os.str());
}

}  // namespace

SignalQualities::SignalQualities(double p1, double p2) : p1_(p1), p2_(p2) {
  if (!(p1 > 0.5) || !(p1 < 1.0)) throw_out_of_range("p1", p1);
  if (!(p2 > 0.5) || !(p2 < 1.0)) throw_out_of_range("p2", p2);
}

SignalQualities validate_qualities(double p1, double p2) {
  return SignalQualities(p1, p2);
}

CascadeConstant cascade_constant(const SignalQualities& q) {
  const double a =
      std::log(q.p1() / (1.0 - q.p2())) / std::log(q.p2() / (1.0 - q.p1()));
  return CascadeConstant{a, classify_rationality(a)};
}

Rationality classify_rationality(double a, double tol, std::int64_t max_den) {
  if (!(a > 0.0) || !std::isfinite(a)) {
    throw OutOfRangeError("classify_rationality: a must be positive and finite");
  }
  if (!(tol > 0.0)) throw OutOfRangeError("classify_rationality: tol must be positive");
  if (max_den < 1) throw OutOfRangeError("classify_rationality: max_den must be >= 1");

  // Convergent recurrence H_k = a_k H_{k-1} + H_{k-2}, same for K.
  std::int64_t h_prev = 1, k_prev = 0;
  auto h_cur = static_cast<std::int64_t>(std::floor(a));
  std::int64_t k_cur = 1;
  double x = a;
  for (int depth = 0; depth < 64; ++depth) {
    if (k_cur > max_den) break;
    if (std::abs(a - static_cast<double>(h_cur) / static_cast<double>(k_cur)) <= tol) {
      return Rationality{true, h_cur, k_cur};
    }
    const double frac = x - std::floor(x);
    if (frac <= 0.0) break;  // expansion terminated without matching
    x = 1.0 / frac;
    const double term = std::floor(x);
    if (term > static_cast<double>(max_den)) break;  // next denominator out of range
    const auto ai = static_cast<std::int64_t>(term);
    const std::int64_t h_next = ai * h_cur + h_prev;
    const std::int64_t k_next = ai * k_cur + k_prev;
    h_prev = h_cur;
    k_prev = k_cur;
    h_cur = h_next;
    k_cur = k_next;
  }
  return Rationality{};
}

KIndex k_index_checked(std::int64_t i, const CascadeConstant& cc) {
  if (i < 0) throw OutOfRangeError("k_index: i must be non-negative");
  if (cc.is_rational()) {
    // floor((i+1) * q / r) in exact integer arithmetic
    const std::int64_t k = ((i + 1) * cc.q()) / cc.r() + 1;
    return KIndex{k, false};
  }
  const double quotient = static_cast<double>(i + 1) / cc.a;
  const bool ambiguous =
      std::abs(quotient - std::nearbyint(quotient)) <= 1e-12;
  return KIndex{static_cast<std::int64_t>(std::floor(quotient)) + 1, ambiguous};
}

std::int64_t k_index(std::int64_t i, const CascadeConstant& cc) {
  return k_index_checked(i, cc).k;
}

WalkState step(const WalkState& state, Action action, const CascadeConstant& cc) {
  if (state.status != CascadeStatus::InPlay) {
    throw SteppedAfterCascadeError("step: the walk is already absorbed; a cascade lasts forever");
  }
  WalkState next = state;
  if (action == Action::Y) {
    next.yes_count += 1;
    next.h -= cc.a;
  } else {
    next.no_count += 1;
    next.h += 1.0;
  }
  if (cc.is_rational()) {
    next.exact_state += action == Action::Y ? -cc.r() : cc.q();
    if (next.exact_state < -cc.q()) {
      next.status = CascadeStatus::YCascade;
    } else if (next.exact_state > cc.r()) {
      next.status = CascadeStatus::NCascade;
    }
  } else {
    if (next.h < -1.0 - kBoundaryTol) {
      next.status = CascadeStatus::YCascade;
    } else if (next.h > cc.a + kBoundaryTol) {
      next.status = CascadeStatus::NCascade;
    }
  }
  return next;
}

WalkRegion region_of(const WalkState& state, const CascadeConstant& cc) {
  if (state.status != CascadeStatus::InPlay) {
    throw DomainViolationError("region_of: the walk is already absorbed");
  }
  if (cc.is_rational()) {
    const std::int64_t pivot = cc.r() - cc.q();  // q*h = q*(a-1)
    if (state.exact_state == pivot) return WalkRegion::Pivot;
    return state.exact_state < pivot ? WalkRegion::LowerSegment
                                     : WalkRegion::UpperSegment;
  }
  const double pivot = cc.a - 1.0;
  if (std::abs(state.h - pivot) <= kBoundaryTol) return WalkRegion::Pivot;
  return state.h < pivot ? WalkRegion::LowerSegment : WalkRegion::UpperSegment;
}

double recompute_h(const WalkState& state, const CascadeConstant& cc) {
  return static_cast<double>(state.no_count) -
         cc.a * static_cast<double>(state.yes_count);
}

double likelihood_ratio(const WalkState& state, const SignalQualities& q) {
  return std::pow(q.p2() / (1.0 - q.p1()), state.h);
}

}  // namespace cascade
