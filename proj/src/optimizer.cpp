#include "cascade/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace cascade {

namespace {

// Largest c2' <= c2 with c1 + c2' <= b after rounding; keeps returned
// allocations feasible in exact double arithmetic.
double fit_to_budget(double c1, double c2, double b) {
  while (c1 + c2 > b && c2 > 0.0) c2 = std::nextafter(c2, 0.0);
  return c2;
}

Allocation evaluate(StrategyKind kind, const BudgetProblem& prob, double c1,
                    double c2) {
  Allocation out;
  out.kind = kind;
  out.c1 = c1;
  out.c2 = c2;
  out.p1_new = prob.base.p1() + c1;
  out.p2_new = prob.base.p2() + c2;
  const CascadeProbabilities probs =
      pcc(SignalQualities(out.p1_new, out.p2_new), ProbabilityMode::Auto);
  out.pcc = probs.pcc;
  out.form = probs.form;
  return out;
}

std::size_t argmax_pcc(const std::vector<Allocation>& candidates) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    if (candidates[i].pcc > candidates[best].pcc) best = i;
  }
  return best;
}

}  // namespace

std::string to_string(StrategyKind kind) {
  switch (kind) {
    case StrategyKind::Concentrate: return "concentrate";
    case StrategyKind::Equalize: return "equalize";
    case StrategyKind::CapP2ThenP1: return "cap_p2_then_p1";
    case StrategyKind::CapP1ThenP2: return "cap_p1_then_p2";
    case StrategyKind::GridCell: return "grid_cell";
  }
  return "unknown";
}

BudgetProblem make_budget_problem(double p1, double p2, double b) {
  if (!(b >= 0.0)) throw OutOfRangeError("budget must be non-negative");
  SignalQualities q(p1, p2);
  if (!q.canonical()) q = q.swapped();
  return BudgetProblem{q, b};
}

Allocation strategy_concentrate(const BudgetProblem& prob) {
  if (!prob.concentrate_feasible()) {
    std::ostringstream os;
    os << "concentrate: budget " << prob.budget << " is not below 1 - p2 = "
       << 1.0 - prob.base.p2();
    throw RegimeViolationError(os.str());
  }
  return evaluate(StrategyKind::Concentrate, prob, 0.0, prob.budget);
}

Allocation strategy_equalize(const BudgetProblem& prob) {
  const double spread = prob.base.p2() - prob.base.p1();
  if (prob.budget < spread) {
    std::ostringstream os;
    os << "equalize: budget " << prob.budget << " cannot cover the spread "
       << spread << " (c2 would be negative)";
    throw InfeasibleEqualizeError(os.str());
  }
  const double target = (prob.base.p1() + prob.base.p2() + prob.budget) / 2.0;
  if (target >= 1.0) {
    throw InfeasibleEqualizeError("equalize: midpoint would reach 1 (fully revealing)");
  }
  const double c1 = (spread + prob.budget) / 2.0;
  const double c2 = fit_to_budget(c1, prob.budget - c1, prob.budget);
  return evaluate(StrategyKind::Equalize, prob, c1, c2);
}

AllocationDecision optimize(const BudgetProblem& prob) {
  AllocationDecision decision;
  const double p1 = prob.base.p1();
  const double p2 = prob.base.p2();
  if (prob.concentrate_feasible()) {
    decision.candidates.push_back(strategy_concentrate(prob));
    if (prob.equalize_feasible()) {
      decision.candidates.push_back(strategy_equalize(prob));
    }
  } else {
    // Once the budget can saturate p2 the improvements are capped just below
    // the revealing bound.
    decision.capped = true;
    {
      const double c2 = (1.0 - kRevealingGap) - p2;
      const double c1 = fit_to_budget(
          c2, std::min(prob.budget - c2, (1.0 - kRevealingGap) - p1), prob.budget);
      decision.candidates.push_back(
          evaluate(StrategyKind::CapP2ThenP1, prob, c1, c2));
    }
    if (prob.budget >= 1.0 - p1) {
      const double c1 = (1.0 - kRevealingGap) - p1;
      const double c2 = fit_to_budget(
          c1, std::min(prob.budget - c1, (1.0 - kRevealingGap) - p2), prob.budget);
      decision.candidates.push_back(
          evaluate(StrategyKind::CapP1ThenP2, prob, c1, c2));
    }
    if (prob.equalize_feasible() && (p1 + p2 + prob.budget) / 2.0 < 1.0) {
      decision.candidates.push_back(strategy_equalize(prob));
    }
  }
  decision.chosen_index = argmax_pcc(decision.candidates);
  return decision;
}

Allocation grid_search(const BudgetProblem& prob, double step) {
  if (!(step > 0.0)) throw OutOfRangeError("grid_search: step must be positive");
  const double p1 = prob.base.p1();
  const double p2 = prob.base.p2();
  const double b = prob.budget;

  // Exact named points go first so they win pcc ties against lattice cells.
  Allocation best = evaluate(StrategyKind::GridCell, prob, 0.0, 0.0);
  const auto consider = [&best](const Allocation& cand) {
    if (cand.pcc > best.pcc) best = cand;
  };
  if (prob.concentrate_feasible()) {
    consider(evaluate(StrategyKind::Concentrate, prob, 0.0, b));
  }
  if (prob.equalize_feasible() && (p1 + p2 + b) / 2.0 < 1.0) {
    const double c1 = (p2 - p1 + b) / 2.0;
    consider(evaluate(StrategyKind::Equalize, prob, c1,
                      fit_to_budget(c1, b - c1, b)));
  }
  for (std::int64_t i = 0;; ++i) {
    const double c1 = static_cast<double>(i) * step;
    if (c1 > b || p1 + c1 >= 1.0) break;
    for (std::int64_t j = 0;; ++j) {
      const double c2 = static_cast<double>(j) * step;
      if (c1 + c2 > b || p2 + c2 >= 1.0) break;
      if (i != 0 || j != 0) {
        consider(evaluate(StrategyKind::GridCell, prob, c1, c2));
      }
    }
  }
  return best;
}

AllocationDecision verify_against_grid(const BudgetProblem& prob, double step) {
  AllocationDecision decision = optimize(prob);
  const Allocation best_cell = grid_search(prob, step);
  decision.grid_max_pcc = best_cell.pcc;
  decision.verified_by_grid = best_cell.pcc <= decision.chosen().pcc + 1e-9;
  return decision;
}

MonotonicityReport monotonicity_check(SweepKind kind, const SignalQualities& base,
                                      double c_from, double c_to, double step) {
  if (!(step > 0.0)) throw OutOfRangeError("monotonicity_check: step must be positive");
  if (c_to < c_from) throw OutOfRangeError("monotonicity_check: empty range");

  const auto point_at = [&](double c) -> SignalQualities {
    double p1 = base.p1();
    double p2 = base.p2();
    switch (kind) {
      case SweepKind::P2Sweep:
        p2 += c;
        break;
      case SweepKind::P1Sweep:
        p1 += c;
        break;
      case SweepKind::SpreadSweep: {
        const double mid = 0.5 * (base.p1() + base.p2());
        p1 = mid - c;
        p2 = mid + c;
        break;
      }
    }
    if (!(p1 > 0.5) || !(p2 < 1.0) || !(p1 < p2)) {
      std::ostringstream os;
      os << "monotonicity_check: sweep point c = " << c
         << " leaves the domain 0.5 < p1 < p2 < 1";
      throw DomainViolationError(os.str());
    }
    return SignalQualities(p1, p2);
  };

  MonotonicityReport report;
  report.kind = kind;
  report.points =
      static_cast<std::int64_t>(std::floor((c_to - c_from) / step + 1e-9)) + 1;
  report.jump_tolerance = 10.0 * step;
  report.passed = true;

  double prev_pcc = 0.0;
  double prev_tail = 0.0;
  for (std::int64_t j = 0; j < report.points; ++j) {
    const double c = c_from + static_cast<double>(j) * step;
    const CascadeProbabilities probs =
        pcc(point_at(c), ProbabilityMode::Irrational);
    const double tail = probs.tail_bound.value_or(0.0);
    if (j > 0) {
      const double decrease = prev_pcc - probs.pcc;
      const double jump = std::abs(probs.pcc - prev_pcc);
      const double allowed = 1e-9 + prev_tail + tail;
      report.max_decrease = std::max(report.max_decrease, decrease);
      report.max_jump = std::max(report.max_jump, jump);
      report.decrease_tolerance = std::max(report.decrease_tolerance, allowed);
      if (decrease > allowed || jump > report.jump_tolerance) report.passed = false;
    }
    prev_pcc = probs.pcc;
    prev_tail = tail;
  }
  return report;
}

}  // namespace cascade
