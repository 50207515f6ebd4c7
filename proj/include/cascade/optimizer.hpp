#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cascade/analytic.hpp"
#include "cascade/core.hpp"

namespace cascade {

/// Gap kept below 1 when the budget is large enough to hit a quality's
/// upper bound (qualities may never become fully revealing). 1e-5 is the
/// closest approach whose series evaluation stays well inside the term
/// cap at the default tolerance.
inline constexpr double kRevealingGap = 1e-5;

/// A quality-improvement problem: canonical base pair and a budget in
/// probability units. Concentrating is feasible while b < 1 - p2 (the
/// whole budget fits under the revealing bound of p2); in that regime
/// one of the two named strategies attains the optimum. Equalizing is
/// feasible only when the budget covers the spread p2 - p1.
struct BudgetProblem {
  SignalQualities base;
  double budget = 0.0;

  bool concentrate_feasible() const { return budget < 1.0 - base.p2(); }
  bool equalize_feasible() const { return budget >= base.p2() - base.p1(); }
};

/// Canonicalizes the pair (swapping if needed) and validates b >= 0.
BudgetProblem make_budget_problem(double p1, double p2, double b);

enum class StrategyKind {
  Concentrate,    // whole budget on p2
  Equalize,       // both qualities to (p1+p2+b)/2
  CapP2ThenP1,    // p2 to 1 - kRevealingGap, remainder on p1
  CapP1ThenP2,    // p1 to 1 - kRevealingGap, remainder on p2
  GridCell,
};

std::string to_string(StrategyKind kind);

/// One candidate budget split with its resulting correct-cascade
/// probability (always evaluated in Auto mode).
struct Allocation {
  StrategyKind kind = StrategyKind::GridCell;
  double c1 = 0.0;
  double c2 = 0.0;
  double p1_new = 0.0;
  double p2_new = 0.0;
  double pcc = 0.0;
  ProbabilityForm form = ProbabilityForm::IrrationalSeries;
};

/// The candidate set and the argmax choice, plus optional grid
/// verification results.
struct AllocationDecision {
  std::vector<Allocation> candidates;
  std::size_t chosen_index = 0;
  bool capped = false;  // the general-case quality cap was applied
  std::optional<bool> verified_by_grid;
  std::optional<double> grid_max_pcc;

  const Allocation& chosen() const { return candidates[chosen_index]; }
};

/// c1 = 0, c2 = b. Only valid while the budget fits under 1 - p2.
Allocation strategy_concentrate(const BudgetProblem& prob);

/// p1' = p2' = (p1+p2+b)/2, exploiting the symmetric-point closed form.
/// Throws InfeasibleEqualizeError when b < p2 - p1 (c2 would be negative)
/// or the midpoint reaches 1.
Allocation strategy_equalize(const BudgetProblem& prob);

/// Evaluates the candidate strategies and picks the argmax. Inside the
/// feasible region the candidates are Concentrate plus Equalize when
/// feasible; beyond it, capped variants that push one quality to
/// 1 - kRevealingGap and spend the remainder on the other.
AllocationDecision optimize(const BudgetProblem& prob);

/// Exhaustive lattice search over {c1 = i*step, c2 = j*step} subject to
/// c1 + c2 <= b and both new qualities < 1, always including the exact
/// Equalize point (when feasible) and the exact Concentrate corner.
/// Verification oracle only; not an optimization algorithm.
Allocation grid_search(const BudgetProblem& prob, double step);

/// Runs optimize, then checks the decision against grid_search and fills
/// the verification fields of the decision.
AllocationDecision verify_against_grid(const BudgetProblem& prob, double step);

enum class SweepKind { P2Sweep, P1Sweep, SpreadSweep };

/// One-dimensional monotonicity audit of the series-model pcc along a
/// quality sweep: P2Sweep varies (p1, p2+c), P1Sweep varies (p1+c, p2),
/// SpreadSweep varies (p-c, p+c) around the midpoint of the base pair.
/// Passes when no adjacent decrease exceeds 1e-9 plus the truncation
/// tails and no adjacent jump exceeds 10*step.
struct MonotonicityReport {
  SweepKind kind = SweepKind::P2Sweep;
  std::int64_t points = 0;
  double max_decrease = 0.0;
  double max_jump = 0.0;
  double decrease_tolerance = 0.0;
  double jump_tolerance = 0.0;
  bool passed = false;
};

MonotonicityReport monotonicity_check(SweepKind kind, const SignalQualities& base,
                                      double c_from, double c_to, double step);

}  // namespace cascade
