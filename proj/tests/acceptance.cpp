// Acceptance suite: end-to-end checks of the analytic anchors, the
// p2 sweep, Monte-Carlo/analytic agreement, the optimizer oracle,
// the census bound, and the cross-module invariants. Prints one line
// per criterion; exits non-zero if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "cascade/analytic.hpp"
#include "cascade/core.hpp"
#include "cascade/optimizer.hpp"
#include "cascade/sim.hpp"

using namespace cascade;

namespace {

struct Criterion {
  std::string name;
  double budget_ms;
  std::function<bool(std::string&)> run;
};

bool expect(bool ok, const std::string& what, std::string& detail) {
  if (!ok && detail.empty()) detail = what;
  return ok;
}

// --- criterion 1: symmetric rational anchor ------------------------------

bool criterion_rational_anchor(std::string& detail) {
  const double value = pcc(SignalQualities(0.7, 0.7), ProbabilityMode::Rational).pcc;
  bool ok = expect(std::abs(value - 49.0 / 58.0) <= 1e-12,
                   "pcc != 49/58 within 1e-12", detail);
  ok &= expect(std::abs(value - 0.84) <= 0.005, "pcc not within 0.005 of 0.84", detail);
  return ok;
}

// --- criterion 2: symmetric irrational anchor ----------------------------

bool criterion_irrational_anchor(std::string& detail) {
  const double value = pcc(SignalQualities(0.7, 0.7), ProbabilityMode::Irrational).pcc;
  return expect(std::abs(value - 0.7532) <= 0.005,
                "pcc not within 0.005 of 0.7532", detail);
}

// --- criterion 3: p2 sweep -------------------------------------------

bool criterion_sweep(std::string& detail) {
  const double p1 = 0.7;
  const double from = 0.501, to = 0.999, step = 0.001;
  const auto rows =
      static_cast<std::int64_t>(std::floor((to - from) / step + 1e-9)) + 1;
  bool ok = expect(rows == 499, "row count != 499", detail);

  double prev_pcc = 0.0, prev_tail = 0.0, prev_p2 = 0.0;
  double max_jump = 0.0, gap_at_symmetric = -1.0;
  for (std::int64_t j = 0; j < rows; ++j) {
    const double p2 = from + static_cast<double>(j) * step;
    const SignalQualities q(p1, p2);
    const CascadeProbabilities irr = pcc(q, ProbabilityMode::Irrational);
    const double tail = irr.tail_bound.value_or(0.0);
    if (j > 0) {
      max_jump = std::max(max_jump, std::abs(irr.pcc - prev_pcc));
      if (prev_p2 >= 0.701 - 1e-12) {
        ok &= expect(prev_pcc - irr.pcc <= 1e-9 + prev_tail + tail,
                     "irrational curve decreases beyond p2 = 0.701", detail);
      }
    }
    if (std::abs(p2 - 0.700) < step / 2.0) {
      const double rational = pcc(q, ProbabilityMode::Rational).pcc;
      gap_at_symmetric = rational - irr.pcc;
    } else {
      // exercise the rational-mode classification across the grid
      ok &= expect(std::isfinite(pcc(q, ProbabilityMode::Rational).pcc),
                   "rational-mode value not finite", detail);
    }
    prev_pcc = irr.pcc;
    prev_tail = tail;
    prev_p2 = p2;
  }
  ok &= expect(max_jump < 0.01, "adjacent |dpcc| >= 0.01 on the irrational curve",
               detail);
  ok &= expect(std::abs(gap_at_symmetric - 0.0917) <= 0.010,
               "mode gap at p2 = 0.700 not within 0.0917 +- 0.010", detail);
  return ok;
}

// --- criterion 4: Monte-Carlo vs analytic --------------------------------

bool criterion_monte_carlo(std::string& detail) {
  const std::int64_t paths = 1000000;
  const double grid[3] = {0.55, 0.7, 0.85};
  bool ok = true;
  std::uint64_t seed = 1000;
  for (int i = 0; i < 3; ++i) {
    for (int j = i; j < 3; ++j) {
      const SignalQualities q(grid[i], grid[j]);
      const BatchEstimate est = estimate_pcc(q, paths, seed++);
      const double analytic = pcc(q).pcc;
      ok &= expect(std::abs(est.estimate - analytic) <= 4.0 * est.std_error,
                   "estimate_pcc off by more than 4 sigma at (" +
                       std::to_string(grid[i]) + ", " + std::to_string(grid[j]) + ")",
                   detail);
    }
  }
  return ok;
}

// --- criterion 5: distribution of No counts ------------------------------

bool criterion_distribution(std::string& detail) {
  const SignalQualities q(0.7, 0.8);
  const CascadeConstant cc = cascade_constant(q);
  const std::int64_t paths = 1000000;
  std::map<std::int64_t, std::int64_t> counts;
  for (std::int64_t j = 0; j < paths; ++j) {
    PathRng rng = path_rng(2024, static_cast<std::uint64_t>(j));
    const PathOutcome out = simulate_path(q, cc, TruthState::G, rng);
    if (out.terminal == CascadeStatus::YCascade) counts[out.no_count] += 1;
  }
  const double expected[3] = {0.700, 0.147, 0.0309};
  bool ok = true;
  for (int i = 0; i < 3; ++i) {
    const double freq =
        static_cast<double>(counts[i]) / static_cast<double>(paths);
    const double sigma =
        std::sqrt(expected[i] * (1.0 - expected[i]) / static_cast<double>(paths));
    ok &= expect(std::abs(freq - expected[i]) <= 4.0 * sigma,
                 "No-count frequency off at i = " + std::to_string(i), detail);
  }
  return ok;
}

// --- criterion 6: optimizer vs grid oracle -------------------------------

bool criterion_optimizer(std::string& detail) {
  bool ok = true;

  const AllocationDecision worked1 = optimize(make_budget_problem(0.6, 0.7, 0.15));
  ok &= expect(worked1.chosen().kind == StrategyKind::Equalize,
               "(0.6, 0.7, 0.15) did not choose equalize", detail);
  ok &= expect(std::abs(worked1.chosen().pcc - 0.874220374220374) <= 1e-6,
               "(0.6, 0.7, 0.15) pcc not within 1e-6 of 0.874220", detail);

  const AllocationDecision worked2 = optimize(make_budget_problem(0.55, 0.6, 0.35));
  ok &= expect(worked2.chosen().kind == StrategyKind::Concentrate,
               "(0.55, 0.6, 0.35) did not choose concentrate", detail);
  ok &= expect(std::abs(worked2.chosen().pcc - 0.90391) <= 5e-4,
               "(0.55, 0.6, 0.35) pcc not within 5e-4 of 0.90391", detail);

  std::mt19937_64 gen(20250810);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const double p1 = 0.505 + 0.445 * unit(gen);
    const double p2 = p1 + (0.97 - p1) * unit(gen);
    const double b = (1.0 - p2) * (0.05 + 0.9 * unit(gen));
    const BudgetProblem prob = make_budget_problem(p1, p2, b);
    const AllocationDecision decision = verify_against_grid(prob, 0.0025);
    ok &= expect(*decision.grid_max_pcc <= decision.chosen().pcc + 1e-9,
                 "grid maximum beat the chosen strategy at trial " +
                     std::to_string(trial),
                 detail);
  }
  return ok;
}

// --- criterion 7: census bound -------------------------------------------

bool criterion_census(std::string& detail) {
  const CensusReport report = rational_census(0.7, 0.05, 32);
  const double bound = std::floor(report.theoretical_bound);  // 28
  bool ok = expect(static_cast<double>(report.exceed_g) <= bound,
                   "exceed count for gap_G above the bound", detail);
  ok &= expect(static_cast<double>(report.exceed_b) <= bound,
               "exceed count for gap_B above the bound", detail);
  for (const CensusEntry& entry : report.entries) {
    if (entry.r >= 9) {
      ok &= expect(entry.gap_g < 1e-3 && entry.gap_b < 1e-3,
                   "gap at r >= 9 not below 1e-3", detail);
    }
  }
  return ok;
}

// --- criterion 8: invariant suite ----------------------------------------

bool criterion_invariants(std::string& detail) {
  bool ok = true;
  std::mt19937_64 gen(808);
  std::uniform_real_distribution<double> dist(0.505, 0.97);

  // swap symmetry and tail soundness over random pairs
  for (int trial = 0; trial < 100; ++trial) {
    double p1 = dist(gen), p2 = dist(gen);
    if (p1 > p2) std::swap(p1, p2);
    const CascadeProbabilities fwd = pcc(SignalQualities(p1, p2));
    const CascadeProbabilities bwd = pcc(SignalQualities(p2, p1));
    const double allowed = 2.0 * fwd.tail_bound.value_or(1e-15);
    ok &= expect(std::abs(fwd.pcc - bwd.pcc) <= allowed, "swap symmetry", detail);

    const SignalQualities q(p1, p2);
    for (TruthState truth : {TruthState::G, TruthState::B}) {
      const SeriesValue coarse = ycas_irrational(q, truth, 1e-6);
      const SeriesValue fine = ycas_irrational(q, truth, 1e-12);
      ok &= expect(std::abs(coarse.value - fine.value) <= coarse.tail_bound,
                   "tail-bound soundness", detail);
    }
  }

  // closed-form identity at r = q = 1
  for (int i = 51; i <= 99; ++i) {
    const double p = static_cast<double>(i) / 100.0;
    const double expectv = p * p / (1.0 - 2.0 * p * (1.0 - p));
    ok &= expect(std::abs(ycas_rational(SignalQualities(p, p), 1, 1, TruthState::G) -
                          expectv) <= 1e-15,
                 "closed-form identity at r = q = 1", detail);
  }

  // Action-region audit: 1e4 paths, non-terminal actions only from their regions
  {
    const SignalQualities q(0.7, 0.8);
    const CascadeConstant cc = cascade_constant(q);
    for (std::int64_t j = 0; j < 10000; ++j) {
      PathRng rng = path_rng(123, static_cast<std::uint64_t>(j));
      WalkState s;
      while (s.status == CascadeStatus::InPlay) {
        const double h_before = s.h;
        const Action action = rng.next_unit() < q.p1() ? Action::Y : Action::N;
        const WalkState next = step(s, action, cc);
        if (next.status == CascadeStatus::InPlay) {
          if (action == Action::Y) {
            ok &= expect(h_before >= cc.a - 1.0 - kBoundaryTol &&
                             h_before <= cc.a + kBoundaryTol,
                         "Y step outside [a-1, a]", detail);
          } else {
            ok &= expect(h_before >= -1.0 - kBoundaryTol &&
                             h_before <= cc.a - 1.0 + kBoundaryTol,
                         "N step outside [-1, a-1]", detail);
          }
        }
        s = next;
      }
    }
  }

  // determinism and worker-order independence
  {
    const SignalQualities q(0.7, 0.8);
    const BatchEstimate once = estimate_pcc(q, 100000, 99);
    const BatchEstimate twice = estimate_pcc(q, 100000, 99);
    ok &= expect(once.successes == twice.successes && once.estimate == twice.estimate,
                 "estimate_pcc not deterministic", detail);

    const CascadeConstant cc = cascade_constant(q);
    std::int64_t forward = 0, backward = 0;
    for (std::int64_t j = 0; j < 20000; ++j) {
      PathRng rng = path_rng(99, static_cast<std::uint64_t>(j));
      forward += simulate_path(q, cc, TruthState::G, rng).terminal ==
                 CascadeStatus::YCascade;
    }
    for (std::int64_t j = 19999; j >= 0; --j) {
      PathRng rng = path_rng(99, static_cast<std::uint64_t>(j));
      backward += simulate_path(q, cc, TruthState::G, rng).terminal ==
                  CascadeStatus::YCascade;
    }
    ok &= expect(forward == backward, "path order changed the tally", detail);
  }
  return ok;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {"symmetric rational anchor pcc(0.7,0.7) = 49/58", 1.0, criterion_rational_anchor},
      {"symmetric irrational anchor pcc(0.7,0.7) = 0.7532 +- 0.005", 10.0,
       criterion_irrational_anchor},
      {"p2 sweep: continuity, monotonicity, 0.0917 mode gap", 10000.0,
       criterion_sweep},
      {"Monte-Carlo/analytic agreement on 6 canonical pairs", 60000.0,
       criterion_monte_carlo},
      {"No-count distribution at (0.7,0.8) under G", 60000.0, criterion_distribution},
      {"optimizer vs grid oracle, 20 sampled problems", 300000.0, criterion_optimizer},
      {"rational census bound at p1=0.7, eps=0.05", 30000.0, criterion_census},
      {"invariant suites (symmetry, tails, identity, audit, determinism)", 120000.0,
       criterion_invariants},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    std::string detail;
    const auto start = std::chrono::steady_clock::now();
    bool ok = false;
    try {
      ok = criteria[i].run(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    const double elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                  start)
            .count();
    if (elapsed_ms > criteria[i].budget_ms) {
      ok = false;
      if (detail.empty()) detail = "runtime budget exceeded";
    }
    std::printf("[%s] criterion %zu: %s (%.2f ms%s%s)\n", ok ? "PASS" : "FAIL",
                i + 1, criteria[i].name.c_str(), elapsed_ms,
                detail.empty() ? "" : "; ", detail.c_str());
    if (!ok) ++failures;
  }
  if (failures == 0) {
    std::printf("acceptance: all %zu criteria passed\n", criteria.size());
  } else {
    std::printf("acceptance: %d of %zu criteria FAILED\n", failures, criteria.size());
  }
  return failures == 0 ? 0 : 1;
}
