#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "cascade/analytic.hpp"
#include "cascade/core.hpp"
#include "cascade/optimizer.hpp"
#include "cascade/sim.hpp"

namespace py = pybind11;
using namespace pybind11::literals;

namespace {

std::string repr_probs(const cascade::CascadeProbabilities& p) {
  std::ostringstream os;
  os << "CascadeProbabilities(pcc=" << p.pcc << ", ycas_g=" << p.ycas_g
     << ", ncas_b=" << p.ncas_b << ")";
  return os.str();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Correct-cascade probabilities for sequential observational "
            "learning: closed forms, Monte-Carlo simulation, and "
            "quality-improvement budget allocation.";

  py::register_exception<cascade::Error>(m, "CascadeError");

  py::enum_<cascade::TruthState>(m, "TruthState")
      .value("G", cascade::TruthState::G)
      .value("B", cascade::TruthState::B);
  py::enum_<cascade::Action>(m, "Action")
      .value("Y", cascade::Action::Y)
      .value("N", cascade::Action::N);
  py::enum_<cascade::CascadeStatus>(m, "CascadeStatus")
      .value("InPlay", cascade::CascadeStatus::InPlay)
      .value("YCascade", cascade::CascadeStatus::YCascade)
      .value("NCascade", cascade::CascadeStatus::NCascade);
  py::enum_<cascade::WalkRegion>(m, "WalkRegion")
      .value("LowerSegment", cascade::WalkRegion::LowerSegment)
      .value("Pivot", cascade::WalkRegion::Pivot)
      .value("UpperSegment", cascade::WalkRegion::UpperSegment);
  py::enum_<cascade::ProbabilityMode>(m, "ProbabilityMode")
      .value("Auto", cascade::ProbabilityMode::Auto)
      .value("Irrational", cascade::ProbabilityMode::Irrational)
      .value("Rational", cascade::ProbabilityMode::Rational);
  py::enum_<cascade::ProbabilityForm>(m, "ProbabilityForm")
      .value("IrrationalSeries", cascade::ProbabilityForm::IrrationalSeries)
      .value("RationalClosedForm", cascade::ProbabilityForm::RationalClosedForm);
  py::enum_<cascade::StrategyKind>(m, "StrategyKind")
      .value("Concentrate", cascade::StrategyKind::Concentrate)
      .value("Equalize", cascade::StrategyKind::Equalize)
      .value("CapP2ThenP1", cascade::StrategyKind::CapP2ThenP1)
      .value("CapP1ThenP2", cascade::StrategyKind::CapP1ThenP2)
      .value("GridCell", cascade::StrategyKind::GridCell);
  py::enum_<cascade::SweepKind>(m, "SweepKind")
      .value("P2Sweep", cascade::SweepKind::P2Sweep)
      .value("P1Sweep", cascade::SweepKind::P1Sweep)
      .value("SpreadSweep", cascade::SweepKind::SpreadSweep);

  py::class_<cascade::SignalQualities>(m, "SignalQualities")
      .def(py::init<double, double>(), "p1"_a, "p2"_a)
      .def_property_readonly("p1", &cascade::SignalQualities::p1)
      .def_property_readonly("p2", &cascade::SignalQualities::p2)
      .def("canonical", &cascade::SignalQualities::canonical)
      .def("swapped", &cascade::SignalQualities::swapped)
      .def("__repr__", [](const cascade::SignalQualities& q) {
        std::ostringstream os;
        os << "SignalQualities(" << q.p1() << ", " << q.p2() << ")";
        return os.str();
      });

  py::class_<cascade::Rationality>(m, "Rationality")
      .def_readonly("is_rational", &cascade::Rationality::is_rational)
      .def_readonly("r", &cascade::Rationality::r)
      .def_readonly("q", &cascade::Rationality::q);

  py::class_<cascade::CascadeConstant>(m, "CascadeConstant")
      .def_readonly("a", &cascade::CascadeConstant::a)
      .def_readonly("rationality", &cascade::CascadeConstant::rationality)
      .def("is_rational", &cascade::CascadeConstant::is_rational);

  py::class_<cascade::WalkState>(m, "WalkState")
      .def(py::init<>())
      .def_readonly("yes_count", &cascade::WalkState::yes_count)
      .def_readonly("no_count", &cascade::WalkState::no_count)
      .def_readonly("h", &cascade::WalkState::h)
      .def_readonly("exact_state", &cascade::WalkState::exact_state)
      .def_readonly("status", &cascade::WalkState::status);

  m.def("validate_qualities", &cascade::validate_qualities, "p1"_a, "p2"_a);
  m.def("cascade_constant", &cascade::cascade_constant, "qualities"_a);
  m.def("classify_rationality", &cascade::classify_rationality, "a"_a,
        "tol"_a = cascade::kRationalityTol,
        "max_den"_a = cascade::kRationalityMaxDen);
  m.def("k_index", &cascade::k_index, "i"_a, "constant"_a);
  m.def("step", &cascade::step, "state"_a, "action"_a, "constant"_a);
  m.def("region_of", &cascade::region_of, "state"_a, "constant"_a);
  m.def("likelihood_ratio", &cascade::likelihood_ratio, "state"_a, "qualities"_a);

  py::class_<cascade::SeriesValue>(m, "SeriesValue")
      .def_readonly("value", &cascade::SeriesValue::value)
      .def_readonly("truncation_index", &cascade::SeriesValue::truncation_index)
      .def_readonly("tail_bound", &cascade::SeriesValue::tail_bound);

  py::class_<cascade::CascadeProbabilities>(m, "CascadeProbabilities")
      .def_readonly("ycas_g", &cascade::CascadeProbabilities::ycas_g)
      .def_readonly("ycas_b", &cascade::CascadeProbabilities::ycas_b)
      .def_readonly("ncas_b", &cascade::CascadeProbabilities::ncas_b)
      .def_readonly("pcc", &cascade::CascadeProbabilities::pcc)
      .def_readonly("form", &cascade::CascadeProbabilities::form)
      .def_readonly("truncation_index",
                    &cascade::CascadeProbabilities::truncation_index)
      .def_readonly("tail_bound", &cascade::CascadeProbabilities::tail_bound)
      .def_readonly("fraction", &cascade::CascadeProbabilities::fraction)
      .def("__repr__", &repr_probs);

  m.def("ycas_irrational", &cascade::ycas_irrational, "qualities"_a, "truth"_a,
        "tol"_a = cascade::kSeriesTol);
  m.def("ycas_rational", &cascade::ycas_rational, "qualities"_a, "r"_a, "q"_a,
        "truth"_a);
  m.def("pcc", &cascade::pcc, "qualities"_a,
        "mode"_a = cascade::ProbabilityMode::Auto,
        "tol"_a = cascade::kSeriesTol);
  m.def("solve_p2_for_a", &cascade::solve_p2_for_a, "p1"_a, "a_target"_a,
        "tol"_a = 1e-12);

  py::class_<cascade::RationalGap>(m, "RationalGap")
      .def_readonly("gap_g", &cascade::RationalGap::gap_g)
      .def_readonly("gap_b", &cascade::RationalGap::gap_b)
      .def_readonly("gap_pcc", &cascade::RationalGap::gap_pcc)
      .def_readonly("p2", &cascade::RationalGap::p2);
  m.def("rational_gap", &cascade::rational_gap, "p1"_a, "r"_a, "q"_a);

  py::class_<cascade::CensusEntry>(m, "CensusEntry")
      .def_readonly("r", &cascade::CensusEntry::r)
      .def_readonly("q", &cascade::CensusEntry::q)
      .def_readonly("p2", &cascade::CensusEntry::p2)
      .def_readonly("gap_g", &cascade::CensusEntry::gap_g)
      .def_readonly("gap_b", &cascade::CensusEntry::gap_b)
      .def_readonly("gap_pcc", &cascade::CensusEntry::gap_pcc);

  py::class_<cascade::CensusReport>(m, "CensusReport")
      .def_readonly("epsilon", &cascade::CensusReport::epsilon)
      .def_readonly("max_den", &cascade::CensusReport::max_den)
      .def_readonly("entries", &cascade::CensusReport::entries)
      .def_readonly("skipped", &cascade::CensusReport::skipped)
      .def_readonly("exceed_g", &cascade::CensusReport::exceed_g)
      .def_readonly("exceed_b", &cascade::CensusReport::exceed_b)
      .def_readonly("exceed_count", &cascade::CensusReport::exceed_count)
      .def_readonly("theoretical_bound", &cascade::CensusReport::theoretical_bound);
  m.def("rational_census", &cascade::rational_census, "p1"_a, "epsilon"_a,
        "max_den"_a);

  py::class_<cascade::Interval>(m, "Interval")
      .def_readonly("lo", &cascade::Interval::lo)
      .def_readonly("hi", &cascade::Interval::hi);

  py::class_<cascade::BatchEstimate>(m, "BatchEstimate")
      .def_readonly("paths", &cascade::BatchEstimate::paths)
      .def_readonly("successes", &cascade::BatchEstimate::successes)
      .def_readonly("estimate", &cascade::BatchEstimate::estimate)
      .def_readonly("std_error", &cascade::BatchEstimate::std_error)
      .def_readonly("ci95", &cascade::BatchEstimate::ci95)
      .def_readonly("seed", &cascade::BatchEstimate::seed);

  py::class_<cascade::PathOutcome>(m, "PathOutcome")
      .def_readonly("terminal", &cascade::PathOutcome::terminal)
      .def_readonly("yes_count", &cascade::PathOutcome::yes_count)
      .def_readonly("no_count", &cascade::PathOutcome::no_count)
      .def_readonly("steps", &cascade::PathOutcome::steps);

  m.def(
      "simulate_path",
      [](const cascade::SignalQualities& q, cascade::TruthState truth,
         std::uint64_t seed, std::uint64_t path_index) {
        cascade::PathRng rng = cascade::path_rng(seed, path_index);
        return cascade::simulate_path(q, truth, rng);
      },
      "qualities"_a, "truth"_a, "seed"_a, "path_index"_a = 0);
  m.def("estimate", &cascade::estimate, "qualities"_a, "truth"_a, "target"_a,
        "paths"_a, "seed"_a);
  m.def("estimate_pcc", &cascade::estimate_pcc, "qualities"_a, "paths"_a,
        "seed"_a);

  py::class_<cascade::BudgetProblem>(m, "BudgetProblem")
      .def_readonly("base", &cascade::BudgetProblem::base)
      .def_readonly("budget", &cascade::BudgetProblem::budget)
      .def("concentrate_feasible", &cascade::BudgetProblem::concentrate_feasible)
      .def("equalize_feasible", &cascade::BudgetProblem::equalize_feasible);
  m.def("make_budget_problem", &cascade::make_budget_problem, "p1"_a, "p2"_a,
        "b"_a);

  py::class_<cascade::Allocation>(m, "Allocation")
      .def_readonly("kind", &cascade::Allocation::kind)
      .def_readonly("c1", &cascade::Allocation::c1)
      .def_readonly("c2", &cascade::Allocation::c2)
      .def_readonly("p1_new", &cascade::Allocation::p1_new)
      .def_readonly("p2_new", &cascade::Allocation::p2_new)
      .def_readonly("pcc", &cascade::Allocation::pcc);

  py::class_<cascade::AllocationDecision>(m, "AllocationDecision")
      .def_readonly("candidates", &cascade::AllocationDecision::candidates)
      .def_readonly("chosen_index", &cascade::AllocationDecision::chosen_index)
      .def_readonly("capped", &cascade::AllocationDecision::capped)
      .def_readonly("verified_by_grid",
                    &cascade::AllocationDecision::verified_by_grid)
      .def_readonly("grid_max_pcc", &cascade::AllocationDecision::grid_max_pcc)
      .def("chosen", &cascade::AllocationDecision::chosen,
           py::return_value_policy::copy);

  m.def("strategy_concentrate", &cascade::strategy_concentrate, "problem"_a);
  m.def("strategy_equalize", &cascade::strategy_equalize, "problem"_a);
  m.def("optimize", &cascade::optimize, "problem"_a);
  m.def("grid_search", &cascade::grid_search, "problem"_a, "step"_a);
  m.def("verify_against_grid", &cascade::verify_against_grid, "problem"_a,
        "step"_a);

  py::class_<cascade::MonotonicityReport>(m, "MonotonicityReport")
      .def_readonly("kind", &cascade::MonotonicityReport::kind)
      .def_readonly("points", &cascade::MonotonicityReport::points)
      .def_readonly("max_decrease", &cascade::MonotonicityReport::max_decrease)
      .def_readonly("max_jump", &cascade::MonotonicityReport::max_jump)
      .def_readonly("decrease_tolerance",
                    &cascade::MonotonicityReport::decrease_tolerance)
      .def_readonly("jump_tolerance", &cascade::MonotonicityReport::jump_tolerance)
      .def_readonly("passed", &cascade::MonotonicityReport::passed);
  m.def("monotonicity_check", &cascade::monotonicity_check, "kind"_a, "base"_a,
        "c_from"_a, "c_to"_a, "step"_a);
}
