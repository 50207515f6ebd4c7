#include <charconv>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "cascade/analytic.hpp"
#include "cascade/core.hpp"
#include "cascade/optimizer.hpp"
#include "cascade/sim.hpp"

namespace {

using json = nlohmann::ordered_json;

// Shortest representation that round-trips to the exact double.
std::string format_double(double v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

// Exit codes: 0 success, 2 validation, 3 I/O.
constexpr int kExitValidation = 2;
constexpr int kExitIo = 3;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open output path: " + path);
  out << content;
  if (!out) throw IoError("failed writing output path: " + path);
}

void emit(const json& doc, const std::string& out_path) {
  const std::string text = doc.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
  } else {
    write_file(out_path, text);
  }
}

cascade::ProbabilityMode parse_mode(const std::string& name) {
  if (name == "auto") return cascade::ProbabilityMode::Auto;
  if (name == "irrational") return cascade::ProbabilityMode::Irrational;
  if (name == "rational") return cascade::ProbabilityMode::Rational;
  throw cascade::OutOfRangeError("unknown mode: " + name);
}

const char* form_name(cascade::ProbabilityForm form) {
  return form == cascade::ProbabilityForm::IrrationalSeries
             ? "irrational_series"
             : "rational_closed_form";
}

struct ProbArgs {
  double p1 = 0.0, p2 = 0.0;
  std::string mode = "auto";
  double tol = cascade::kSeriesTol;
  std::string out;
};

void run_prob(const ProbArgs& args) {
  const cascade::SignalQualities input =
      cascade::validate_qualities(args.p1, args.p2);
  const cascade::SignalQualities canon =
      input.canonical() ? input : input.swapped();
  const cascade::CascadeProbabilities probs =
      cascade::pcc(input, parse_mode(args.mode), args.tol);

  json doc;
  doc["p1"] = args.p1;
  doc["p2"] = args.p2;
  doc["swapped"] = !input.canonical();
  doc["a"] = cascade::cascade_constant(canon).a;
  doc["mode"] = form_name(probs.form);
  doc["ycas_g"] = probs.ycas_g;
  doc["ycas_b"] = probs.ycas_b;
  doc["ncas_b"] = probs.ncas_b;
  doc["pcc"] = probs.pcc;
  doc["truncation_index"] =
      probs.truncation_index ? json(*probs.truncation_index) : json(nullptr);
  doc["tail_bound"] = probs.tail_bound ? json(*probs.tail_bound) : json(nullptr);
  doc["fraction_r"] = probs.fraction ? json(probs.fraction->r) : json(nullptr);
  doc["fraction_q"] = probs.fraction ? json(probs.fraction->q) : json(nullptr);
  emit(doc, args.out);
}

struct SimulateArgs {
  double p1 = 0.0, p2 = 0.0;
  std::int64_t paths = 0;
  std::uint64_t seed = 0;
  bool pcc = false;
  std::string truth;
  std::string target = "correct";
  std::string out;
};

void run_simulate(const SimulateArgs& args) {
  const cascade::SignalQualities q = cascade::validate_qualities(args.p1, args.p2);
  if (args.pcc != args.truth.empty()) {
    throw cascade::OutOfRangeError("simulate: pass exactly one of --pcc or --truth");
  }

  json doc;
  doc["p1"] = args.p1;
  doc["p2"] = args.p2;
  doc["paths"] = args.paths;
  doc["seed"] = args.seed;

  cascade::BatchEstimate est;
  if (args.pcc) {
    est = cascade::estimate_pcc(q, args.paths, args.seed);
    doc["kind"] = "pcc";
    doc["truth"] = nullptr;
    doc["target"] = nullptr;
  } else {
    if (args.truth != "G" && args.truth != "B") {
      throw cascade::OutOfRangeError("simulate: --truth must be G or B");
    }
    const cascade::TruthState truth =
        args.truth == "G" ? cascade::TruthState::G : cascade::TruthState::B;
    cascade::CascadeStatus target;
    if (args.target == "ycas") {
      target = cascade::CascadeStatus::YCascade;
    } else if (args.target == "ncas") {
      target = cascade::CascadeStatus::NCascade;
    } else if (args.target == "correct") {
      target = truth == cascade::TruthState::G ? cascade::CascadeStatus::YCascade
                                               : cascade::CascadeStatus::NCascade;
    } else {
      throw cascade::OutOfRangeError("simulate: --target must be ycas, ncas or correct");
    }
    est = cascade::estimate(q, truth, target, args.paths, args.seed);
    doc["kind"] = "conditional";
    doc["truth"] = args.truth;
    doc["target"] =
        target == cascade::CascadeStatus::YCascade ? "ycas" : "ncas";
  }
  doc["successes"] = est.successes;
  doc["estimate"] = est.estimate;
  doc["std_error"] = est.std_error;
  doc["ci95_lo"] = est.ci95.lo;
  doc["ci95_hi"] = est.ci95.hi;
  emit(doc, args.out);
}

struct OptimizeArgs {
  double p1 = 0.0, p2 = 0.0, budget = 0.0;
  bool verify = false;
  double grid_step = 0.0025;
  std::string out;
};

void run_optimize(const OptimizeArgs& args) {
  const cascade::SignalQualities input =
      cascade::validate_qualities(args.p1, args.p2);
  const cascade::BudgetProblem prob =
      cascade::make_budget_problem(args.p1, args.p2, args.budget);
  const cascade::AllocationDecision decision =
      args.verify ? cascade::verify_against_grid(prob, args.grid_step)
                  : cascade::optimize(prob);

  json doc;
  doc["p1"] = prob.base.p1();
  doc["p2"] = prob.base.p2();
  doc["swapped"] = !input.canonical();
  doc["budget"] = args.budget;
  doc["concentrate_feasible"] = prob.concentrate_feasible();
  doc["equalize_feasible"] = prob.equalize_feasible();
  doc["capped"] = decision.capped;
  json candidates = json::array();
  for (const cascade::Allocation& cand : decision.candidates) {
    json c;
    c["name"] = cascade::to_string(cand.kind);
    c["c1"] = cand.c1;
    c["c2"] = cand.c2;
    c["p1_new"] = cand.p1_new;
    c["p2_new"] = cand.p2_new;
    c["pcc"] = cand.pcc;
    candidates.push_back(std::move(c));
  }
  doc["candidates"] = std::move(candidates);
  doc["chosen"] = cascade::to_string(decision.chosen().kind);
  doc["chosen_pcc"] = decision.chosen().pcc;
  doc["verified_by_grid"] =
      decision.verified_by_grid ? json(*decision.verified_by_grid) : json(nullptr);
  doc["grid_max_pcc"] =
      decision.grid_max_pcc ? json(*decision.grid_max_pcc) : json(nullptr);
  emit(doc, args.out);
}

struct SweepArgs {
  double p1 = 0.0;
  double from = 0.501, to = 0.999, step = 0.001;
  std::vector<std::string> modes{"irrational", "rational"};
  std::string out;
};

void run_sweep(const SweepArgs& args) {
  if (!(args.from < args.to)) {
    throw cascade::OutOfRangeError("sweep: --from must be below --to");
  }
  if (!(args.step > 0.0)) throw cascade::OutOfRangeError("sweep: --step must be positive");
  cascade::validate_qualities(args.p1, args.from);  // range check on both ends
  cascade::validate_qualities(args.p1, args.to);
  std::vector<std::string> modes;
  for (const std::string& m : args.modes) {
    parse_mode(m);
    if (std::find(modes.begin(), modes.end(), m) == modes.end()) modes.push_back(m);
  }

  const auto rows = static_cast<std::int64_t>(
                        std::floor((args.to - args.from) / args.step + 1e-9)) + 1;
  std::ostringstream csv;
  csv << "p2,a,mode,pcc,ycas_G,ncas_B\n";
  for (std::int64_t j = 0; j < rows; ++j) {
    const double p2 = args.from + static_cast<double>(j) * args.step;
    const cascade::SignalQualities input = cascade::validate_qualities(args.p1, p2);
    const cascade::SignalQualities canon =
        input.canonical() ? input : input.swapped();
    const double a = cascade::cascade_constant(canon).a;
    for (const std::string& m : modes) {
      const cascade::CascadeProbabilities probs =
          cascade::pcc(input, parse_mode(m));
      csv << format_double(p2) << ',' << format_double(a) << ',' << m << ','
          << format_double(probs.pcc) << ',' << format_double(probs.ycas_g)
          << ',' << format_double(probs.ncas_b) << '\n';
    }
  }
  write_file(args.out, csv.str());
}

struct CensusArgs {
  double p1 = 0.0;
  double eps = 0.0;
  std::int64_t max_den = 0;
  std::string out;
};

void run_census(const CensusArgs& args) {
  const cascade::CensusReport report =
      cascade::rational_census(args.p1, args.eps, args.max_den);

  std::ostringstream csv;
  csv << "r,q,p2,gap_G,gap_B,gap_pcc\n";
  for (const cascade::CensusEntry& e : report.entries) {
    csv << e.r << ',' << e.q << ',' << format_double(e.p2) << ','
        << format_double(e.gap_g) << ',' << format_double(e.gap_b) << ','
        << format_double(e.gap_pcc) << '\n';
  }
  csv << "# exceed_count=" << report.exceed_count
      << " exceed_G=" << report.exceed_g << " exceed_B=" << report.exceed_b
      << " theoretical_bound=" << format_double(report.theoretical_bound)
      << " entries=" << report.entries.size() << " skipped=" << report.skipped
      << '\n';
  write_file(args.out, csv.str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Correct-cascade probabilities for sequential observational learning: "
               "closed forms, simulation, and quality-improvement budgets"};
  app.require_subcommand(1);

  ProbArgs prob_args;
  CLI::App* prob = app.add_subcommand("prob", "Cascade probabilities for a quality pair");
  prob->add_option("--p1", prob_args.p1, "quality P(H|G)")->required();
  prob->add_option("--p2", prob_args.p2, "quality P(L|B)")->required();
  prob->add_option("--mode", prob_args.mode, "auto|irrational|rational")
      ->default_val("auto");
  prob->add_option("--tol", prob_args.tol, "series truncation tolerance")
      ->default_val(cascade::kSeriesTol);
  prob->add_option("--out", prob_args.out, "write JSON here instead of stdout");

  SimulateArgs sim_args;
  CLI::App* sim = app.add_subcommand("simulate", "Monte-Carlo estimate of cascade probabilities");
  sim->add_option("--p1", sim_args.p1)->required();
  sim->add_option("--p2", sim_args.p2)->required();
  sim->add_option("--paths", sim_args.paths, "number of independent paths")->required();
  sim->add_option("--seed", sim_args.seed, "64-bit unsigned seed")->default_val(0);
  sim->add_flag("--pcc", sim_args.pcc, "estimate the correct-cascade probability");
  sim->add_option("--truth", sim_args.truth, "condition on a truth: G or B");
  sim->add_option("--target", sim_args.target, "ycas|ncas|correct (with --truth)")
      ->default_val("correct");
  sim->add_option("--out", sim_args.out);

  OptimizeArgs opt_args;
  CLI::App* opt = app.add_subcommand("optimize", "Allocate an improvement budget across the qualities");
  opt->add_option("--p1", opt_args.p1)->required();
  opt->add_option("--p2", opt_args.p2)->required();
  opt->add_option("--budget", opt_args.budget, "total quality improvement available")->required();
  opt->add_flag("--verify", opt_args.verify, "check the decision against a grid search");
  opt->add_option("--grid-step", opt_args.grid_step)->default_val(0.0025);
  opt->add_option("--out", opt_args.out);

  SweepArgs sweep_args;
  CLI::App* sweep = app.add_subcommand("sweep", "CSV of probabilities over a p2 grid");
  sweep->add_option("--p1", sweep_args.p1)->required();
  sweep->add_option("--from", sweep_args.from, "first p2")->default_val(0.501);
  sweep->add_option("--to", sweep_args.to, "last p2")->default_val(0.999);
  sweep->add_option("--step", sweep_args.step)->default_val(0.001);
  sweep->add_option("--mode", sweep_args.modes, "modes to evaluate (repeatable)");
  sweep->add_option("--out", sweep_args.out, "output CSV path")->required();

  CensusArgs census_args;
  CLI::App* census = app.add_subcommand("census", "CSV census of rational-constant formula gaps");
  census->add_option("--p1", census_args.p1)->required();
  census->add_option("--eps", census_args.eps, "gap threshold")->required();
  census->add_option("--max-den", census_args.max_den, "bound on r (and q <= r)")->required();
  census->add_option("--out", census_args.out, "output CSV path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }

  try {
    if (prob->parsed()) run_prob(prob_args);
    if (sim->parsed()) run_simulate(sim_args);
    if (opt->parsed()) run_optimize(opt_args);
    if (sweep->parsed()) run_sweep(sweep_args);
    if (census->parsed()) run_census(census_args);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const cascade::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return 0;
}
