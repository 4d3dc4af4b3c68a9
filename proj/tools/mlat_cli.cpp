#include "mlat/constraints.hpp"
#include "mlat/io.hpp"
#include "mlat/quadrics.hpp"
#include "mlat/simulate.hpp"
#include "mlat/solver.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>

namespace {

constexpr int kOk = 0;
constexpr int kInputError = 1;
constexpr int kEmpty = 2;

struct Options {
  std::string path;
  std::optional<double> tol_rank;
  std::optional<double> tol_geom;
  std::optional<unsigned long long> seed;
  std::optional<int> trials;
  std::optional<int> resolution;
  std::string surface;
};

mlat::ScenarioFile load_scenario(const Options& opt) {
  auto file = mlat::scenario_from_json(mlat::read_json_file(opt.path));
  if (opt.tol_rank) file.scenario.tol.rank_rel = *opt.tol_rank;
  if (opt.tol_geom) file.scenario.tol.geom_abs = *opt.tol_geom;
  file.scenario.tol.validate();
  return file;
}

mlat::Json diagnostics(const mlat::SquaredSolution& sq, const mlat::Scenario& sc) {
  mlat::Json d;
  d["rank_a"] = sq.rows.rank_a;
  d["rank_b"] = sq.rows.rank_b;
  d["independent_rows"] = sq.rows.independent;
  d["redundant_rows"] = sq.rows.redundant;
  d["redundant_residuals"] = sq.redundant_residuals;
  d["frame"] = mlat::to_json(sq.frame);
  if (sq.frame.full_rank())
    d["shape"] = mlat::to_json(mlat::shape_parameters(sq.frame.full(), sc.scale(), sc.tol));
  d["near_degenerate"] = sq.set.near_degenerate;
  d["collinear"] = mlat::is_collinear_degenerate(sq.reduced, sq.frame);
  d["message"] = sq.diagnostic;
  return d;
}

std::vector<mlat::Candidate> sorted_candidates(const mlat::Intersection& inter, const mlat::Scenario& sc) {
  auto cands = mlat::mark_feasibility(inter.candidates, sc);
  std::stable_sort(cands.begin(), cands.end(),
                   [](const mlat::Candidate& a, const mlat::Candidate& b) { return a.residual < b.residual; });
  return cands;
}

mlat::Json candidates_json(const std::vector<mlat::Candidate>& cands, const mlat::Intersection& inter) {
  mlat::Json j;
  mlat::Json list = mlat::Json::array();
  for (const auto& c : cands) list.push_back(mlat::to_json(c));
  j["positive_dimensional"] = inter.positive_dimensional;
  j["candidates"] = list;
  j["feasible_count"] = std::count_if(cands.begin(), cands.end(), [](const mlat::Candidate& c) { return c.feasible; });
  j["diagnostic"] = inter.diagnostic;
  return j;
}

int run_solve(const Options& opt, bool with_parametrization) {
  const auto file = load_scenario(opt);
  const auto& sc = file.scenario;
  const auto report = mlat::validate_scenario(sc);
  for (const auto& note : report.notes) std::cerr << "note: " << note << "\n";
  const auto sq = mlat::solve_squared_detailed(sc);
  const auto feasible = mlat::filter_inequalities(sq.set, sq.frame, sq.reduced);
  const auto qsol = mlat::classify_solution_quadric(sq.frame, sq.set);
  const auto qsat = mlat::classify_satellite_quadric(sq.frame, sq.set);
  const auto dual = mlat::duality_report(qsol, qsat.descriptor, sc.tol);

  mlat::Json doc;
  doc["kind"] = mlat::to_string(sq.set.kind);
  doc["count"] = mlat::to_string(sq.set.count);
  if (with_parametrization) {
    doc["solution_set"] = mlat::to_json(sq.set);
    if (sq.set.count == mlat::CountHint::Infinite && opt.seed) {
      mlat::Json samples = mlat::Json::array();
      for (const auto& p : mlat::sample_solutions(sq.set, 8, *opt.seed)) samples.push_back(mlat::to_json(p));
      doc["samples"] = samples;
    }
  }
  doc["qsol"] = mlat::to_json(qsol);
  doc["qsat"] = mlat::to_json(qsat);
  doc["feasible"] = mlat::to_json(feasible);
  doc["duality"] = mlat::to_json(dual);
  if (file.constraint) {
    const auto inter = mlat::intersect_with_affine(sq.set, sq.frame, *file.constraint, sc.tol);
    doc["intersection"] = candidates_json(sorted_candidates(inter, sc), inter);
  }
  doc["diagnostics"] = diagnostics(sq, sc);
  std::cout << mlat::dump(doc) << "\n";
  if (!sq.diagnostic.empty()) std::cerr << sq.diagnostic << "\n";
  return sq.set.kind == mlat::SolutionKind::Empty ? kEmpty : kOk;
}

int run_intersect(const Options& opt) {
  const auto file = load_scenario(opt);
  if (!file.constraint) throw mlat::InvalidInput(opt.path + ": the scenario has no constraint");
  const auto& sc = file.scenario;
  const auto sq = mlat::solve_squared_detailed(sc);
  const auto inter = mlat::intersect_with_affine(sq.set, sq.frame, *file.constraint, sc.tol);
  const auto cands = sorted_candidates(inter, sc);
  mlat::Json doc = candidates_json(cands, inter);
  doc["solution_kind"] = mlat::to_string(sq.set.kind);
  std::cout << mlat::dump(doc) << "\n";
  if (!inter.diagnostic.empty()) std::cerr << inter.diagnostic << "\n";
  return cands.empty() ? kEmpty : kOk;
}

int run_simulate(const Options& opt) {
  auto cfg = mlat::simulation_from_json(mlat::read_json_file(opt.path));
  if (opt.seed) cfg.trial.noise.seed = *opt.seed;
  if (opt.trials) cfg.trials = *opt.trials;
  if (opt.resolution) {
    cfg.trial.region.resolution.assign(cfg.trial.region.resolution.size(), *opt.resolution);
    cfg.trial.region.validate(static_cast<int>(cfg.trial.x_true.size()));
  }
  if (cfg.trials < 1) throw mlat::InvalidInput("--trials must be positive");
  const auto stats = mlat::run_trials(cfg.trial, cfg.trials);
  mlat::Json doc = mlat::to_json(stats);
  doc["sigma"] = cfg.trial.noise.sigma;
  doc["seed"] = cfg.trial.noise.seed;

  if (!opt.surface.empty()) {
    // one representative trial: the first noise draw
    mlat::NoiseModel noise = cfg.trial.noise;
    noise.seed = mlat::trial_seed(cfg.trial.noise.seed, 0);
    const auto t = mlat::synthesize_pseudoranges(cfg.trial.receivers, cfg.trial.x_true, cfg.trial.b_true, noise);
    const auto surface = mlat::cost_surface(cfg.trial.receivers, t, cfg.trial.region);
    std::ofstream out(opt.surface);
    if (!out) throw mlat::InvalidInput(opt.surface + ": cannot write surface");
    mlat::write_surface_csv(out, surface);
    doc["surface"] = opt.surface;
    doc["surface_argmin"] = mlat::to_json(surface.argmin_point);
  }
  std::cout << mlat::dump(doc) << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pseudorange multilateration: solution sets, quadrics and simulations"};
  app.require_subcommand(1);
  Options opt;

  auto add_tol = [&](CLI::App* cmd) {
    cmd->add_option("scenario", opt.path, "scenario JSON file")->required();
    cmd->add_option("--tol-rank", opt.tol_rank, "relative rank tolerance");
    cmd->add_option("--tol-geom", opt.tol_geom, "absolute geometric tolerance");
  };
  auto* solve = app.add_subcommand("solve", "solution set, quadrics, feasibility and duality");
  add_tol(solve);
  solve->add_option("--seed", opt.seed, "seed for sampled solutions");
  auto* classify = app.add_subcommand("classify", "like solve without the parametrization");
  add_tol(classify);
  auto* intersect = app.add_subcommand("intersect", "candidates on the scenario's constraint");
  add_tol(intersect);
  auto* simulate = app.add_subcommand("simulate", "Monte-Carlo grid localisation error");
  simulate->add_option("config", opt.path, "simulation JSON file")->required();
  simulate->add_option("--seed", opt.seed, "noise seed");
  simulate->add_option("--trials", opt.trials, "number of trials");
  simulate->add_option("--resolution", opt.resolution, "grid nodes per axis");
  simulate->add_option("--surface", opt.surface, "write one cost surface as CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, std::cerr, std::cerr);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*solve) return run_solve(opt, true);
    if (*classify) return run_solve(opt, false);
    if (*intersect) return run_intersect(opt);
    if (*simulate) return run_simulate(opt);
  } catch (const mlat::InvalidInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
