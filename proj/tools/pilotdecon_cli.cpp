/**
 * @file pilotdecon_cli.cpp
 * @brief Command-line front end: `simulate` runs the Monte Carlo
 * experiments, `dar` dumps the cost functions and desired angular region,
 * `assign` solves a pilot assignment for a scenario file.
 *
 * Exit codes: 0 success, 1 error, 2 infeasible assignment.
 */

#include <CLI11.hpp>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <string>

#include "pilotdecon/pilotdecon.hpp"

namespace pd = pilotdecon;

namespace {

int cmd_simulate(const std::string& config_path, const std::string& experiment,
                 std::uint64_t seed, int trials, bool full,
                 const std::string& out_path) {
  pd::ExperimentConfig config;
  config.sim = pd::load_config(config_path);
  config.experiment = pd::experiment_from_name(experiment);
  config.seed = seed;
  config.trials = full ? 1000 : trials;
  config.source_path = config_path;
  const std::vector<pd::ResultRow> rows = pd::run_experiment(config);
  if (out_path == "-") {
    pd::emit_csv(rows, std::cout);
  } else {
    pd::emit_csv(rows, out_path);
    std::cerr << "wrote " << rows.size() << " rows to " << out_path << "\n";
  }
  return 0;
}

int cmd_dar(double theta_delta_deg, int antennas, double spacing_ratio,
            const std::string& out_path) {
  const double delta = theta_delta_deg * pd::kPi / 180.0;
  const double wavelength = 0.1;
  const double spacing = spacing_ratio * wavelength;
  const pd::DesiredAngularRegion region =
      pd::dar(delta, antennas, spacing, wavelength);
  const pd::AngularSupport self = pd::AngularSupport::from_mean_spread(0.0, delta);

  std::ofstream file;
  std::ostream* out = &std::cout;
  if (out_path != "-") {
    file.open(out_path);
    if (!file) throw std::runtime_error("cannot open " + out_path);
    out = &file;
  }
  *out << "cos_phi,j_low,j_high,j_true,j_apprx\n";
  const int points = 1001;
  for (int k = 0; k < points; ++k) {
    const double c = -1.0 + 2.0 * k / (points - 1);
    const double phi = std::acos(c);
    *out << c << ',' << pd::cost_j(delta, phi, antennas, spacing, wavelength)
         << ',' << pd::cost_j(pd::kPi - delta, phi, antennas, spacing, wavelength)
         << ',' << pd::true_cost(phi, self, antennas, spacing, wavelength)
         << ',' << pd::approx_cost(phi, region) << "\n";
  }
  std::cerr << "DAR = [" << region.psi_min * 180.0 / pd::kPi << ", "
            << region.psi_max * 180.0 / pd::kPi << "] deg\n";
  return 0;
}

int cmd_assign(const std::string& config_path, const std::string& method,
               const std::string& formulation, int target_cell, int antennas,
               std::uint64_t seed) {
  const pd::SimConfig cfg = pd::load_config(config_path);
  const pd::Scenario sc = pd::scenario_from_config(cfg);
  const int m = antennas > 0 ? antennas : sc.num_antennas;
  const pd::UtilityMatrix util = pd::utility_matrix(sc, m);

  pd::AssignmentProblem problem;
  if (formulation == "multicell") {
    problem = pd::build_multicell(sc, util);
  } else if (formulation == "qos") {
    problem = pd::build_multicell_qos(sc, util);
  } else if (formulation == "singlecell") {
    problem = pd::build_singlecell(sc, target_cell, util);
  } else {
    throw std::invalid_argument("unknown formulation: " + formulation);
  }

  pd::PilotAssignment assignment;
  if (method == "exhaustive") {
    assignment = pd::solve_exhaustive(problem);
  } else if (method == "bnb") {
    assignment = pd::solve_bnb(problem);
  } else if (method == "local") {
    assignment = pd::solve_local_search(problem, seed);
  } else if (method == "greedy") {
    assignment = pd::solve_greedy_sequential(problem);
  } else {
    throw std::invalid_argument("unknown method: " + method);
  }

  std::cout << "user,cell,pilot,cost_contribution\n";
  for (int i = 0; i < assignment.num_users; ++i) {
    for (int p = 0; p < assignment.num_pilots; ++p) {
      if (!assignment.active(i, p)) continue;
      double contrib = 0.0;
      for (int j = 0; j < assignment.num_users; ++j) {
        if (j != i && assignment.active(j, p)) contrib += problem.u(i, j);
      }
      const pd::UserRef ref = problem.users[i];
      std::cout << "c" << ref.cell << "u" << ref.user << ',' << ref.cell << ','
                << p << ',' << contrib << "\n";
    }
  }
  std::cout << "objective," << assignment.objective << "\n";
  std::cout << "method," << assignment.meta.method << "\n";
  std::cout << "proven_optimal," << (assignment.meta.proven_optimal ? 1 : 0) << "\n";
  std::cout << "feasible," << (assignment.meta.feasible ? 1 : 0) << "\n";
  if (assignment.meta.forced_reuse) std::cout << "note,forced pilot reuse\n";
  return assignment.meta.feasible ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Location-aided pilot decontamination simulator"};
  app.require_subcommand(1);

  auto* sim = app.add_subcommand("simulate", "run a Monte Carlo experiment");
  std::string config_path, experiment = "aoa_sweep", out_path = "results.csv";
  std::uint64_t seed = 1;
  int trials = 200;
  bool full = false;
  sim->add_option("--config", config_path, "scenario config file")->required();
  sim->add_option("--experiment", experiment,
                  "aoa_sweep|distance_sweep|greedy_vs_joint|mutual_2cell|custom");
  sim->add_option("--seed", seed, "master RNG seed");
  sim->add_option("--trials", trials, "Monte Carlo trials per point");
  sim->add_flag("--full", full, "use 1000 trials");
  sim->add_option("--out", out_path, "output CSV path ('-' for stdout)");

  auto* dar_cmd = app.add_subcommand("dar", "dump cost functions and the DAR");
  double theta_delta_deg = 5.739170477266787;
  int antennas = 10;
  double spacing_ratio = 0.5;
  std::string dar_out = "-";
  dar_cmd->add_option("--theta-delta", theta_delta_deg, "angular spread, degrees");
  dar_cmd->add_option("--antennas", antennas, "number of BS antennas");
  dar_cmd->add_option("--spacing-ratio", spacing_ratio, "D / lambda");
  dar_cmd->add_option("--out", dar_out, "output CSV path ('-' for stdout)");

  auto* assign = app.add_subcommand("assign", "solve a pilot assignment");
  std::string assign_config, method = "bnb", formulation = "qos";
  int target_cell = 0, assign_antennas = 0;
  std::uint64_t assign_seed = 1;
  assign->add_option("--config", assign_config, "scenario config file")->required();
  assign->add_option("--method", method, "exhaustive|bnb|local|greedy");
  assign->add_option("--formulation", formulation, "multicell|qos|singlecell");
  assign->add_option("--target-cell", target_cell, "target cell (singlecell)");
  assign->add_option("--antennas", assign_antennas,
                     "antennas for the utility matrix (default: config)");
  assign->add_option("--seed", assign_seed, "seed for local search");

  CLI11_PARSE(app, argc, argv);

  try {
    if (sim->parsed()) {
      return cmd_simulate(config_path, experiment, seed, trials, full, out_path);
    }
    if (dar_cmd->parsed()) {
      return cmd_dar(theta_delta_deg, antennas, spacing_ratio, dar_out);
    }
    if (assign->parsed()) {
      return cmd_assign(assign_config, method, formulation, target_cell,
                        assign_antennas, assign_seed);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
