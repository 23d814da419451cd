#pragma once
/**
 * @file simharness.hpp
 * @brief Monte Carlo experiment driver: scenario config files, the four
 * canned experiments, and CSV result output.
 *
 * Config files are line-oriented `key = value` with repeated `[cell]`
 * blocks (`bs = x y`, `user = x y`, optional `neighbors = i j ...`).
 * Angles are given in degrees, distances in meters.
 *
 * Reported errors are ensemble errors over the trial batch,
 * 10 log10(sum ||h_hat - h||^2 / sum ||h||^2), which is how the normalized
 * estimation error behaves when averaged over many channel realizations.
 * Every (participant, M, trial) triple draws from its own seed-derived RNG
 * stream, so results are reproducible bit-for-bit for a fixed master seed.
 */

#include <array>
#include <bit>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "pilotdecon/assignment.hpp"
#include "pilotdecon/estimator.hpp"

namespace pilotdecon {

/// Parsed scenario/experiment configuration with reference defaults.
struct SimConfig {
  double cell_radius = 1000.0;
  double scatter_radius = 50.0;
  double pathloss_exponent = 2.5;
  double wavelength = 0.1;
  double antenna_spacing = 0.05;
  double noise_variance = 1e-3;
  double cell_edge_snr_db = 20.0;
  int num_antennas = 10;
  int num_paths = 50;
  int pilot_length = 10;
  int num_pilots = 1;
  std::vector<CellSpec> cells;
  // experiment-specific geometry (angles in degrees)
  double target_distance = 500.0;
  double target_bearing_deg = 0.0;
  std::vector<std::array<double, 2>> interferer_supports_deg;
  std::vector<double> interferer_aoas_deg{60.0, 90.0, 150.0};
  std::vector<double> interferer_distances{500.0, 1000.0, 1500.0, 2000.0};
  std::vector<int> m_sweep{2, 5, 10, 20, 35, 50};
  int target_cell = 0;
};

namespace detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

inline std::vector<double> parse_numbers(const std::string& text, int line_no) {
  std::vector<double> out;
  std::istringstream iss(text);
  std::string tok;
  while (iss >> tok) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw std::invalid_argument("config line " + std::to_string(line_no) +
                                  ": bad number '" + tok + "'");
    }
  }
  return out;
}

}  // namespace detail

/// Parses a scenario config; throws std::invalid_argument with the line
/// number on malformed input or unknown keys.
inline SimConfig parse_config(std::istream& in) {
  SimConfig cfg;
  bool seen_aoas = false, seen_dists = false, seen_sweep = false;
  CellSpec* cell = nullptr;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    if (line == "[cell]") {
      cfg.cells.emplace_back();
      cell = &cfg.cells.back();
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config line " + std::to_string(line_no) +
                                  ": expected key = value");
    }
    const std::string key = detail::trim(line.substr(0, eq));
    const std::string value = detail::trim(line.substr(eq + 1));
    const std::vector<double> nums = detail::parse_numbers(value, line_no);
    auto need = [&](std::size_t n) {
      if (nums.size() != n) {
        throw std::invalid_argument("config line " + std::to_string(line_no) +
                                    ": key '" + key + "' expects " +
                                    std::to_string(n) + " value(s)");
      }
    };
    if (cell != nullptr && (key == "bs" || key == "user" || key == "neighbors")) {
      if (key == "bs") {
        need(2);
        cell->bs = {nums[0], nums[1]};
      } else if (key == "user") {
        need(2);
        cell->users.push_back({nums[0], nums[1]});
      } else {
        cell->neighbors.assign(nums.size(), 0);
        for (std::size_t i = 0; i < nums.size(); ++i) {
          cell->neighbors[i] = static_cast<int>(nums[i]);
        }
      }
      continue;
    }
    if (key == "cell_radius") { need(1); cfg.cell_radius = nums[0]; }
    else if (key == "scatter_radius") { need(1); cfg.scatter_radius = nums[0]; }
    else if (key == "pathloss_exponent") { need(1); cfg.pathloss_exponent = nums[0]; }
    else if (key == "wavelength") { need(1); cfg.wavelength = nums[0]; }
    else if (key == "antenna_spacing") { need(1); cfg.antenna_spacing = nums[0]; }
    else if (key == "noise_variance") { need(1); cfg.noise_variance = nums[0]; }
    else if (key == "cell_edge_snr") { need(1); cfg.cell_edge_snr_db = nums[0]; }
    else if (key == "num_antennas") { need(1); cfg.num_antennas = static_cast<int>(nums[0]); }
    else if (key == "num_paths") { need(1); cfg.num_paths = static_cast<int>(nums[0]); }
    else if (key == "pilot_length") { need(1); cfg.pilot_length = static_cast<int>(nums[0]); }
    else if (key == "num_pilots") { need(1); cfg.num_pilots = static_cast<int>(nums[0]); }
    else if (key == "target_distance") { need(1); cfg.target_distance = nums[0]; }
    else if (key == "target_bearing") { need(1); cfg.target_bearing_deg = nums[0]; }
    else if (key == "target_cell") { need(1); cfg.target_cell = static_cast<int>(nums[0]); }
    else if (key == "interferer_support") {
      need(2);
      cfg.interferer_supports_deg.push_back({nums[0], nums[1]});
    } else if (key == "interferer_aoa") {
      if (!seen_aoas) { cfg.interferer_aoas_deg.clear(); seen_aoas = true; }
      cfg.interferer_aoas_deg.insert(cfg.interferer_aoas_deg.end(), nums.begin(), nums.end());
    } else if (key == "interferer_distance") {
      if (!seen_dists) { cfg.interferer_distances.clear(); seen_dists = true; }
      cfg.interferer_distances.insert(cfg.interferer_distances.end(), nums.begin(), nums.end());
    } else if (key == "m_sweep") {
      if (!seen_sweep) { cfg.m_sweep.clear(); seen_sweep = true; }
      for (double v : nums) cfg.m_sweep.push_back(static_cast<int>(v));
    } else {
      throw std::invalid_argument("config line " + std::to_string(line_no) +
                                  ": unknown key '" + key + "'");
    }
  }
  for (std::size_t i = 1; i < cfg.m_sweep.size(); ++i) {
    if (cfg.m_sweep[i] <= cfg.m_sweep[i - 1]) {
      throw std::invalid_argument("config: m_sweep must be strictly ascending");
    }
  }
  return cfg;
}

inline SimConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  return parse_config(in);
}

/// Builds a Scenario from the config's [cell] blocks. Cells without an
/// explicit neighbor list default to all other cells.
inline Scenario scenario_from_config(const SimConfig& cfg) {
  Scenario sc;
  sc.cells = cfg.cells;
  sc.cell_radius = cfg.cell_radius;
  sc.scatter_radius = cfg.scatter_radius;
  sc.pathloss_exponent = cfg.pathloss_exponent;
  sc.wavelength = cfg.wavelength;
  sc.antenna_spacing = cfg.antenna_spacing;
  sc.noise_variance = cfg.noise_variance;
  sc.cell_edge_snr_db = cfg.cell_edge_snr_db;
  sc.num_antennas = cfg.num_antennas;
  sc.num_paths = cfg.num_paths;
  sc.pilot_length = cfg.pilot_length;
  sc.num_pilots = cfg.num_pilots;
  for (int j = 0; j < static_cast<int>(sc.cells.size()); ++j) {
    if (!sc.cells[j].neighbors.empty()) continue;
    for (int k = 0; k < static_cast<int>(sc.cells.size()); ++k) {
      if (k != j) sc.cells[j].neighbors.push_back(k);
    }
  }
  sc.validate();
  return sc;
}

enum class Experiment { kAoaSweep, kDistanceSweep, kGreedyVsJoint, kMutual2Cell, kCustom };

inline Experiment experiment_from_name(const std::string& name) {
  if (name == "aoa_sweep") return Experiment::kAoaSweep;
  if (name == "distance_sweep") return Experiment::kDistanceSweep;
  if (name == "greedy_vs_joint") return Experiment::kGreedyVsJoint;
  if (name == "mutual_2cell") return Experiment::kMutual2Cell;
  if (name == "custom") return Experiment::kCustom;
  throw std::invalid_argument("unknown experiment: " + name);
}

inline const char* experiment_name(Experiment e) {
  switch (e) {
    case Experiment::kAoaSweep: return "aoa_sweep";
    case Experiment::kDistanceSweep: return "distance_sweep";
    case Experiment::kGreedyVsJoint: return "greedy_vs_joint";
    case Experiment::kMutual2Cell: return "mutual_2cell";
    case Experiment::kCustom: return "custom";
  }
  return "?";
}

struct ExperimentConfig {
  SimConfig sim;
  Experiment experiment = Experiment::kAoaSweep;
  std::uint64_t seed = 1;
  int trials = 200;
  std::string source_path;  ///< config file the scenario came from
};

/// One aggregated result: ensemble error of one tracked user/curve at one M.
struct ResultRow {
  std::string experiment;
  int m = 0;
  int pilot = 0;
  std::string user;
  double mean_error_db = 0.0;
  int trials = 0;
  std::string method;
};

namespace detail {

/// A Monte Carlo participant: angular support at the measuring BS plus
/// large-scale gain.
struct McUser {
  AngularSupport support;
  double beta = 0.0;
};

/// Stream key from the participant's physical identity. Keying channels by
/// (support, gain) rather than enumeration order makes results invariant
/// under relabeling cells or users, and shares draws across the curves of
/// one experiment (common random numbers).
inline std::uint64_t user_stream_key(const McUser& u) {
  return mix_seed({std::bit_cast<std::uint64_t>(u.support.mean),
                   std::bit_cast<std::uint64_t>(u.support.spread),
                   std::bit_cast<std::uint64_t>(u.beta)});
}

/**
 * @brief Ensemble estimation error for one (target, interferers) setup:
 * 10 log10 of summed error energy over summed channel energy across the
 * trial batch.
 */
inline double mc_error_db(const McUser& target, const std::vector<McUser>& ints,
                          int num_antennas, const SimConfig& cfg, int trials,
                          std::uint64_t seed, Experiment exp, bool matched) {
  const PilotSequence s = pilot_set(cfg.pilot_length, 1).front();
  const CovarianceMatrix r_t =
      covariance(target.support, target.beta, num_antennas,
                 cfg.antenna_spacing, cfg.wavelength);
  std::vector<CovarianceMatrix> r_i;
  for (const auto& u : ints) {
    r_i.push_back(covariance(u.support, u.beta, num_antennas,
                             cfg.antenna_spacing, cfg.wavelength));
  }
  const std::uint64_t exp_key = hash_label(experiment_name(exp));
  const std::uint64_t tgt_key = user_stream_key(target);
  double err_sum = 0.0;
  double sig_sum = 0.0;
  for (int t = 0; t < trials; ++t) {
    auto tgt_rng = seeded_stream({seed, exp_key, hash_label("target"), tgt_key,
                                  (std::uint64_t)num_antennas, (std::uint64_t)t});
    auto noise_rng = seeded_stream({seed, exp_key, hash_label("noise"), tgt_key,
                                    (std::uint64_t)num_antennas, (std::uint64_t)t});
    const ChannelRealization h_t =
        draw_channel(target.support, target.beta, cfg.num_paths, num_antennas,
                     cfg.antenna_spacing, cfg.wavelength, tgt_rng);
    std::vector<Eigen::VectorXcd> h_i;
    for (std::size_t k = 0; k < ints.size(); ++k) {
      auto int_rng = seeded_stream({seed, exp_key, hash_label("interferer"),
                                    user_stream_key(ints[k]),
                                    (std::uint64_t)num_antennas, (std::uint64_t)t});
      h_i.push_back(draw_channel(ints[k].support, ints[k].beta, cfg.num_paths,
                                 num_antennas, cfg.antenna_spacing,
                                 cfg.wavelength, int_rng)
                        .h);
    }
    const Eigen::MatrixXcd y =
        receive(h_t.h, h_i, s, cfg.noise_variance, noise_rng);
    const Eigen::VectorXcd h_hat =
        matched ? mmse_estimate(r_t, r_i, y, s, cfg.noise_variance)
                : mmse_estimate_no_interference(r_t, y, s, cfg.noise_variance);
    err_sum += (h_hat - h_t.h).squaredNorm();
    sig_sum += h_t.h.squaredNorm();
  }
  const double ratio = err_sum / sig_sum;
  return ratio <= 1e-30 ? kErrorFloorDb : 10.0 * std::log10(ratio);
}

inline double alpha_of(const SimConfig& cfg) {
  return cell_edge_alpha(cfg.cell_edge_snr_db, cfg.pathloss_exponent,
                         cfg.cell_radius, cfg.noise_variance);
}

/// Places an interferer whose rotated support matches the quoted interval:
/// distance from the spread, bearing from the mean plus the target bearing.
inline McUser user_from_quoted_support(const SimConfig& cfg, double lo_deg,
                                       double hi_deg) {
  const double delta = 0.5 * (hi_deg - lo_deg) * kPi / 180.0;
  const double mean =
      (0.5 * (hi_deg + lo_deg) + cfg.target_bearing_deg) * kPi / 180.0;
  if (delta <= 0.0) throw std::invalid_argument("interferer support is empty");
  const double d = cfg.scatter_radius / std::sin(delta);
  return {AngularSupport::from_mean_spread(mean, delta),
          alpha_of(cfg) * std::pow(d, -cfg.pathloss_exponent)};
}

inline McUser user_at(const SimConfig& cfg, double bearing_deg, double dist) {
  const double delta = std::asin(cfg.scatter_radius / dist);
  return {AngularSupport::from_mean_spread(bearing_deg * kPi / 180.0, delta),
          alpha_of(cfg) * std::pow(dist, -cfg.pathloss_exponent)};
}

inline std::string format_deg(double deg) {
  std::ostringstream os;
  os << deg;
  return os.str();
}

}  // namespace detail

/**
 * @brief Impact of interferer AoA supports: one interference-free curve
 * plus one curve per configured support (quoted in the rotated frame).
 * The target sits at `target_distance` on `target_bearing`.
 */
inline std::vector<ResultRow> run_aoa_sweep(const ExperimentConfig& config) {
  const SimConfig& cfg = config.sim;
  if (cfg.interferer_supports_deg.empty()) {
    throw std::invalid_argument("aoa_sweep: no interferer_support configured");
  }
  const detail::McUser target =
      detail::user_at(cfg, cfg.target_bearing_deg, cfg.target_distance);
  std::vector<ResultRow> rows;
  for (int m : cfg.m_sweep) {
    rows.push_back({experiment_name(config.experiment), m, 0, "interference_free",
                    detail::mc_error_db(target, {}, m, cfg, config.trials,
                                        config.seed, config.experiment, false),
                    config.trials, "none"});
    for (const auto& sup : cfg.interferer_supports_deg) {
      const detail::McUser interferer =
          detail::user_from_quoted_support(cfg, sup[0], sup[1]);
      const std::string label = "int_" + detail::format_deg(sup[0]) + "_" +
                                detail::format_deg(sup[1]);
      rows.push_back({experiment_name(config.experiment), m, 0, label,
                      detail::mc_error_db(target, {interferer}, m, cfg,
                                          config.trials, config.seed,
                                          config.experiment, true),
                      config.trials, "none"});
    }
  }
  return rows;
}

/**
 * @brief Impact of interferer distance: curves over (mean AoA, distance)
 * pairs, AoAs quoted in the rotated frame.
 */
inline std::vector<ResultRow> run_distance_study(const ExperimentConfig& config) {
  const SimConfig& cfg = config.sim;
  const detail::McUser target =
      detail::user_at(cfg, cfg.target_bearing_deg, cfg.target_distance);
  std::vector<ResultRow> rows;
  for (int m : cfg.m_sweep) {
    rows.push_back({experiment_name(config.experiment), m, 0, "interference_free",
                    detail::mc_error_db(target, {}, m, cfg, config.trials,
                                        config.seed, config.experiment, false),
                    config.trials, "none"});
    for (double aoa : cfg.interferer_aoas_deg) {
      for (double d : cfg.interferer_distances) {
        const detail::McUser interferer =
            detail::user_at(cfg, aoa + cfg.target_bearing_deg, d);
        const std::string label = "aoa" + detail::format_deg(aoa) + "_d" +
                                  detail::format_deg(d);
        rows.push_back({experiment_name(config.experiment), m, 0, label,
                        detail::mc_error_db(target, {interferer}, m, cfg,
                                            config.trials, config.seed,
                                            config.experiment, true),
                        config.trials, "none"});
      }
    }
  }
  return rows;
}

namespace detail {

/// Support and gain of a scenario user at a given BS.
inline McUser scenario_user_at_bs(const Scenario& sc, const UserRef& u,
                                  int bs_cell) {
  const Position& bs = sc.cells[bs_cell].bs;
  const Position& pos = sc.user_pos(u);
  const double alpha = cell_edge_alpha(sc.cell_edge_snr_db, sc.pathloss_exponent,
                                       sc.cell_radius, sc.noise_variance);
  return {AngularSupport::from_mean_spread(
              mean_aoa(pos, bs), angular_spread(pos, bs, sc.scatter_radius)),
          large_scale_gain(pos, bs, alpha, sc.pathloss_exponent)};
}

inline SimConfig radio_of(const Scenario& sc, const SimConfig& base) {
  SimConfig cfg = base;
  cfg.antenna_spacing = sc.antenna_spacing;
  cfg.wavelength = sc.wavelength;
  cfg.noise_variance = sc.noise_variance;
  cfg.num_paths = sc.num_paths;
  cfg.pilot_length = sc.pilot_length;
  return cfg;
}

/// Error curves of every user of `problem` at its serving BS, with co-pilot
/// users as interferers. One row per (tracked user, pilot, M).
inline std::vector<ResultRow> simulate_assignment(
    const ExperimentConfig& config, const Scenario& sc,
    const AssignmentProblem& problem, const PilotAssignment& assign,
    const std::string& method) {
  const bool relaxed = assign.meta.method == "greedy";
  if (!assign.meta.feasible || !check_feasible(problem, assign, relaxed)) {
    throw std::runtime_error("assignment infeasible; not simulating");
  }
  const SimConfig cfg = radio_of(sc, config.sim);
  std::vector<ResultRow> rows;
  for (int m : cfg.m_sweep) {
    for (int i = 0; i < problem.num_users(); ++i) {
      const UserRef ref = problem.users[i];
      for (int p = 0; p < assign.num_pilots; ++p) {
        if (!assign.active(i, p)) continue;
        const McUser target = scenario_user_at_bs(sc, ref, ref.cell);
        std::vector<McUser> ints;
        for (int j = 0; j < problem.num_users(); ++j) {
          if (j != i && assign.active(j, p)) {
            ints.push_back(scenario_user_at_bs(sc, problem.users[j], ref.cell));
          }
        }
        const std::string label = "c" + std::to_string(ref.cell) + "u" +
                                  std::to_string(ref.user);
        rows.push_back({experiment_name(config.experiment), m, p, label,
                        mc_error_db(target, ints, m, cfg, config.trials,
                                    config.seed, config.experiment, true),
                        config.trials, method});
      }
    }
  }
  return rows;
}

}  // namespace detail

/**
 * @brief Greedy vs joint single-cell optimization on the configured
 * scenario: both assignments are computed at the scenario's num_antennas,
 * then per-pilot error curves are simulated for each method.
 */
inline std::vector<ResultRow> run_greedy_vs_joint(const ExperimentConfig& config) {
  const Scenario sc = scenario_from_config(config.sim);
  const UtilityMatrix util = utility_matrix(sc, sc.num_antennas);
  const AssignmentProblem problem =
      build_singlecell(sc, config.sim.target_cell, util);
  const PilotAssignment greedy = solve_greedy_sequential(problem);
  const PilotAssignment joint = solve_bnb(problem);
  std::vector<ResultRow> rows =
      detail::simulate_assignment(config, sc, problem, greedy, "greedy");
  std::vector<ResultRow> joint_rows =
      detail::simulate_assignment(config, sc, problem, joint, "joint");
  rows.insert(rows.end(), joint_rows.begin(), joint_rows.end());
  return rows;
}

/**
 * @brief Two-cell mutual-interference experiment: QoS multi-cell assignment
 * by branch-and-bound, then per-user error curves at the serving BSs.
 */
inline std::vector<ResultRow> run_mutual_2cell(const ExperimentConfig& config) {
  const Scenario sc = scenario_from_config(config.sim);
  const UtilityMatrix util = utility_matrix(sc, sc.num_antennas);
  const AssignmentProblem problem = build_multicell_qos(sc, util);
  const PilotAssignment assign = solve_bnb(problem);
  return detail::simulate_assignment(config, sc, problem, assign, "bnb");
}

/// Custom experiment: QoS assignment on the literal configured cells.
inline std::vector<ResultRow> run_custom(const ExperimentConfig& config) {
  return run_mutual_2cell(config);
}

/// Dispatcher over the canned experiments.
inline std::vector<ResultRow> run_experiment(const ExperimentConfig& config) {
  if (config.trials < 1) throw std::invalid_argument("run_experiment: trials < 1");
  if (config.sim.m_sweep.empty()) {
    throw std::invalid_argument("run_experiment: empty M sweep");
  }
  switch (config.experiment) {
    case Experiment::kAoaSweep: return run_aoa_sweep(config);
    case Experiment::kDistanceSweep: return run_distance_study(config);
    case Experiment::kGreedyVsJoint: return run_greedy_vs_joint(config);
    case Experiment::kMutual2Cell: return run_mutual_2cell(config);
    case Experiment::kCustom: return run_custom(config);
  }
  throw std::logic_error("run_experiment: bad experiment enum");
}

namespace detail {

inline std::string format_double(double v) {
  std::array<char, 32> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc()) throw std::runtime_error("emit_csv: format failure");
  return std::string(buf.data(), ptr);
}

}  // namespace detail

inline constexpr const char* kCsvHeader =
    "experiment,m,pilot,user,mean_error_db,trials,method";

/// Writes rows as CSV (stable column order, locale-independent numbers).
inline void emit_csv(const std::vector<ResultRow>& rows, std::ostream& out) {
  out << kCsvHeader << "\n";
  for (const auto& r : rows) {
    out << r.experiment << ',' << r.m << ',' << r.pilot << ',' << r.user << ','
        << detail::format_double(r.mean_error_db) << ',' << r.trials << ','
        << r.method << "\n";
  }
  if (!out) throw std::runtime_error("emit_csv: write failure");
}

inline void emit_csv(const std::vector<ResultRow>& rows, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("emit_csv: cannot open " + path);
  emit_csv(rows, out);
  if (!out) throw std::runtime_error("emit_csv: write failure: " + path);
}

/// Reads back what emit_csv wrote (round-trips exactly).
inline std::vector<ResultRow> parse_result_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || detail::trim(line) != kCsvHeader) {
    throw std::invalid_argument("parse_result_csv: bad header");
  }
  std::vector<ResultRow> rows;
  while (std::getline(in, line)) {
    if (detail::trim(line).empty()) continue;
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
      if (i == line.size() || line[i] == ',') {
        fields.push_back(line.substr(start, i - start));
        start = i + 1;
      }
    }
    if (fields.size() != 7) {
      throw std::invalid_argument("parse_result_csv: bad row: " + line);
    }
    ResultRow r;
    r.experiment = fields[0];
    r.m = std::stoi(fields[1]);
    r.pilot = std::stoi(fields[2]);
    r.user = fields[3];
    const std::string& num = fields[4];
    auto res = std::from_chars(num.data(), num.data() + num.size(), r.mean_error_db);
    if (res.ec != std::errc() || res.ptr != num.data() + num.size()) {
      throw std::invalid_argument("parse_result_csv: bad number: " + num);
    }
    r.trials = std::stoi(fields[5]);
    r.method = fields[6];
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace pilotdecon
