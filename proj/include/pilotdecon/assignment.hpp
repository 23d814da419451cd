#pragma once
/**
 * @file assignment.hpp
 * @brief Pilot-assignment optimization: the multi-cell BIP/IQCP, its QoS
 * and single-cell variants, exact solvers (exhaustive enumeration and
 * branch-and-bound), a local-search heuristic, and the greedy sequential
 * baseline.
 *
 * The objective is the ordered pairwise sum over co-pilot users,
 * sum_p sum_i sum_{j != i} U_ij y_ip y_jp, equivalently y^T Q y with
 * Q = I_{|P|} (x) U. Q is never materialized; only U is stored.
 *
 * Tie-breaking: solutions are compared by (objective, number of users left
 * without a pilot), and the first optimum in slot-lexicographic enumeration
 * order wins. This keeps every solver deterministic and prefers assignments
 * that serve all users when equality constraints admit degenerate reuse.
 */

#include <Eigen/Dense>
#include <algorithm>
#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "pilotdecon/angular.hpp"
#include "pilotdecon/geometry.hpp"
#include "pilotdecon/rng.hpp"

namespace pilotdecon {

enum class ConstraintKind {
  kAtLeastOnePilot,     ///< each user active on >= 1 pilot
  kOnePerCellPerPilot,  ///< exactly one user per (cell, pilot)
  kSingleCellTarget,    ///< as above on target + neighbors, costs from U-bar
};

/**
 * @brief One instance of the pilot-assignment problem. `users` maps local
 * indices back to scenario (cell, user) pairs; `cell_users` lists local
 * indices per participating cell.
 */
struct AssignmentProblem {
  Eigen::MatrixXd u;  ///< effective cost matrix (U, or U-bar for single-cell)
  ConstraintKind kind = ConstraintKind::kAtLeastOnePilot;
  int num_pilots = 1;
  std::vector<std::vector<int>> cell_users;
  std::vector<UserRef> users;
  int target_cell = -1;  ///< local cell index, single-cell variant only

  int num_users() const { return static_cast<int>(users.size()); }
};

struct SolverMeta {
  std::string method;
  long nodes_explored = 0;
  bool proven_optimal = false;
  bool feasible = true;
  int unserved_users = 0;   ///< users holding no pilot
  bool forced_reuse = false;  ///< some cell had to repeat a user across pilots
};

/// Binary activation map y: (user, pilot) -> {0, 1}.
struct PilotAssignment {
  int num_users = 0;
  int num_pilots = 0;
  std::vector<std::uint8_t> y;
  double objective = 0.0;
  SolverMeta meta;

  static PilotAssignment zeros(int users, int pilots) {
    PilotAssignment a;
    a.num_users = users;
    a.num_pilots = pilots;
    a.y.assign(static_cast<std::size_t>(users) * pilots, 0);
    return a;
  }
  bool active(int user, int pilot) const {
    return y[static_cast<std::size_t>(user) * num_pilots + pilot] != 0;
  }
  void set(int user, int pilot, bool on) {
    y[static_cast<std::size_t>(user) * num_pilots + pilot] = on ? 1 : 0;
  }
  int pilots_of(int user) const {
    int n = 0;
    for (int p = 0; p < num_pilots; ++p) n += active(user, p) ? 1 : 0;
    return n;
  }
};

/// Ordered pairwise objective recomputed from scratch.
inline double assignment_objective(const AssignmentProblem& problem,
                                   const PilotAssignment& a) {
  double obj = 0.0;
  for (int p = 0; p < a.num_pilots; ++p) {
    for (int i = 0; i < a.num_users; ++i) {
      if (!a.active(i, p)) continue;
      for (int j = 0; j < a.num_users; ++j) {
        if (j != i && a.active(j, p)) obj += problem.u(i, j);
      }
    }
  }
  return obj;
}

inline int count_unserved(const PilotAssignment& a) {
  int n = 0;
  for (int i = 0; i < a.num_users; ++i) {
    if (a.pilots_of(i) == 0) ++n;
  }
  return n;
}

/**
 * @brief Independent constraint checker. With `allow_exhausted_cells` an
 * equality slot may be empty when the cell has fewer users than pilots and
 * none of its users is repeated (the removal rule used by the greedy
 * baseline); exact solvers are held to the strict equalities.
 */
inline bool check_feasible(const AssignmentProblem& problem,
                           const PilotAssignment& a,
                           bool allow_exhausted_cells = false) {
  if (a.num_users != problem.num_users() || a.num_pilots != problem.num_pilots) {
    return false;
  }
  if (problem.kind == ConstraintKind::kAtLeastOnePilot) {
    for (int i = 0; i < a.num_users; ++i) {
      if (a.pilots_of(i) == 0) return false;
    }
    return true;
  }
  for (const auto& cell : problem.cell_users) {
    if (cell.empty()) continue;  // removal rule: no constraint for empty cells
    for (int p = 0; p < a.num_pilots; ++p) {
      int active = 0;
      for (int i : cell) active += a.active(i, p) ? 1 : 0;
      if (active == 1) continue;
      if (active == 0 && allow_exhausted_cells &&
          static_cast<int>(cell.size()) < a.num_pilots) {
        continue;
      }
      return false;
    }
  }
  return true;
}

/// Multi-cell problem: each user must be active on at least one pilot.
inline AssignmentProblem build_multicell(const Scenario& scenario,
                                         const UtilityMatrix& util) {
  if (scenario.num_pilots < 1) {
    throw std::invalid_argument("build_multicell: need >= 1 pilot");
  }
  AssignmentProblem problem;
  problem.u = util.u;
  problem.kind = ConstraintKind::kAtLeastOnePilot;
  problem.num_pilots = scenario.num_pilots;
  problem.users = util.users;
  problem.cell_users.assign(scenario.cells.size(), {});
  for (int i = 0; i < problem.num_users(); ++i) {
    problem.cell_users[problem.users[i].cell].push_back(i);
  }
  return problem;
}

/// QoS variant: exactly one user from each nonempty cell per pilot.
inline AssignmentProblem build_multicell_qos(const Scenario& scenario,
                                             const UtilityMatrix& util) {
  AssignmentProblem problem = build_multicell(scenario, util);
  problem.kind = ConstraintKind::kOnePerCellPerPilot;
  return problem;
}

/**
 * @brief Single-cell variant: users restricted to the target cell and its
 * neighbors, costs U-bar with rows zeroed for users outside the target cell
 * (mutual interference at neighbor BSs is ignored).
 */
inline AssignmentProblem build_singlecell(const Scenario& scenario,
                                          int target_cell,
                                          const UtilityMatrix& util) {
  if (target_cell < 0 || target_cell >= static_cast<int>(scenario.cells.size())) {
    throw std::invalid_argument("build_singlecell: target cell out of range");
  }
  std::vector<int> cells_in{target_cell};
  for (int n : scenario.cells[target_cell].neighbors) {
    if (n != target_cell) cells_in.push_back(n);
  }
  AssignmentProblem problem;
  problem.kind = ConstraintKind::kSingleCellTarget;
  problem.num_pilots = scenario.num_pilots;
  std::vector<int> global_index;
  for (int c : cells_in) {
    std::vector<int> locals;
    for (int g = 0; g < static_cast<int>(util.users.size()); ++g) {
      if (util.users[g].cell == c) {
        locals.push_back(static_cast<int>(problem.users.size()));
        problem.users.push_back(util.users[g]);
        global_index.push_back(g);
      }
    }
    problem.cell_users.push_back(std::move(locals));
  }
  problem.target_cell = 0;  // target cell listed first
  const int n = problem.num_users();
  problem.u = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    if (problem.users[i].cell != target_cell) continue;
    for (int j = 0; j < n; ++j) {
      if (j != i) problem.u(i, j) = util.u(global_index[i], global_index[j]);
    }
  }
  return problem;
}

namespace detail {

/// Incumbent comparison: lower objective wins, then fewer unserved users.
inline bool better_key(double obj, int unserved, double best_obj,
                       int best_unserved) {
  if (obj < best_obj) return true;
  return obj == best_obj && unserved < best_unserved;
}

struct SlotSearch {
  const AssignmentProblem& problem;
  long node_budget;
  bool prune;
  long leaves = 0;
  long expansions = 0;
  bool budget_hit = false;
  double best_obj = std::numeric_limits<double>::infinity();
  int best_unserved = std::numeric_limits<int>::max();
  std::vector<int> best_choice;
  std::vector<int> choice;          // chosen user per slot
  std::vector<std::vector<int>> on_pilot;  // users fixed on each pilot
  std::vector<int> cells_with_users;

  SlotSearch(const AssignmentProblem& p, long budget, bool do_prune)
      : problem(p), node_budget(budget), prune(do_prune) {
    for (int c = 0; c < static_cast<int>(p.cell_users.size()); ++c) {
      if (!p.cell_users[c].empty()) cells_with_users.push_back(c);
    }
    choice.assign(num_slots(), -1);
    on_pilot.assign(p.num_pilots, {});
  }

  int num_slots() const {
    return static_cast<int>(cells_with_users.size()) * problem.num_pilots;
  }
  // slot order: all pilots of the first cell, then the next cell, ...
  int slot_cell(int slot) const { return cells_with_users[slot / problem.num_pilots]; }
  int slot_pilot(int slot) const { return slot % problem.num_pilots; }

  double add_cost(int user, int pilot) const {
    double d = 0.0;
    for (int w : on_pilot[pilot]) d += problem.u(user, w) + problem.u(w, user);
    return d;
  }

  void dfs(int slot, double cost) {
    if (node_budget >= 0 && expansions > node_budget) {
      budget_hit = true;
      return;
    }
    if (slot == num_slots()) {
      ++leaves;
      int unserved = 0;
      std::vector<int> seen(problem.num_users(), 0);
      for (int s = 0; s < num_slots(); ++s) seen[choice[s]] = 1;
      for (int c : cells_with_users) {
        for (int i : problem.cell_users[c]) unserved += seen[i] ? 0 : 1;
      }
      if (better_key(cost, unserved, best_obj, best_unserved)) {
        best_obj = cost;
        best_unserved = unserved;
        best_choice = choice;
      }
      return;
    }
    const int cell = slot_cell(slot);
    const int pilot = slot_pilot(slot);
    for (int user : problem.cell_users[cell]) {
      const double next = cost + add_cost(user, pilot);
      if (prune && next > best_obj) continue;
      ++expansions;
      choice[slot] = user;
      on_pilot[pilot].push_back(user);
      dfs(slot + 1, next);
      on_pilot[pilot].pop_back();
      choice[slot] = -1;
      if (budget_hit) return;
    }
  }

  PilotAssignment result(const std::string& method) const {
    PilotAssignment a =
        PilotAssignment::zeros(problem.num_users(), problem.num_pilots);
    for (int s = 0; s < num_slots(); ++s) {
      a.set(best_choice[s], slot_pilot(s), true);
    }
    a.meta.method = method;
    a.meta.nodes_explored = leaves;
    a.meta.proven_optimal = !budget_hit;
    a.meta.unserved_users = count_unserved(a);
    for (int i = 0; i < problem.num_users(); ++i) {
      if (a.pilots_of(i) > 1) a.meta.forced_reuse = true;
    }
    return a;
  }
};

struct BitmaskSearch {
  const AssignmentProblem& problem;
  long node_budget;
  bool prune;
  long leaves = 0;
  long expansions = 0;
  bool budget_hit = false;
  double best_obj = std::numeric_limits<double>::infinity();
  std::vector<unsigned> best_masks;
  std::vector<unsigned> masks;

  BitmaskSearch(const AssignmentProblem& p, long budget, bool do_prune)
      : problem(p), node_budget(budget), prune(do_prune) {
    masks.assign(p.num_users(), 0);
  }

  double add_cost(int user, unsigned mask, int upto) const {
    double d = 0.0;
    for (int w = 0; w < upto; ++w) {
      if (masks[w] & mask) {
        // shared pilots contribute one ordered pair per direction each
        unsigned shared = masks[w] & mask;
        int count = 0;
        while (shared) {
          count += shared & 1u;
          shared >>= 1u;
        }
        d += count * (problem.u(user, w) + problem.u(w, user));
      }
    }
    return d;
  }

  void dfs(int user, double cost) {
    if (node_budget >= 0 && expansions > node_budget) {
      budget_hit = true;
      return;
    }
    if (user == problem.num_users()) {
      ++leaves;
      if (cost < best_obj) {
        best_obj = cost;
        best_masks = masks;
      }
      return;
    }
    const unsigned full = (1u << problem.num_pilots) - 1u;
    for (unsigned mask = 1; mask <= full; ++mask) {
      const double next = cost + add_cost(user, mask, user);
      if (prune && next > best_obj) continue;
      ++expansions;
      masks[user] = mask;
      dfs(user + 1, next);
      masks[user] = 0;
      if (budget_hit) return;
    }
  }

  PilotAssignment result(const std::string& method) const {
    PilotAssignment a =
        PilotAssignment::zeros(problem.num_users(), problem.num_pilots);
    for (int i = 0; i < problem.num_users(); ++i) {
      for (int p = 0; p < problem.num_pilots; ++p) {
        if (best_masks[i] & (1u << p)) a.set(i, p, true);
      }
    }
    a.meta.method = method;
    a.meta.nodes_explored = leaves;
    a.meta.proven_optimal = !budget_hit;
    a.meta.unserved_users = 0;
    return a;
  }
};

inline PilotAssignment run_search(const AssignmentProblem& problem,
                                  const std::string& method, bool prune,
                                  long node_budget) {
  if (problem.num_pilots < 1) {
    throw std::invalid_argument("solver: need >= 1 pilot");
  }
  if (problem.num_users() == 0) {
    PilotAssignment a = PilotAssignment::zeros(0, problem.num_pilots);
    a.meta.method = method;
    a.meta.proven_optimal = true;
    return a;
  }
  if (prune && problem.u.minCoeff() < 0.0) {
    throw std::invalid_argument("solve_bnb: costs must be nonnegative");
  }
  PilotAssignment out;
  if (problem.kind == ConstraintKind::kAtLeastOnePilot) {
    BitmaskSearch search(problem, node_budget, prune);
    search.dfs(0, 0.0);
    if (search.best_masks.empty()) {
      out = PilotAssignment::zeros(problem.num_users(), problem.num_pilots);
      out.meta.method = method;
      out.meta.feasible = false;
      return out;
    }
    out = search.result(method);
  } else {
    SlotSearch search(problem, node_budget, prune);
    search.dfs(0, 0.0);
    if (search.best_choice.empty()) {
      out = PilotAssignment::zeros(problem.num_users(), problem.num_pilots);
      out.meta.method = method;
      out.meta.feasible = false;
      return out;
    }
    out = search.result(method);
  }
  out.objective = assignment_objective(problem, out);
  out.meta.feasible = check_feasible(problem, out);
  return out;
}

}  // namespace detail

/// Search-space cap for the exhaustive oracle.
inline double exhaustive_space(const AssignmentProblem& problem) {
  double space = 1.0;
  if (problem.kind == ConstraintKind::kAtLeastOnePilot) {
    const double per_user = std::pow(2.0, problem.num_pilots) - 1.0;
    for (int i = 0; i < problem.num_users(); ++i) space *= per_user;
  } else {
    for (const auto& cell : problem.cell_users) {
      if (cell.empty()) continue;
      for (int p = 0; p < problem.num_pilots; ++p) {
        space *= static_cast<double>(cell.size());
      }
    }
  }
  return space;
}

/**
 * @brief Global optimum by full enumeration. Refuses search spaces above
 * 2^24 (at-least-one variant) or 10^7 (equality variants).
 */
inline PilotAssignment solve_exhaustive(const AssignmentProblem& problem) {
  const double cap =
      problem.kind == ConstraintKind::kAtLeastOnePilot ? 16777216.0 : 1e7;
  if (exhaustive_space(problem) > cap) {
    throw std::invalid_argument("solve_exhaustive: search space too large");
  }
  return detail::run_search(problem, "exhaustive", /*prune=*/false, -1);
}

/**
 * @brief Depth-first branch-and-bound. The accumulated cost of fixed
 * variables is a valid lower bound because all costs are nonnegative.
 * When the node budget runs out the best incumbent is returned with
 * proven_optimal = false.
 */
inline PilotAssignment solve_bnb(const AssignmentProblem& problem,
                                 long node_budget = -1) {
  return detail::run_search(problem, "bnb", /*prune=*/true, node_budget);
}

/**
 * @brief Seeded local search: random feasible start, first-improvement
 * sweeps over single-slot reassignments and within-cell pilot swaps
 * (single-pilot moves for the at-least-one variant). Monotone descent;
 * not proven optimal.
 */
inline PilotAssignment solve_local_search(const AssignmentProblem& problem,
                                          std::uint64_t seed, int iters = 1000) {
  if (problem.num_pilots < 1) {
    throw std::invalid_argument("solve_local_search: no feasible start");
  }
  const int n = problem.num_users();
  PilotAssignment best;
  double best_obj = std::numeric_limits<double>::infinity();
  const int restarts = 8;
  for (int restart = 0; restart < restarts; ++restart) {
    std::mt19937_64 rng = seeded_stream({seed, 0x10ca15ea6cull, (std::uint64_t)restart});
    PilotAssignment a = PilotAssignment::zeros(n, problem.num_pilots);
    if (problem.kind == ConstraintKind::kAtLeastOnePilot) {
      for (int i = 0; i < n; ++i) {
        a.set(i, static_cast<int>(rng() % problem.num_pilots), true);
      }
    } else {
      for (const auto& cell : problem.cell_users) {
        if (cell.empty()) continue;
        for (int p = 0; p < problem.num_pilots; ++p) {
          a.set(cell[rng() % cell.size()], p, true);
        }
      }
    }
    double obj = assignment_objective(problem, a);
    for (int it = 0; it < iters; ++it) {
      bool improved = false;
      if (problem.kind == ConstraintKind::kAtLeastOnePilot) {
        for (int i = 0; i < n && !improved; ++i) {
          const int cur = [&] {
            for (int p = 0; p < problem.num_pilots; ++p) {
              if (a.active(i, p)) return p;
            }
            return 0;
          }();
          for (int p = 0; p < problem.num_pilots && !improved; ++p) {
            if (p == cur) continue;
            a.set(i, cur, false);
            a.set(i, p, true);
            const double cand = assignment_objective(problem, a);
            if (cand < obj) {
              obj = cand;
              improved = true;
            } else {
              a.set(i, p, false);
              a.set(i, cur, true);
            }
          }
        }
      } else {
        for (std::size_t c = 0; c < problem.cell_users.size() && !improved; ++c) {
          const auto& cell = problem.cell_users[c];
          if (cell.empty()) continue;
          for (int p = 0; p < problem.num_pilots && !improved; ++p) {
            const int cur = [&] {
              for (int i : cell) {
                if (a.active(i, p)) return i;
              }
              return cell.front();
            }();
            // reassign the (cell, pilot) slot
            for (int cand_user : cell) {
              if (cand_user == cur) continue;
              a.set(cur, p, false);
              a.set(cand_user, p, true);
              const double cand = assignment_objective(problem, a);
              if (cand < obj) {
                obj = cand;
                improved = true;
                break;
              }
              a.set(cand_user, p, false);
              a.set(cur, p, true);
            }
            // swap with another pilot of the same cell
            for (int q = p + 1; q < problem.num_pilots && !improved; ++q) {
              const int other = [&] {
                for (int i : cell) {
                  if (a.active(i, q)) return i;
                }
                return cell.front();
              }();
              if (other == cur) continue;
              a.set(cur, p, false);
              a.set(other, q, false);
              a.set(other, p, true);
              a.set(cur, q, true);
              const double cand = assignment_objective(problem, a);
              if (cand < obj) {
                obj = cand;
                improved = true;
              } else {
                a.set(other, p, false);
                a.set(cur, q, false);
                a.set(cur, p, true);
                a.set(other, q, true);
              }
            }
          }
        }
      }
      if (!improved) break;
    }
    if (obj < best_obj) {
      best_obj = obj;
      best = a;
    }
  }
  best.objective = best_obj;
  best.meta.method = "local";
  best.meta.proven_optimal = false;
  best.meta.feasible = check_feasible(problem, best);
  best.meta.unserved_users = count_unserved(best);
  return best;
}

/**
 * @brief Greedy sequential baseline: target-cell users in index order; each
 * takes the next pilot and pulls from every other cell the not-yet-assigned
 * user with the lowest cost toward the target user (ties to the lowest
 * index). Exhausted cells drop their constraint for the remaining pilots.
 */
inline PilotAssignment solve_greedy_sequential(const AssignmentProblem& problem) {
  const int target = problem.target_cell >= 0 ? problem.target_cell : 0;
  if (problem.cell_users.empty()) {
    throw std::invalid_argument("solve_greedy_sequential: no cells");
  }
  PilotAssignment a =
      PilotAssignment::zeros(problem.num_users(), problem.num_pilots);
  std::vector<std::uint8_t> used(problem.num_users(), 0);
  const auto& target_users = problem.cell_users[target];
  const int rounds =
      std::min<int>(problem.num_pilots, static_cast<int>(target_users.size()));
  for (int p = 0; p < rounds; ++p) {
    const int t = target_users[p];
    a.set(t, p, true);
    used[t] = 1;
    for (std::size_t c = 0; c < problem.cell_users.size(); ++c) {
      if (static_cast<int>(c) == target) continue;
      int chosen = -1;
      double best = std::numeric_limits<double>::infinity();
      for (int cand : problem.cell_users[c]) {
        if (used[cand]) continue;
        const double cost = problem.u(t, cand);
        if (cost < best) {
          best = cost;
          chosen = cand;
        }
      }
      if (chosen < 0) continue;  // cell exhausted: constraint dropped
      a.set(chosen, p, true);
      used[chosen] = 1;
    }
  }
  a.objective = assignment_objective(problem, a);
  a.meta.method = "greedy";
  a.meta.proven_optimal = false;
  a.meta.feasible = check_feasible(problem, a, /*allow_exhausted_cells=*/true);
  a.meta.unserved_users = count_unserved(a);
  return a;
}

/// Convenience wrapper building the single-cell formulation first.
inline PilotAssignment solve_greedy_sequential(const Scenario& scenario,
                                               const UtilityMatrix& util,
                                               int target_cell = 0) {
  const AssignmentProblem problem =
      build_singlecell(scenario, target_cell, util);
  return solve_greedy_sequential(problem);
}

}  // namespace pilotdecon
