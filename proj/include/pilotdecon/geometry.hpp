#pragma once
/**
 * @file geometry.hpp
 * @brief Multi-cell layout, user/BS positions, and angle bookkeeping.
 *
 * Angles of arrival at a uniform linear array are identified mod pi: the
 * steering vector depends on the bearing only through cos(theta), so every
 * angle is stored canonically in [0, pi). Wrapped angular supports are kept
 * as a union of at most two closed sub-intervals of [0, pi].
 */

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace pilotdecon {

inline constexpr double kPi = std::numbers::pi;

/// Planar position in meters.
struct Position {
  double x = 0.0;
  double y = 0.0;
};

inline double distance(const Position& a, const Position& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

/// Wraps an arbitrary angle into [0, pi).
inline double wrap_mod_pi(double angle) {
  double r = std::fmod(angle, kPi);
  if (r < 0.0) r += kPi;
  if (r >= kPi) r = 0.0;
  return r;
}

/// Rotation operator: clockwise rotation by `pivot` followed by mod-pi wrap.
inline double rotate(double angle, double pivot) {
  return wrap_mod_pi(angle - pivot);
}

/// Mean angle of arrival of a user seen from a BS, canonical in [0, pi).
inline double mean_aoa(const Position& user, const Position& bs) {
  const double dx = user.x - bs.x;
  const double dy = user.y - bs.y;
  if (dx == 0.0 && dy == 0.0) {
    throw std::invalid_argument("mean_aoa: user and BS positions coincide");
  }
  return wrap_mod_pi(std::atan2(dy, dx));
}

/// Half-width of the AoA support induced by a scattering disk of radius
/// `scatter_radius` around the user.
inline double angular_spread(const Position& user, const Position& bs,
                             double scatter_radius) {
  const double d = distance(user, bs);
  if (scatter_radius < 0.0) {
    throw std::invalid_argument("angular_spread: negative scatter radius");
  }
  if (scatter_radius >= d) {
    throw std::invalid_argument(
        "angular_spread: scatter ring encloses the BS (r_s >= distance)");
  }
  return std::asin(scatter_radius / d);
}

/// Closed sub-interval of [0, pi].
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double length() const { return hi - lo; }
};

/**
 * @brief Wrapped AoA support: one or two closed sub-intervals of [0, pi].
 *
 * Two intervals appear exactly when the raw interval [mean - spread,
 * mean + spread] straddles 0 or pi under the mod-pi identification. The
 * total measure always equals 2 * spread.
 */
struct AngularSupport {
  double mean = 0.0;    ///< canonical mean angle in [0, pi)
  double spread = 0.0;  ///< half-width, in [0, pi/2)
  std::vector<Interval> intervals;

  static AngularSupport from_mean_spread(double mean_angle, double spread) {
    if (spread < 0.0 || spread >= kPi / 2.0) {
      throw std::invalid_argument("AngularSupport: spread must be in [0, pi/2)");
    }
    AngularSupport s;
    s.mean = wrap_mod_pi(mean_angle);
    s.spread = spread;
    const double lo = s.mean - spread;
    const double hi = s.mean + spread;
    if (lo < 0.0) {
      s.intervals = {{0.0, hi}, {kPi + lo, kPi}};
    } else if (hi > kPi) {
      s.intervals = {{0.0, hi - kPi}, {lo, kPi}};
    } else {
      s.intervals = {{lo, hi}};
    }
    return s;
  }

  /// Support given by its endpoints (not wrapped); mean is the midpoint.
  static AngularSupport from_interval(double lo, double hi) {
    if (hi < lo) throw std::invalid_argument("AngularSupport: hi < lo");
    return from_mean_spread(0.5 * (lo + hi), 0.5 * (hi - lo));
  }

  double measure() const {
    double m = 0.0;
    for (const auto& iv : intervals) m += iv.length();
    return m;
  }

  bool contains(double theta) const {
    for (const auto& iv : intervals) {
      if (theta >= iv.lo && theta <= iv.hi) return true;
    }
    return false;
  }

  /// Smallest angle covered by the support.
  double min_angle() const {
    double m = intervals.front().lo;
    for (const auto& iv : intervals) m = std::min(m, iv.lo);
    return m;
  }

  /// Largest angle covered by the support.
  double max_angle() const {
    double m = intervals.front().hi;
    for (const auto& iv : intervals) m = std::max(m, iv.hi);
    return m;
  }
};

/**
 * @brief AoA support of user j at `bs`, rotated so that the mean AoA of the
 * pivot user becomes the zero axis.
 *
 * For j == pivot the result is the wrapped pair {[0, delta], [pi-delta, pi]}.
 */
inline AngularSupport support_wrt(const Position& user_j, const Position& bs,
                                  const Position& pivot_user,
                                  double scatter_radius) {
  const double mean_j = mean_aoa(user_j, bs);
  const double delta_j = angular_spread(user_j, bs, scatter_radius);
  const double mean_pivot = mean_aoa(pivot_user, bs);
  return AngularSupport::from_mean_spread(mean_j - mean_pivot, delta_j);
}

/**
 * @brief BS positions of a hexagonal layout: center site plus `num_rings`
 * rings at inter-site distance sqrt(3) * radius.
 *
 * Cells are flat-topped hexagons with circumradius `radius`. Ring k holds
 * 6k sites, so the layout has 1 + 3k(k+1) BSs in total.
 */
inline std::vector<Position> hex_layout(int num_rings, double radius) {
  if (num_rings < 0) throw std::invalid_argument("hex_layout: num_rings < 0");
  std::vector<Position> out;
  out.push_back({0.0, 0.0});
  const double sq3 = std::sqrt(3.0);
  for (int ring = 1; ring <= num_rings; ++ring) {
    for (int q = -ring; q <= ring; ++q) {
      for (int r = -ring; r <= ring; ++r) {
        const int dist = (std::abs(q) + std::abs(r) + std::abs(q + r)) / 2;
        if (dist != ring) continue;
        out.push_back({1.5 * radius * q, sq3 * radius * (r + 0.5 * q)});
      }
    }
  }
  return out;
}

/// Point-in-cell test for a flat-topped hexagon of circumradius `radius`.
inline bool point_in_hex(const Position& p, const Position& center,
                         double radius) {
  const double dx = p.x - center.x;
  const double dy = p.y - center.y;
  const double apothem = 0.5 * std::sqrt(3.0) * radius;
  const double c30 = 0.5 * std::sqrt(3.0);
  return std::abs(dy) <= apothem &&
         std::abs(c30 * dx + 0.5 * dy) <= apothem &&
         std::abs(-c30 * dx + 0.5 * dy) <= apothem;
}

/// Rejection-sampled uniform user positions inside a hexagonal cell.
/// Deterministic for a fixed seed.
inline std::vector<Position> place_users_uniform(const Position& bs,
                                                 double radius, int count,
                                                 std::uint64_t seed) {
  if (count < 0) throw std::invalid_argument("place_users_uniform: count < 0");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ux(-radius, radius);
  std::uniform_real_distribution<double> uy(-0.5 * std::sqrt(3.0) * radius,
                                            0.5 * std::sqrt(3.0) * radius);
  std::vector<Position> out;
  out.reserve(static_cast<std::size_t>(count));
  while (static_cast<int>(out.size()) < count) {
    Position p{bs.x + ux(rng), bs.y + uy(rng)};
    if (point_in_hex(p, bs, radius)) out.push_back(p);
  }
  return out;
}

/// One cell: BS position, served users, indices of surrounding cells.
struct CellSpec {
  Position bs;
  std::vector<Position> users;
  std::vector<int> neighbors;
};

/// Reference to a user as (cell index, user index within the cell).
struct UserRef {
  int cell = 0;
  int user = 0;
  bool operator==(const UserRef&) const = default;
};

/**
 * @brief Full scenario: cell layout plus array and propagation constants.
 */
struct Scenario {
  std::vector<CellSpec> cells;
  double cell_radius = 1000.0;     ///< R, meters
  double scatter_radius = 50.0;    ///< r_s, meters
  double pathloss_exponent = 2.5;  ///< eta
  double wavelength = 0.1;         ///< lambda, meters
  double antenna_spacing = 0.05;   ///< D, meters
  double noise_variance = 1e-3;    ///< sigma^2
  double cell_edge_snr_db = 20.0;  ///< gamma_SNR
  int num_antennas = 10;           ///< M
  int num_paths = 50;              ///< B
  int pilot_length = 10;           ///< tau
  int num_pilots = 1;              ///< |P|

  int num_users() const {
    int n = 0;
    for (const auto& c : cells) n += static_cast<int>(c.users.size());
    return n;
  }

  std::vector<UserRef> all_users() const {
    std::vector<UserRef> refs;
    for (int j = 0; j < static_cast<int>(cells.size()); ++j) {
      for (int i = 0; i < static_cast<int>(cells[j].users.size()); ++i) {
        refs.push_back({j, i});
      }
    }
    return refs;
  }

  const Position& user_pos(const UserRef& u) const {
    return cells[u.cell].users[u.user];
  }

  /// Throws when a scenario invariant is violated.
  void validate() const {
    if (num_antennas < 2) throw std::invalid_argument("scenario: M must be >= 2");
    if (num_paths < 1) throw std::invalid_argument("scenario: B must be >= 1");
    if (num_pilots < 1) throw std::invalid_argument("scenario: need >= 1 pilot");
    if (pilot_length < num_pilots) {
      throw std::invalid_argument(
          "scenario: pilot length too short for the pilot set (tau < |P|)");
    }
    if (cell_radius <= 0.0) throw std::invalid_argument("scenario: R <= 0");
    if (pathloss_exponent <= 0.0) throw std::invalid_argument("scenario: eta <= 0");
    if (wavelength <= 0.0) throw std::invalid_argument("scenario: lambda <= 0");
    if (antenna_spacing <= 0.0) throw std::invalid_argument("scenario: D <= 0");
    if (noise_variance <= 0.0) throw std::invalid_argument("scenario: sigma^2 <= 0");
    for (const auto& cell : cells) {
      for (int n : cell.neighbors) {
        if (n < 0 || n >= static_cast<int>(cells.size())) {
          throw std::invalid_argument("scenario: neighbor index out of range");
        }
      }
    }
    for (const auto& cell : cells) {
      for (const auto& u : cell.users) {
        for (const auto& other : cells) {
          if (scatter_radius >= distance(u, other.bs)) {
            throw std::invalid_argument(
                "scenario: scatter radius reaches a BS (r_s >= distance)");
          }
        }
      }
    }
  }
};

}  // namespace pilotdecon
