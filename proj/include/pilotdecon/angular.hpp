#pragma once
/**
 * @file angular.hpp
 * @brief Finite-antenna interference analysis: the cost function J and its
 * zeros, the desired angular region, the true/approximate combined costs,
 * and the pairwise interference costs feeding the assignment problems.
 *
 * All angles here live in the rotated frame where the target user's mean
 * AoA is the zero axis; the target's own support is then the wrapped pair
 * {[0, delta], [pi-delta, pi]}. The desired angular region (DAR) is the
 * band of bearings whose cost is pinched between zeros of the two boundary
 * cost functions J(delta, .) and J(pi-delta, .).
 */

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "pilotdecon/channel.hpp"
#include "pilotdecon/geometry.hpp"

namespace pilotdecon {

/**
 * @brief Cost J(theta, phi) = |sum_{m=1}^{M} exp(2 pi j (m-1) (D/lambda)
 * (cos phi - cos theta))|, evaluated through the Dirichlet-kernel closed
 * form |sin(pi M x) / sin(pi x)| with x = (D/lambda)(cos phi - cos theta).
 *
 * When x is an integer both numerator and denominator vanish and the limit
 * value M is returned.
 */
inline double cost_j(double theta, double phi, int num_antennas,
                     double spacing, double wavelength) {
  if (num_antennas < 1) throw std::invalid_argument("cost_j: M must be >= 1");
  const double x = (spacing / wavelength) * (std::cos(phi) - std::cos(theta));
  if (std::abs(x - std::round(x)) < 1e-12) {
    return static_cast<double>(num_antennas);
  }
  return std::abs(std::sin(kPi * num_antennas * x) / std::sin(kPi * x));
}

/**
 * @brief Interference metric (1/M) a(phi)^H R a(phi): how strongly a unit
 * probe from bearing phi couples into the covariance R.
 *
 * For R built from a point mass at theta0 this equals (beta/M) J^2(theta0,
 * phi); for a general support it is the density-weighted average of J^2.
 */
inline double interference_metric(double phi, const CovarianceMatrix& cov,
                                  double spacing, double wavelength) {
  const int m = static_cast<int>(cov.r.rows());
  const SteeringVector a = steering(phi, m, spacing, wavelength);
  const std::complex<double> q = a.dot(cov.r * a);  // a^H R a
  return std::max(q.real(), 0.0) / m;
}

/**
 * @brief All zeros of J(theta, .): bearings phi with cos(phi) = cos(theta)
 * + z lambda / (M D) for integer z != 0 and cos(phi) in [-1, 1], sorted
 * ascending.
 *
 * Multiples of M are excluded: there x is an integer and J peaks at M
 * (grating lobe) instead of vanishing. For theta = 0 this leaves exactly
 * M-1 zeros.
 */
inline std::vector<double> zeros_of_j(double theta, int num_antennas,
                                      double spacing, double wavelength) {
  if (num_antennas < 2) throw std::invalid_argument("zeros_of_j: M must be >= 2");
  const double step = wavelength / (num_antennas * spacing);
  const double c0 = std::cos(theta);
  std::vector<double> zeros;
  const long z_lo = static_cast<long>(std::ceil((-1.0 - c0) / step - 1e-9));
  const long z_hi = static_cast<long>(std::floor((1.0 - c0) / step + 1e-9));
  for (long z = z_lo; z <= z_hi; ++z) {
    if (z == 0 || z % num_antennas == 0) continue;
    double c = c0 + z * step;
    if (std::abs(c) > 1.0 + 1e-12) continue;
    c = std::clamp(c, -1.0, 1.0);
    zeros.push_back(std::acos(c));
  }
  std::sort(zeros.begin(), zeros.end());
  return zeros;
}

/**
 * @brief Desired angular region of a user with angular spread theta_delta:
 * interferers whose (rotated) support falls inside [psi_min, psi_max] cause
 * negligible contamination at M antennas.
 */
struct DesiredAngularRegion {
  double psi_min = 0.0;
  double psi_max = 0.0;
  double theta_delta = 0.0;
  int num_antennas = 0;
};

/**
 * @brief Computes the DAR from the zero sets of the two boundary cost
 * functions J(theta_delta, .) and J(pi - theta_delta, .), both restricted
 * to the open interval (theta_delta, pi - theta_delta):
 * psi_min = max of the two minimal zeros, psi_max = min of the two maximal
 * zeros.
 *
 * Throws when no region exists (M too small for the spread).
 */
inline DesiredAngularRegion dar(double theta_delta, int num_antennas,
                                double spacing, double wavelength) {
  if (theta_delta <= 0.0 || theta_delta >= kPi / 2.0) {
    throw std::invalid_argument("dar: theta_delta must be in (0, pi/2)");
  }
  const double lo = theta_delta;
  const double hi = kPi - theta_delta;
  auto restricted = [&](double boundary) {
    std::vector<double> zs = zeros_of_j(boundary, num_antennas, spacing, wavelength);
    std::erase_if(zs, [&](double z) { return z <= lo || z >= hi; });
    return zs;
  };
  const std::vector<double> z_low = restricted(theta_delta);
  const std::vector<double> z_high = restricted(kPi - theta_delta);
  if (z_low.empty() || z_high.empty()) {
    throw std::domain_error("dar: no desired angular region exists (M too small)");
  }
  DesiredAngularRegion region;
  region.psi_min = std::max(z_low.front(), z_high.front());
  region.psi_max = std::min(z_low.back(), z_high.back());
  region.theta_delta = theta_delta;
  region.num_antennas = num_antennas;
  if (region.psi_min >= region.psi_max) {
    throw std::domain_error("dar: no desired angular region exists (M too small)");
  }
  return region;
}

/**
 * @brief Combined cost J^True(phi) = max over theta in the support of
 * J(theta, phi), evaluated on a dense grid (>= 2 points per interval,
 * `grid_points` total distributed by interval length).
 */
inline double true_cost(double phi, const AngularSupport& support,
                        int num_antennas, double spacing, double wavelength,
                        int grid_points = 512) {
  if (grid_points < 2) throw std::invalid_argument("true_cost: grid too small");
  const double measure = support.measure();
  double best = 0.0;
  for (const auto& iv : support.intervals) {
    int n = 2;
    if (measure > 0.0) {
      n = std::max(2, static_cast<int>(std::lround(grid_points * iv.length() / measure)));
    }
    for (int k = 0; k < n; ++k) {
      const double theta = iv.lo + iv.length() * k / (n - 1);
      best = std::max(best, cost_j(theta, phi, num_antennas, spacing, wavelength));
    }
  }
  return best;
}

/**
 * @brief Piecewise-linear approximate cost in the cos(phi) domain:
 * 1 outside [-cos(delta), cos(delta)], 0 on [cos(psi_max), cos(psi_min)],
 * linear ramps in between. Continuous with range [0, 1].
 */
inline double approx_cost(double phi, const DesiredAngularRegion& region) {
  const double c = std::cos(phi);
  const double cd = std::cos(region.theta_delta);
  const double cmin = std::cos(region.psi_min);
  const double cmax = std::cos(region.psi_max);
  if (c >= cd || c <= -cd) return 1.0;
  if (c >= cmin) return (c - cmin) / (cd - cmin);
  if (c >= cmax) return 0.0;
  return 1.0 - (c + cd) / (cmax + cd);
}

/**
 * @brief Pairwise interference cost J_ij: the approximate cost of the
 * interferer support evaluated at its two extreme endpoints and summed.
 * Zero exactly when the support lies inside the DAR; at most 2.
 */
inline double pair_cost(const AngularSupport& interferer_support,
                        const DesiredAngularRegion& region) {
  return approx_cost(interferer_support.min_angle(), region) +
         approx_cost(interferer_support.max_angle(), region);
}

/// Geometry-level overload: target and interferer positions seen from the
/// BS serving the target.
inline double pair_cost(const Position& target, const Position& interferer,
                        const Position& bs, double scatter_radius,
                        int num_antennas, double spacing, double wavelength) {
  const double delta_t = angular_spread(target, bs, scatter_radius);
  const DesiredAngularRegion region =
      dar(delta_t, num_antennas, spacing, wavelength);
  const AngularSupport sup = support_wrt(interferer, bs, target, scatter_radius);
  return pair_cost(sup, region);
}

/// Pairwise interference costs for every ordered user pair, users indexed
/// in global cell-major order.
struct UtilityMatrix {
  Eigen::MatrixXd u;
  std::vector<UserRef> users;
};

/**
 * @brief U_ij = J_ij for i != j (cost of user j interfering with user i at
 * i's serving BS), zero diagonal. Generally not symmetric.
 */
inline UtilityMatrix utility_matrix(const Scenario& scenario, int num_antennas) {
  UtilityMatrix util;
  util.users = scenario.all_users();
  const int n = static_cast<int>(util.users.size());
  util.u = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    const UserRef& ti = util.users[i];
    const Position& bs = scenario.cells[ti.cell].bs;
    const Position& target = scenario.user_pos(ti);
    const double delta_t = angular_spread(target, bs, scenario.scatter_radius);
    const DesiredAngularRegion region =
        dar(delta_t, num_antennas, scenario.antenna_spacing, scenario.wavelength);
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      const AngularSupport sup = support_wrt(
          scenario.user_pos(util.users[j]), bs, target, scenario.scatter_radius);
      util.u(i, j) = pair_cost(sup, region);
    }
  }
  return util;
}

}  // namespace pilotdecon
