#pragma once
/**
 * @file channel.hpp
 * @brief Steering vectors, random channel realizations, and location-aided
 * covariance matrices for a uniform linear array.
 *
 * The channel of a user is a superposition of B paths with i.i.d. complex
 * Gaussian gains and AoAs drawn uniformly from the user's angular support.
 * Its covariance follows by integrating the rank-one steering outer product
 * against the AoA density, which only needs the user location, the scatter
 * radius, and the path-loss gain.
 */

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <ostream>
#include <random>
#include <stdexcept>
#include <vector>

#include "pilotdecon/geometry.hpp"
#include "pilotdecon/quadrature.hpp"
#include "pilotdecon/rng.hpp"

namespace pilotdecon {

using SteeringVector = Eigen::VectorXcd;

/// ULA steering vector: entry m = exp(-j 2 pi m (D/lambda) cos(theta)),
/// m = 0..M-1. Entry 0 is always 1.
inline SteeringVector steering(double theta, int num_antennas, double spacing,
                               double wavelength) {
  if (num_antennas < 1) throw std::invalid_argument("steering: M must be >= 1");
  if (spacing <= 0.0 || wavelength <= 0.0) {
    throw std::invalid_argument("steering: D and lambda must be positive");
  }
  SteeringVector a(num_antennas);
  const double step = -2.0 * kPi * (spacing / wavelength) * std::cos(theta);
  for (int m = 0; m < num_antennas; ++m) {
    a(m) = std::polar(1.0, step * m);
  }
  return a;
}

/// Linear path-loss constant anchored at the cell edge:
/// alpha[dB] = gamma_SNR + 10 eta log10(R) + 10 log10(sigma^2).
inline double cell_edge_alpha(double snr_db, double eta, double radius,
                              double noise_variance) {
  if (radius <= 0.0) throw std::invalid_argument("cell_edge_alpha: R <= 0");
  if (noise_variance <= 0.0) {
    throw std::invalid_argument("cell_edge_alpha: sigma^2 <= 0");
  }
  const double alpha_db =
      snr_db + 10.0 * eta * std::log10(radius) + 10.0 * std::log10(noise_variance);
  return std::pow(10.0, alpha_db / 10.0);
}

/// Large-scale gain beta = alpha * d^(-eta).
inline double large_scale_gain(const Position& user, const Position& bs,
                               double alpha, double eta) {
  const double d = distance(user, bs);
  if (d == 0.0) {
    throw std::invalid_argument("large_scale_gain: user and BS coincide");
  }
  return alpha * std::pow(d, -eta);
}

/// One random channel draw together with the paths that generated it.
struct ChannelRealization {
  Eigen::VectorXcd h;
  std::vector<double> path_angles;
  Eigen::VectorXcd path_gains;
};

/**
 * @brief Draws a channel: B AoAs uniform on the support (a wrapped interval
 * is chosen proportionally to its length), gains CN(0, beta).
 */
inline ChannelRealization draw_channel(const AngularSupport& support,
                                       double beta, int num_paths,
                                       int num_antennas, double spacing,
                                       double wavelength,
                                       std::mt19937_64& rng) {
  if (beta <= 0.0) throw std::invalid_argument("draw_channel: beta <= 0");
  if (num_paths < 1) throw std::invalid_argument("draw_channel: B must be >= 1");
  ChannelRealization out;
  out.h = Eigen::VectorXcd::Zero(num_antennas);
  out.path_angles.resize(num_paths);
  out.path_gains.resize(num_paths);
  const double measure = support.measure();
  for (int b = 0; b < num_paths; ++b) {
    double theta = support.mean;
    if (measure > 0.0) {
      double u = uniform_in(rng, 0.0, measure);
      for (const auto& iv : support.intervals) {
        if (u <= iv.length()) {
          theta = iv.lo + u;
          break;
        }
        u -= iv.length();
      }
    }
    const std::complex<double> gain = complex_gaussian(rng, beta);
    out.path_angles[b] = theta;
    out.path_gains(b) = gain;
    out.h += steering(theta, num_antennas, spacing, wavelength) * gain;
  }
  out.h /= std::sqrt(static_cast<double>(num_paths));
  return out;
}

/// M x M channel covariance together with the large-scale gain it embeds.
/// Hermitian PSD with trace M * beta.
struct CovarianceMatrix {
  Eigen::MatrixXcd r;
  double beta = 0.0;
};

/**
 * @brief Location-aided covariance: beta times the quadrature of
 * a(theta) a(theta)^H against the uniform AoA density over the support.
 *
 * Composite Gauss-Legendre with `quad_nodes` nodes per interval; the
 * integrand is smooth, so the default 64 over-resolves for M <= 100.
 * A zero-width support degenerates to the rank-one point mass.
 */
inline CovarianceMatrix covariance(const AngularSupport& support, double beta,
                                   int num_antennas, double spacing,
                                   double wavelength, int quad_nodes = 64) {
  if (quad_nodes < 2) {
    throw std::invalid_argument("covariance: need >= 2 quadrature nodes");
  }
  CovarianceMatrix cov;
  cov.beta = beta;
  const double measure = support.measure();
  if (measure <= 0.0) {
    const SteeringVector a =
        steering(support.mean, num_antennas, spacing, wavelength);
    cov.r = beta * (a * a.adjoint());
    return cov;
  }
  cov.r = Eigen::MatrixXcd::Zero(num_antennas, num_antennas);
  const auto& rule = gauss_legendre(quad_nodes);
  for (const auto& iv : support.intervals) {
    const double mid = 0.5 * (iv.lo + iv.hi);
    const double half = 0.5 * iv.length();
    for (int k = 0; k < quad_nodes; ++k) {
      const double theta = mid + half * rule.nodes[k];
      const double w = half * rule.weights[k] * beta / measure;
      const SteeringVector a = steering(theta, num_antennas, spacing, wavelength);
      cov.r += w * (a * a.adjoint());
    }
  }
  return cov;
}

/// Debug export: one row per matrix row, entries as interleaved
/// real,imag pairs.
inline void export_covariance_csv(const CovarianceMatrix& cov,
                                  std::ostream& out) {
  const Eigen::Index n = cov.r.rows();
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (j > 0) out << ',';
      out << cov.r(i, j).real() << ',' << cov.r(i, j).imag();
    }
    out << '\n';
  }
}

/// Hermitian / positive-semidefinite check used by the invariant suites.
inline bool is_hermitian_psd(const Eigen::MatrixXcd& m, double tol = 1e-10) {
  const double scale = m.norm();
  if ((m - m.adjoint()).norm() > tol * std::max(scale, 1.0)) return false;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m, Eigen::EigenvaluesOnly);
  const double trace = std::abs(m.trace().real());
  return es.eigenvalues().minCoeff() >= -tol * std::max(trace, 1.0);
}

}  // namespace pilotdecon
