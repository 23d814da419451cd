#pragma once
/**
 * @file estimator.hpp
 * @brief Received pilot block and MMSE uplink channel estimation under
 * pilot contamination.
 *
 * The de-spreading S^H vec(Y) with S = s (x) I_M is computed as Y conj(s)
 * (Kronecker identity), which avoids materializing the tau*M x M lift.
 * The linear system is solved through a Hermitian factorization; the matrix
 * sigma^2 I + tau (R_d + sum R_i) is positive definite for sigma^2 > 0.
 */

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>
#include <vector>

#include "pilotdecon/channel.hpp"

namespace pilotdecon {

using PilotSequence = Eigen::VectorXcd;

/// dB floor reported when the estimation error underflows (h_hat == h_true).
inline constexpr double kErrorFloorDb = -300.0;

/// `count` mutually orthogonal unit-modulus pilots of length `length`
/// (columns of the DFT matrix), so s^H s = tau for each.
inline std::vector<PilotSequence> pilot_set(int length, int count) {
  if (length < 1) throw std::invalid_argument("pilot_set: length must be >= 1");
  if (count < 0 || count > length) {
    throw std::invalid_argument("pilot_set: count must be in [0, length]");
  }
  std::vector<PilotSequence> pilots;
  pilots.reserve(static_cast<std::size_t>(count));
  for (int p = 0; p < count; ++p) {
    PilotSequence s(length);
    for (int t = 0; t < length; ++t) {
      s(t) = std::polar(1.0, -2.0 * kPi * p * t / length);
    }
    pilots.push_back(std::move(s));
  }
  return pilots;
}

/**
 * @brief Received M x tau pilot block: (h_desired + sum h_interferer) s^T
 * plus element-wise complex AWGN of variance `noise_variance`.
 */
inline Eigen::MatrixXcd receive(const Eigen::VectorXcd& desired,
                                const std::vector<Eigen::VectorXcd>& interferers,
                                const PilotSequence& s, double noise_variance,
                                std::mt19937_64& rng) {
  const Eigen::Index m = desired.size();
  Eigen::VectorXcd total = desired;
  for (const auto& h : interferers) {
    if (h.size() != m) throw std::invalid_argument("receive: channel size mismatch");
    total += h;
  }
  Eigen::MatrixXcd y = total * s.transpose();
  if (noise_variance > 0.0) {
    for (Eigen::Index c = 0; c < y.cols(); ++c) {
      for (Eigen::Index r = 0; r < y.rows(); ++r) {
        y(r, c) += complex_gaussian(rng, noise_variance);
      }
    }
  }
  return y;
}

/// De-spreading: S^H vec(Y) evaluated as Y conj(s).
inline Eigen::VectorXcd despread(const Eigen::MatrixXcd& y,
                                 const PilotSequence& s) {
  if (y.cols() != s.size()) {
    throw std::invalid_argument("despread: pilot length mismatch");
  }
  return y * s.conjugate();
}

/**
 * @brief MMSE estimate of the desired channel given the desired and
 * interfering covariance matrices:
 * h = R_d (sigma^2 I + tau (R_d + sum R_i))^{-1} Y conj(s).
 */
inline Eigen::VectorXcd mmse_estimate(const CovarianceMatrix& desired,
                                      const std::vector<CovarianceMatrix>& interferers,
                                      const Eigen::MatrixXcd& y,
                                      const PilotSequence& s,
                                      double noise_variance) {
  const Eigen::Index m = desired.r.rows();
  if (y.rows() != m) throw std::invalid_argument("mmse_estimate: M mismatch");
  const double tau = static_cast<double>(s.size());
  Eigen::MatrixXcd gram = desired.r;
  for (const auto& cov : interferers) {
    if (cov.r.rows() != m) {
      throw std::invalid_argument("mmse_estimate: covariance size mismatch");
    }
    gram += cov.r;
  }
  Eigen::MatrixXcd a = tau * gram;
  a.diagonal().array() += noise_variance;
  const Eigen::VectorXcd rhs = despread(y, s);
  Eigen::LDLT<Eigen::MatrixXcd> ldlt(a);
  const Eigen::VectorXcd z = ldlt.solve(rhs);
  if (ldlt.info() != Eigen::Success ||
      (a * z - rhs).norm() > 1e-8 * std::max(rhs.norm(), 1.0)) {
    throw std::runtime_error(
        "mmse_estimate: singular system (sigma^2 = 0 with rank-deficient prior)");
  }
  return desired.r * z;
}

/// Interference-free variant: the interference sum set to zero.
inline Eigen::VectorXcd mmse_estimate_no_interference(
    const CovarianceMatrix& desired, const Eigen::MatrixXcd& y,
    const PilotSequence& s, double noise_variance) {
  return mmse_estimate(desired, {}, y, s, noise_variance);
}

/// Normalized channel estimation error in dB, floored at kErrorFloorDb.
inline double error_db(const Eigen::VectorXcd& h_hat,
                       const Eigen::VectorXcd& h_true) {
  const double denom = h_true.squaredNorm();
  if (denom == 0.0) throw std::invalid_argument("error_db: zero true channel");
  const double ratio = (h_hat - h_true).squaredNorm() / denom;
  if (ratio <= 1e-30) return kErrorFloorDb;
  return std::max(10.0 * std::log10(ratio), kErrorFloorDb);
}

/// Estimate together with the ground truth it is judged against.
struct EstimateResult {
  Eigen::VectorXcd h_hat;
  Eigen::VectorXcd h_true;
  double err_db = 0.0;
};

inline EstimateResult make_estimate_result(Eigen::VectorXcd h_hat,
                                           Eigen::VectorXcd h_true) {
  EstimateResult res;
  res.err_db = error_db(h_hat, h_true);
  res.h_hat = std::move(h_hat);
  res.h_true = std::move(h_true);
  return res;
}

}  // namespace pilotdecon
