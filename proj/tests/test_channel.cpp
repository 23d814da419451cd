#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <complex>
#include <sstream>

#include "pilotdecon/channel.hpp"
#include "pilotdecon/rng.hpp"

using namespace pilotdecon;
using Catch::Approx;

namespace {
constexpr double kLambda = 0.1;
constexpr double kSpacing = 0.05;  // lambda / 2
}  // namespace

TEST_CASE("steering vector entries") {
  SECTION("broadside gives the all-ones vector") {
    const SteeringVector a = steering(kPi / 2, 8, kSpacing, kLambda);
    for (int m = 0; m < 8; ++m) {
      CHECK(std::abs(a(m) - std::complex<double>(1, 0)) < 1e-12);
    }
  }
  SECTION("endfire at half-wavelength spacing alternates sign") {
    const SteeringVector a = steering(0.0, 2, kSpacing, kLambda);
    CHECK(std::abs(a(0) - std::complex<double>(1, 0)) < 1e-15);
    CHECK(std::abs(a(1) - std::complex<double>(-1, 0)) < 1e-12);
  }
  SECTION("unit modulus, first entry one") {
    std::mt19937_64 rng(5);
    for (int k = 0; k < 50; ++k) {
      const double theta = uniform_in(rng, 0.0, kPi);
      const SteeringVector a = steering(theta, 16, kSpacing, kLambda);
      CHECK(a(0) == std::complex<double>(1, 0));
      for (int m = 0; m < 16; ++m) CHECK(std::abs(a(m)) == Approx(1.0));
    }
  }
  SECTION("theta and 2pi - theta give the same vector (cos is even)") {
    const SteeringVector a = steering(0.7, 6, kSpacing, kLambda);
    const SteeringVector b = steering(2 * kPi - 0.7, 6, kSpacing, kLambda);
    CHECK((a - b).norm() < 1e-12);
  }
  SECTION("|a(t1)^H a(t2)| depends only on cos t1 - cos t2") {
    const double d = 0.31;
    auto gram = [&](double c1, double c2) {
      return std::abs(steering(std::acos(c1), 12, kSpacing, kLambda)
                          .dot(steering(std::acos(c2), 12, kSpacing, kLambda)));
    };
    CHECK(gram(0.9, 0.9 - d) == Approx(gram(-0.2, -0.2 - d)).margin(1e-9));
    CHECK(gram(0.4, 0.4 - d) == Approx(gram(0.1, 0.1 - d)).margin(1e-9));
  }
}

TEST_CASE("cell_edge_alpha anchors the cell-edge SNR") {
  // reference values: 20 dB + 25 log10(1000) dB + (-30 dB) = 65 dB
  CHECK(10 * std::log10(cell_edge_alpha(20, 2.5, 1000, 1e-3)) == Approx(65.0));
  CHECK(cell_edge_alpha(0, 0, 1, 1) == Approx(1.0));
  // doubling R multiplies alpha by 2^eta
  const double a1 = cell_edge_alpha(20, 2.5, 1000, 1e-3);
  const double a2 = cell_edge_alpha(20, 2.5, 2000, 1e-3);
  CHECK(a2 / a1 == Approx(std::pow(2.0, 2.5)));
}

TEST_CASE("large_scale_gain power law") {
  const double alpha = cell_edge_alpha(20, 2.5, 1000, 1e-3);
  SECTION("cell-edge user sits at the configured SNR") {
    const double beta = large_scale_gain({1000, 0}, {0, 0}, alpha, 2.5);
    CHECK(10 * std::log10(beta / 1e-3) == Approx(20.0));
  }
  SECTION("doubling the distance costs 10 eta log10(2) dB") {
    const double b1 = large_scale_gain({1000, 0}, {0, 0}, alpha, 2.5);
    const double b2 = large_scale_gain({2000, 0}, {0, 0}, alpha, 2.5);
    CHECK(10 * std::log10(b1 / b2) == Approx(25.0 * std::log10(2.0)));
  }
  SECTION("eta = 0 removes the distance dependence") {
    CHECK(large_scale_gain({123, 456}, {0, 0}, 2.5, 0.0) == Approx(2.5));
  }
  CHECK_THROWS_AS(large_scale_gain({0, 0}, {0, 0}, alpha, 2.5),
                  std::invalid_argument);
}

TEST_CASE("draw_channel statistics and determinism") {
  const AngularSupport sup = AngularSupport::from_mean_spread(kPi / 3, 0.08);

  SECTION("reconstruction from stored paths") {
    auto rng = seeded_stream({123});
    const ChannelRealization c = draw_channel(sup, 0.7, 20, 6, kSpacing, kLambda, rng);
    Eigen::VectorXcd rebuilt = Eigen::VectorXcd::Zero(6);
    for (int b = 0; b < 20; ++b) {
      rebuilt += steering(c.path_angles[b], 6, kSpacing, kLambda) * c.path_gains(b);
    }
    rebuilt /= std::sqrt(20.0);
    CHECK((rebuilt - c.h).norm() < 1e-12);
    for (double theta : c.path_angles) CHECK(sup.contains(theta));
  }

  SECTION("average energy is M * beta") {
    auto rng = seeded_stream({77});
    const double beta = 0.4;
    double acc = 0.0;
    const int draws = 20000;
    for (int k = 0; k < draws; ++k) {
      acc += draw_channel(sup, beta, 5, 4, kSpacing, kLambda, rng).h.squaredNorm();
    }
    CHECK(acc / draws == Approx(4 * beta).epsilon(0.03));
  }

  SECTION("same seed, same channel") {
    auto r1 = seeded_stream({9, 9});
    auto r2 = seeded_stream({9, 9});
    const auto c1 = draw_channel(sup, 1.0, 10, 4, kSpacing, kLambda, r1);
    const auto c2 = draw_channel(sup, 1.0, 10, 4, kSpacing, kLambda, r2);
    CHECK((c1.h - c2.h).norm() == 0.0);
  }

  SECTION("wrapped support: paths land in both pieces") {
    const AngularSupport wrapped = AngularSupport::from_mean_spread(0.0, 0.1);
    auto rng = seeded_stream({31});
    const ChannelRealization c =
        draw_channel(wrapped, 1.0, 400, 2, kSpacing, kLambda, rng);
    int low = 0, high = 0;
    for (double theta : c.path_angles) {
      CHECK(wrapped.contains(theta));
      (theta < kPi / 2 ? low : high)++;
    }
    CHECK(low > 100);
    CHECK(high > 100);
  }
}

TEST_CASE("covariance by quadrature") {
  SECTION("diagonal entries equal beta") {
    const AngularSupport sup = AngularSupport::from_mean_spread(1.0, 0.2);
    const CovarianceMatrix cov = covariance(sup, 0.37, 6, kSpacing, kLambda);
    for (int m = 0; m < 6; ++m) {
      CHECK(cov.r(m, m).real() == Approx(0.37).margin(1e-12));
      CHECK(std::abs(cov.r(m, m).imag()) < 1e-15);
    }
    CHECK(is_hermitian_psd(cov.r));
  }

  SECTION("vanishing spread tends to the rank-one point mass") {
    const AngularSupport sup = AngularSupport::from_mean_spread(0.9, 0.5e-9);
    const CovarianceMatrix cov = covariance(sup, 1.0, 5, kSpacing, kLambda);
    const SteeringVector a = steering(0.9, 5, kSpacing, kLambda);
    const Eigen::MatrixXcd point = a * a.adjoint();
    CHECK((cov.r - point).norm() / point.norm() < 1e-6);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(cov.r);
    CHECK(es.eigenvalues()(3) < 1e-6 * es.eigenvalues()(4));
  }

  SECTION("M=2 off-diagonal against an i.i.d. Monte Carlo oracle") {
    const AngularSupport sup = AngularSupport::from_mean_spread(kPi / 2, 0.1);
    const CovarianceMatrix cov = covariance(sup, 1.0, 2, kSpacing, kLambda);
    // independent 10^6-sample MC of a(t) a(t)^H below; the (0,1) entry is
    // E[exp(+j pi cos t)] over the support
    auto rng = seeded_stream({2024});
    std::complex<double> acc = 0.0;
    const int n = 1000000;
    for (int k = 0; k < n; ++k) {
      const double t = uniform_in(rng, sup.intervals[0].lo, sup.intervals[0].hi);
      acc += std::polar(1.0, kPi * std::cos(t));
    }
    acc /= n;
    CHECK(std::abs(acc - cov.r(0, 1)) < 1e-3);
    CHECK(cov.r(0, 1).real() == Approx(0.9836641262818652).margin(1e-9));
    CHECK(std::abs(cov.r(0, 1).imag()) < 1e-12);
  }

  SECTION("quadrature is insensitive to node count beyond the default") {
    const AngularSupport sup = AngularSupport::from_mean_spread(0.4, 0.3);
    const CovarianceMatrix c64 = covariance(sup, 1.0, 8, kSpacing, kLambda, 64);
    const CovarianceMatrix c200 = covariance(sup, 1.0, 8, kSpacing, kLambda, 200);
    CHECK((c64.r - c200.r).norm() / c200.r.norm() < 1e-12);
  }

  SECTION("sample covariance of draws converges to the quadrature") {
    const AngularSupport sup = AngularSupport::from_mean_spread(1.1, 0.12);
    const double beta = 0.8;
    const CovarianceMatrix cov = covariance(sup, beta, 4, kSpacing, kLambda);
    auto rng = seeded_stream({55});
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(4, 4);
    const int draws = 100000;
    for (int k = 0; k < draws; ++k) {
      const auto c = draw_channel(sup, beta, 4, 4, kSpacing, kLambda, rng);
      acc += c.h * c.h.adjoint();
    }
    acc /= draws;
    CHECK((acc - cov.r).norm() / cov.r.norm() < 0.02);
  }
}

TEST_CASE("covariance CSV export interleaves real and imaginary parts") {
  const AngularSupport sup = AngularSupport::from_mean_spread(0.8, 0.1);
  const CovarianceMatrix cov = covariance(sup, 1.5, 2, kSpacing, kLambda);
  std::ostringstream out;
  export_covariance_csv(cov, out);
  std::istringstream in(out.str());
  std::string line;
  int rows = 0;
  while (std::getline(in, line)) {
    CHECK(std::count(line.begin(), line.end(), ',') == 3);  // 2x2 complex
    ++rows;
  }
  CHECK(rows == 2);
  CHECK(out.str().find("1.5,") == 0);  // diagonal entry beta, imag 0 follows
}

TEST_CASE("is_hermitian_psd rejects broken matrices") {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(3, 3);
  CHECK(is_hermitian_psd(m));
  m(0, 1) = {0.0, 0.5};  // not mirrored
  CHECK_FALSE(is_hermitian_psd(m));
  m(1, 0) = {0.0, -0.5};
  CHECK(is_hermitian_psd(m));
  m(2, 2) = -1.0;
  CHECK_FALSE(is_hermitian_psd(m));
}
