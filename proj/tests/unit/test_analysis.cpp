#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include "ancsim/acoustics/fir_path.hpp"
#include "ancsim/acoustics/noise.hpp"
#include "ancsim/analysis/correlation.hpp"
#include "ancsim/analysis/geometry.hpp"
#include "ancsim/analysis/linalg.hpp"
#include "ancsim/analysis/spectral.hpp"
#include "ancsim/analysis/stability.hpp"
#include "ancsim/analysis/wiener.hpp"
#include "ancsim/controllers/steps.hpp"
#include "ancsim/errors.hpp"
#include "doctest.h"

using namespace ancsim;
using namespace ancsim::analysis;
using acoustics::FirPath;

namespace {

std::vector<double> randn(std::size_t n, std::uint64_t seed, double scale = 1.0) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist(0.0, scale);
  std::vector<double> v(n);
  for (auto& x : v) x = dist(rng);
  return v;
}

Matrix random_spd(std::size_t n, std::uint64_t seed) {
  const auto g = randn(n * n, seed);
  Matrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = g[i * n + j];
  return a * a.transposed();
}

double mse(const std::vector<double>& w, const std::vector<double>& x,
           const std::vector<double>& d) {
  double acc = 0.0;
  for (std::size_t n = 0; n < x.size(); ++n) {
    double y = 0.0;
    for (std::size_t k = 0; k < w.size() && k <= n; ++k) y += w[k] * x[n - k];
    acc += (d[n] - y) * (d[n] - y);
  }
  return acc / static_cast<double>(x.size());
}

CorrelationModel white_model(const FirPath& primary, const FirPath& s_hat, std::size_t taps,
                             double variance = 1.0) {
  std::vector<double> rx(taps + primary.size() + s_hat.size(), 0.0);
  rx[0] = variance;
  return exact_correlation_model(rx, primary, s_hat, taps);
}

}  // namespace

TEST_CASE("Jacobi eigendecomposition reconstructs random PSD matrices") {
  for (std::size_t n : {1u, 2u, 5u, 16u, 40u, 64u}) {
    const Matrix r = random_spd(n, 100 + n);
    const auto eig = eigen_symmetric(r);
    Matrix lambda = Matrix::diagonal(eig.values);
    const Matrix back = eig.vectors * lambda * eig.vectors.transposed();
    Matrix diff = back + r * -1.0;
    CHECK(diff.frobenius_norm() < 1e-8 * r.frobenius_norm());
    for (std::size_t k = 1; k < n; ++k) CHECK(eig.values[k - 1] <= eig.values[k]);
  }
  CHECK_THROWS_AS(eigen_symmetric(Matrix{{1.0, 2.0}, {0.0, 1.0}}), DataError);
  CHECK_THROWS_AS(eigen_symmetric(Matrix(2, 3)), DataError);
}

TEST_CASE("Cholesky solves, rejects singular systems and reports jitter") {
  const Matrix a = random_spd(6, 8) + Matrix::identity(6);
  const auto b = randn(6, 9);
  const auto sol = solve_spd(a, b);
  const auto ax = a * sol.x;
  for (std::size_t k = 0; k < 6; ++k) CHECK(ax[k] == doctest::Approx(b[k]).epsilon(1e-10));
  CHECK_FALSE(sol.jitter_applied);

  const Matrix singular{{1.0, 1.0}, {1.0, 1.0}};
  const std::vector<double> rhs = {1.0, 1.0};
  try {
    solve_spd(singular, rhs);
    FAIL("expected SingularMatrixError");
  } catch (const SingularMatrixError& e) {
    CHECK(e.condition_estimate() >= 1e12);
  }
  const auto jittered = solve_spd(singular, rhs, std::numeric_limits<double>::infinity());
  CHECK(jittered.jitter_applied);
  CHECK(jittered.jitter > 0.0);
}

TEST_CASE("build_correlation_model") {
  const auto x = randn(100000, 1);
  SUBCASE("white reference gives near-identity R_x") {
    const auto d = acoustics::convolve(FirPath({1.76, 1.25}), x);
    const auto m = build_correlation_model(x, d, FirPath::identity(), 2);
    CHECK(std::abs(m.R_x(0, 0) - 1.0) < 0.05);
    CHECK(std::abs(m.R_x(1, 1) - 1.0) < 0.05);
    CHECK(std::abs(m.R_x(0, 1)) < 0.05);
    CHECK(m.R_xprime == m.R_x);
    CHECK(m.P_dxprime == m.P_dx);
  }
  SUBCASE("lag sums match a direct double loop") {
    const std::vector<double> xs(x.begin(), x.begin() + 4096);
    const auto d = randn(4096, 2);
    const FirPath s({0.13, 0.87});
    const auto m = build_correlation_model(xs, d, s, 4);
    std::vector<double> xp(4096, 0.0);
    for (std::size_t n = 0; n < 4096; ++n) xp[n] = 0.13 * xs[n] + (n ? 0.87 * xs[n - 1] : 0.0);
    for (std::size_t i = 0; i < 4; ++i) {
      double px = 0.0, pxp = 0.0;
      for (std::size_t n = i; n < 4096; ++n) {
        px += d[n] * xs[n - i];
        pxp += d[n] * xp[n - i];
      }
      CHECK(std::abs(m.P_dx[i] - px / 4096.0) < 1e-10);
      CHECK(std::abs(m.P_dxprime[i] - pxp / 4096.0) < 1e-10);
      for (std::size_t j = 0; j < 4; ++j) {
        const std::size_t lag = i > j ? i - j : j - i;
        double rx = 0.0, rxp = 0.0;
        for (std::size_t n = lag; n < 4096; ++n) {
          rx += xs[n] * xs[n - lag];
          rxp += xp[n] * xp[n - lag];
        }
        CHECK(std::abs(m.R_x(i, j) - rx / 4096.0) < 1e-10);
        CHECK(std::abs(m.R_xprime(i, j) - rxp / 4096.0) < 1e-10);
      }
    }
  }
  SUBCASE("short signals are rejected") {
    const std::vector<double> s(19, 1.0);
    CHECK_THROWS_AS(build_correlation_model(s, s, FirPath::identity(), 2), DataError);
  }
}

TEST_CASE("exact and sampled correlation models agree") {
  const auto x = randn(200000, 3);
  const FirPath p({0.4, -0.3, 0.2}), s({0.13, 0.87});
  const auto d = acoustics::convolve(p, x);
  const auto sampled = build_correlation_model(x, d, s, 3);
  const auto exact = white_model(p, s, 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(std::abs(sampled.P_dxprime[i] - exact.P_dxprime[i]) < 0.02);
    for (std::size_t j = 0; j < 3; ++j) {
      CHECK(std::abs(sampled.R_xprime(i, j) - exact.R_xprime(i, j)) < 0.02);
    }
  }
}

TEST_CASE("wiener_optimal") {
  SUBCASE("two-weight configuration recovers the primary path") {
    const auto w = wiener_optimal(white_model(FirPath({1.76, 1.25}), FirPath::identity(), 2));
    CHECK(w[0] == doctest::Approx(1.76).epsilon(1e-12));
    CHECK(w[1] == doctest::Approx(1.25).epsilon(1e-12));
    const auto x = randn(100000, 12);
    const auto d = acoustics::convolve(FirPath({1.76, 1.25}), x);
    const auto ws = wiener_optimal(build_correlation_model(x, d, FirPath::identity(), 2));
    CHECK(std::abs(ws[0] - 1.76) < 0.01);
    CHECK(std::abs(ws[1] - 1.25) < 0.01);
  }
  SUBCASE("zero disturbance gives zero weights") {
    const auto x = randn(1000, 4);
    const std::vector<double> d(1000, 0.0);
    const auto w = wiener_optimal(build_correlation_model(x, d, FirPath({0.13, 0.87}), 3));
    for (double v : w) CHECK(v == 0.0);
  }
  SUBCASE("residual is tiny") {
    const auto m = white_model(FirPath({0.3, 0.9, -0.2}), FirPath({0.13, 0.87}), 4);
    const auto w = wiener_optimal(m);
    const auto r = m.R_xprime * w;
    double res = 0.0, norm = 0.0;
    for (std::size_t k = 0; k < 4; ++k) {
      res += std::pow(r[k] - m.P_dxprime[k], 2);
      norm += m.P_dxprime[k] * m.P_dxprime[k];
    }
    CHECK(std::sqrt(res) < 1e-8 * std::sqrt(norm));
  }
  SUBCASE("singular R raises with a condition estimate") {
    const std::vector<double> x(1000, 0.0);
    CHECK_THROWS_AS(wiener_optimal(build_correlation_model(x, x, FirPath::identity(), 2)),
                    SingularMatrixError);
  }
}

TEST_CASE("wiener_optimal matches a batch least-squares oracle on random plants") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 6; ++trial) {
    const std::size_t taps = 1 + rng() % 8;
    const auto plant = randn(taps, rng());
    const auto x = randn(100000, rng());
    const auto d = acoustics::convolve(FirPath(plant), x);
    const auto w = wiener_optimal(build_correlation_model(x, d, FirPath::identity(), taps));
    Eigen::MatrixXd A(x.size(), taps);
    Eigen::VectorXd b(x.size());
    for (std::size_t n = 0; n < x.size(); ++n) {
      for (std::size_t k = 0; k < taps; ++k) A(n, k) = k <= n ? x[n - k] : 0.0;
      b(n) = d[n];
    }
    const Eigen::VectorXd ls = A.colPivHouseholderQr().solve(b);
    for (std::size_t k = 0; k < taps; ++k) {
      CHECK(std::abs(w[k] - ls(k)) <= 0.02 * std::max(std::abs(ls(k)), 0.05));
    }
  }
}

TEST_CASE("wiener_optimal minimises MSE on a fresh realization") {
  const FirPath plant({0.6, -0.4, 0.25});
  const auto x = randn(100000, 41);
  const auto w = wiener_optimal(
      build_correlation_model(x, acoustics::convolve(plant, x), FirPath::identity(), 3));
  std::vector<double> fresh = randn(100000, 42);
  auto noise = randn(100000, 43, 0.1);
  auto d = acoustics::convolve(plant, fresh);
  for (std::size_t n = 0; n < d.size(); ++n) d[n] += noise[n];
  const double base = mse(w, fresh, d);
  for (std::size_t k = 0; k < 3; ++k) {
    for (double f : {0.99, 1.01}) {
      auto p = w;
      p[k] *= f;
      CHECK(mse(p, fresh, d) >= base);
    }
  }
}

TEST_CASE("wiener_suboptimal") {
  SUBCASE("zero penalty with identity path equals the optimum") {
    const auto x = randn(20000, 6);
    const auto d = acoustics::convolve(FirPath({0.5, 0.2, -0.1}), x);
    const auto m = build_correlation_model(x, d, FirPath::identity(), 3);
    const auto a = wiener_optimal(m);
    const auto b = wiener_suboptimal(m, 0.0);
    for (std::size_t k = 0; k < 3; ++k) CHECK(b[k] == doctest::Approx(a[k]).epsilon(1e-12));
  }
  SUBCASE("two-weight configuration with derived penalty") {
    const auto m = white_model(FirPath({1.76, 1.25}), FirPath::identity(), 2);
    const double rho_sq = 1.21;
    const double sigma_d = 1.76 * 1.76 + 1.25 * 1.25;
    const double vs = controllers::lagrangian_factor(1.0, sigma_d, rho_sq);
    const auto w = wiener_suboptimal(m, vs);
    CHECK(std::abs(w[0] - 0.89) < 0.05);
    CHECK(std::abs(w[1] - 0.66) < 0.05);
    CHECK(quadratic_form(m.R_x, w) <= 1.1 * rho_sq);
  }
  SUBCASE("variants differ only through the right-hand side") {
    const auto m = white_model(FirPath({0.7, 0.3}), FirPath({0.13, 0.87}), 2);
    const auto direct = wiener_suboptimal(m, 0.5);
    const auto filtered = wiener_suboptimal(m, 0.5, SuboptimalVariant::filtered);
    const Matrix a = m.R_x * 0.5 + m.R_xprime;
    const auto ap = a * direct;
    const auto af = a * filtered;
    for (std::size_t k = 0; k < 2; ++k) {
      CHECK(ap[k] == doctest::Approx(m.P_dx[k]));
      CHECK(af[k] == doctest::Approx(m.P_dxprime[k]));
    }
  }
  SUBCASE("projected output power is non-increasing in the penalty") {
    const auto m = white_model(FirPath({0.9, -0.5, 0.3, 0.2}), FirPath::identity(), 4);
    double prev = INFINITY;
    for (int i = 0; i < 20; ++i) {
      const double vs = 10.0 * i / 19.0;
      const double p = quadratic_form(m.R_x, wiener_suboptimal(m, vs));
      CHECK(p <= prev + 1e-12);
      prev = p;
    }
  }
  CHECK_THROWS_AS(wiener_suboptimal(white_model(FirPath({1.0}), FirPath::identity(), 1), -1.0),
                  ConfigError);
}

TEST_CASE("stability_bounds") {
  const Matrix r = Matrix::diagonal(std::vector<double>{2.0, 0.5});
  const auto k0 = stability_bounds(r, 0.0, 0.85);
  CHECK(k0.lambda_max == doctest::Approx(2.0));
  CHECK(k0.lambda_min == doctest::Approx(0.5));
  CHECK(k0.mu1_bound == doctest::Approx(0.5));
  CHECK(stability_bounds(r, 0.99, 0.85).mu1_bound == doctest::Approx(1.99 / 2.0));
  CHECK(stability_bounds(r, 0.5, 0.85).mu1_bound == doctest::Approx(0.75));
  CHECK(k0.mu2_bound == doctest::Approx(0.5));

  const auto with_mu = stability_bounds(r, 0.99, 0.85, 1e-3);
  CHECK(with_mu.stable());
  REQUIRE(with_mu.time_constants.size() == 2);
  CHECK(with_mu.time_constants[0] == doctest::Approx(time_constant(1e-3, 0.99, 0.5)));
  CHECK_FALSE(stability_bounds(r, 0.0, 0.85, 0.6).mu1_within_bound);
  CHECK_FALSE(stability_bounds(r, 0.99, 2.0, 0.6).varsigma_mu1_within_bound);
  CHECK_THROWS_AS(stability_bounds(Matrix{{1.0, 0.3}, {0.1, 1.0}}, 0.0, 0.0), DataError);
  CHECK_THROWS_AS(stability_bounds(r, 1.0, 0.0), ConfigError);
}

TEST_CASE("time_constant") {
  CHECK(time_constant(1e-3, 0.0, 2.0) == doctest::Approx(1.0 / (2.0 * 1e-3 * 2.0)));
  CHECK(time_constant(1e-5, 0.99, 1.0) == doctest::Approx(33389.0).epsilon(1e-4));
  CHECK_THROWS_AS(time_constant(0.0, 0.5, 1.0), ConfigError);
  CHECK_THROWS_AS(time_constant(1e-3, 1.0, 1.0), ConfigError);
}

TEST_CASE("welch_psd") {
  SUBCASE("sine peak location") {
    std::vector<double> s(65536);
    for (std::size_t n = 0; n < s.size(); ++n) s[n] = std::sin(2 * std::numbers::pi * 500.0 * n / 16000.0);
    const auto psd = welch_psd(s, 16000.0);
    std::size_t peak = 0;
    for (std::size_t k = 1; k < psd.density.size(); ++k)
      if (psd.density[k] > psd.density[peak]) peak = k;
    CHECK(std::abs(psd.frequencies[peak] - 500.0) <= psd.bin_width);
    CHECK(psd.total_power() == doctest::Approx(0.5).epsilon(0.1));
  }
  SUBCASE("white noise is flat and satisfies Parseval") {
    const auto x = randn(1 << 17, 17);
    const auto psd = welch_psd(x, 16000.0);
    const double expected = 2.0 / 16000.0;
    for (std::size_t k = 1; k + 1 < psd.density.size(); ++k) {
      CHECK(std::abs(to_db(psd.density[k] / expected)) <= 3.0);
    }
    double var = 0.0;
    for (double v : x) var += v * v;
    var /= static_cast<double>(x.size());
    CHECK(std::abs(psd.total_power() / var - 1.0) < 0.1);
  }
  SUBCASE("errors") {
    const std::vector<double> s(4096, 1.0);
    CHECK_THROWS_AS(welch_psd(s, 16000.0), DataError);
    CHECK_THROWS_AS(welch_psd(s, 16000.0, 256, 1.0), ConfigError);
  }
}

TEST_CASE("band-limited generator keeps its power inside the band") {
  acoustics::NoiseSource src;
  src.kind = acoustics::NoiseKind::band_limited;
  src.band = acoustics::FrequencyBand{200.0, 800.0};
  src.seed = 7;
  const auto x = acoustics::generate(src, 100000);
  const auto psd = welch_psd(x, 16000.0);
  const double total = psd.total_power();
  CHECK(psd.band_power(200.0, 800.0) / total >= 0.95);

  double plateau = 0.0;
  std::size_t count = 0;
  for (std::size_t k = 0; k < psd.frequencies.size(); ++k) {
    if (psd.frequencies[k] >= 300.0 && psd.frequencies[k] <= 700.0) {
      plateau += psd.density[k];
      ++count;
    }
  }
  plateau /= static_cast<double>(count);
  // Out-of-band excludes the filter transition bands (one main-lobe width).
  for (std::size_t k = 0; k < psd.frequencies.size(); ++k) {
    const double f = psd.frequencies[k];
    if (f < 100.0 || f > 900.0) CHECK(to_db(psd.density[k] / plateau) <= -20.0);
  }
}

TEST_CASE("constraint ellipse") {
  const Matrix r{{1.0, 0.3}, {0.3, 0.5}};
  const auto pts = constraint_ellipse(r, 1.21);
  CHECK(pts.size() == 256);
  for (const auto& p : pts) {
    const std::vector<double> w = {p[0], p[1]};
    CHECK(quadratic_form(r, w) == doctest::Approx(1.21).epsilon(1e-12));
  }
  const auto b = boundary_point(Matrix::identity(2), {1.76, 1.25}, 1.21);
  CHECK(b[0] == doctest::Approx(0.897).epsilon(1e-3));
  CHECK(b[1] == doctest::Approx(0.637).epsilon(1e-3));
}
