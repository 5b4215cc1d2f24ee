#include <cmath>
#include <random>
#include <vector>

#include "ancsim/controllers/config.hpp"
#include "ancsim/controllers/controller.hpp"
#include "ancsim/controllers/filtered_reference.hpp"
#include "ancsim/controllers/power_tracker.hpp"
#include "ancsim/controllers/steps.hpp"
#include "ancsim/errors.hpp"
#include "doctest.h"

using namespace ancsim;
using namespace ancsim::controllers;

namespace {

AlgorithmConfig reference_config(Algorithm a) {
  AlgorithmConfig c;
  c.algorithm = a;
  c.mu1_initial = 1e-5;
  c.mu_min = 1e-6;
  c.gamma = 0.9;
  c.kappa = 0.99;
  c.rho_sq = 1.0;
  c.varsigma.value = 0.85;
  return c;
}

std::vector<double> randn(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist;
  std::vector<double> v(n);
  for (auto& x : v) x = dist(rng);
  return v;
}

double dot(const std::vector<double>& a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

}  // namespace

TEST_CASE("AlgorithmConfig validation names the violated invariant") {
  auto c = reference_config(Algorithm::two_gd);
  CHECK_NOTHROW(c.validate());
  c.rho_sq = -1.0;
  CHECK_THROWS_WITH_AS(c.validate(), doctest::Contains("rho_sq"), ConfigError);
  c = reference_config(Algorithm::two_gd);
  c.gamma = 1.0;
  CHECK_THROWS_WITH_AS(c.validate(), doctest::Contains("gamma"), ConfigError);
  c = reference_config(Algorithm::two_gd);
  c.kappa = -1.0;
  CHECK_THROWS_WITH_AS(c.validate(), doctest::Contains("kappa"), ConfigError);
  c = reference_config(Algorithm::two_gd);
  c.mu_min = 1e-4;
  CHECK_THROWS_WITH_AS(c.validate(), doctest::Contains("mu_min"), ConfigError);
  CHECK(algorithm_from_string(to_string(Algorithm::two_gd_momentum)) == Algorithm::two_gd_momentum);
  CHECK_THROWS_AS(algorithm_from_string("nlms"), ConfigError);
}

TEST_CASE("estimate_output_power") {
  CHECK(estimate_output_power(0.0, 0.0, 0.99) == 0.0);
  CHECK(estimate_output_power(1.0, 1.0, 0.99) == doctest::Approx(1.0));
  double p = 0.0;
  for (int n = 0; n < 459; ++n) p = estimate_output_power(p, 2.0, 0.99);
  CHECK(std::abs(p - 4.0) <= 0.04);
  // 1 − 0.99^458 < 0.99, so one step fewer is not yet within 1%.
  double q = 0.0;
  for (int n = 0; n < 458; ++n) q = estimate_output_power(q, 2.0, 0.99);
  CHECK(std::abs(q - 4.0) > 0.04);
  CHECK_THROWS_AS(estimate_output_power(0.0, 1.0, 1.0), ConfigError);
}

TEST_CASE("step_fxlms") {
  ControllerState s(1, 0.1);
  const std::vector<double> xp = {3.0};
  step_fxlms(s, xp, 2.0);
  CHECK(s.weights[0] == doctest::Approx(0.6));
  CHECK(s.step_size == 0.1);
  CHECK(s.momentum[0] == 0.0);

  ControllerState z(3, 0.1);
  z.weights = {0.1, 0.2, 0.3};
  const std::vector<double> xp3 = {1.0, -2.0, 5.0};
  step_fxlms(z, xp3, 0.0);
  CHECK(z.weights == std::vector<double>{0.1, 0.2, 0.3});

  CHECK_THROWS_AS(step_fxlms(z, xp3, NAN), DivergenceError);
  const std::vector<double> huge = {1e308, 1e308, 1e308};
  z.step_size = 1e10;
  CHECK_THROWS_AS(step_fxlms(z, huge, 1e10), DivergenceError);
}

TEST_CASE("50 FXLMS steps on a scalar plant match an independent LMS loop") {
  const auto x = randn(50, 21);
  const double plant = 0.8;
  ControllerState s(1, 0.05);
  double w_ref = 0.0;
  for (std::size_t n = 0; n < x.size(); ++n) {
    const double d = plant * x[n];
    const double e = d - s.weights[0] * x[n];
    const std::vector<double> xp = {x[n]};
    step_fxlms(s, xp, e);
    const double e_ref = d - w_ref * x[n];
    w_ref = w_ref + 0.05 * e_ref * x[n];
    CHECK(std::abs(s.weights[0] - w_ref) <= 1e-12);
  }
}

TEST_CASE("step_2gd branches and step-size schedule") {
  const auto cfg = reference_config(Algorithm::two_gd);
  const std::vector<double> x = {0.3, -0.7};
  const std::vector<double> xp = {0.5, 0.1};

  ControllerState a(2, 1e-5);
  a.weights = {0.4, 0.2};
  a.output_power_estimate = 0.5;
  ControllerState b = a;
  CHECK(step_2gd(a, cfg, x, xp, 1.5) == Branch::within);
  step_fxlms(b, xp, 1.5);
  CHECK(a.weights == b.weights);
  CHECK(a.step_size == 1e-5);

  ControllerState c(2, 1e-5);
  c.weights = {0.4, 0.2};
  c.output_power_estimate = 2.0;
  const double y = 0.4 * 0.3 + 0.2 * -0.7;
  CHECK(step_2gd(c, cfg, x, xp, 1.5) == Branch::exceeded);
  CHECK(c.step_size == doctest::Approx(9e-6).epsilon(1e-12));
  CHECK(c.weights[0] == doctest::Approx(0.4 - 0.85 * 1e-5 * y * 0.3).epsilon(1e-15));
  CHECK(c.weights[1] == doctest::Approx(0.2 - 0.85 * 1e-5 * y * -0.7).epsilon(1e-15));

  ControllerState f(2, 1e-6);
  f.output_power_estimate = 2.0;
  step_2gd(f, cfg, x, xp, 1.0);
  CHECK(f.step_size == 1e-6);

  auto literal = cfg;
  literal.step_floor_rule = StepFloorRule::literal_min;
  ControllerState g(2, 1e-5);
  g.output_power_estimate = 2.0;
  step_2gd(g, literal, x, xp, 1.0);
  CHECK(g.step_size == 1e-6);
  step_2gd(g, literal, x, xp, 1.0);
  CHECK(g.step_size == doctest::Approx(9e-7));
}

TEST_CASE("step_2gd_momentum") {
  auto cfg = reference_config(Algorithm::two_gd_momentum);
  cfg.rho_sq = 10.0;
  ControllerState s(1, 0.01);
  s.momentum = {0.1};
  s.weights = {0.5};
  const std::vector<double> one = {1.0};
  step_2gd_momentum(s, cfg, one, one, 1.0);
  CHECK(s.momentum[0] == doctest::Approx(0.109));
  CHECK(s.weights[0] == doctest::Approx(0.609));

  SUBCASE("momentum handling on the lower branch") {
    s.output_power_estimate = 20.0;
    auto reset = cfg;
    ControllerState r = s;
    step_2gd_momentum(r, reset, one, one, 1.0);
    CHECK(r.momentum[0] == 0.0);
    CHECK(r.step_size == doctest::Approx(0.009));
    auto freeze = cfg;
    freeze.momentum_on_switch = MomentumOnSwitch::freeze;
    ControllerState fz = s;
    step_2gd_momentum(fz, freeze, one, one, 1.0);
    CHECK(fz.momentum[0] == s.momentum[0]);
    auto decay = cfg;
    decay.momentum_on_switch = MomentumOnSwitch::decay;
    ControllerState dc = s;
    step_2gd_momentum(dc, decay, one, one, 1.0);
    CHECK(dc.momentum[0] == doctest::Approx(0.99 * s.momentum[0]));
    ControllerState plain = s;
    step_2gd(plain, cfg, one, one, 1.0);
    CHECK(r.weights == plain.weights);
  }
}

TEST_CASE("kappa = 0 and inactive constraint give bit-identical trajectories") {
  auto cfg = reference_config(Algorithm::two_gd_momentum);
  cfg.kappa = 0.0;
  cfg.rho_sq = 1e9;
  cfg.mu1_initial = 0.01;
  const auto x = randn(2000, 4);
  ControllerState fx(4, 0.01), gd(4, 0.01), mo(4, 0.01);
  const std::vector<double> plant = {0.9, -0.4, 0.2, 0.1};
  for (std::size_t n = 3; n < x.size(); ++n) {
    const std::span<const double> win(x.data() + n - 3, 4);
    std::vector<double> xv(win.rbegin(), win.rend());
    const double d = dot(plant, xv);
    step_fxlms(fx, xv, d - dot(fx.weights, xv));
    step_2gd(gd, cfg, xv, xv, d - dot(gd.weights, xv));
    step_2gd_momentum(mo, cfg, xv, xv, d - dot(mo.weights, xv));
    REQUIRE(fx.weights == gd.weights);
    REQUIRE(fx.weights == mo.weights);
  }
}

TEST_CASE("step-size is non-increasing and bounded below under 2GD variants") {
  for (auto alg : {Algorithm::two_gd, Algorithm::two_gd_momentum}) {
    auto cfg = reference_config(alg);
    cfg.rho_sq = 0.2;
    cfg.mu1_initial = 0.01;
    cfg.mu_min = 1e-4;
    Controller ctl(cfg, 2);
    const auto x = randn(5000, 9);
    double prev = ctl.state().step_size;
    for (std::size_t n = 1; n < x.size(); ++n) {
      const std::vector<double> xv = {x[n], x[n - 1]};
      const double y = ctl.output(xv);
      const double d = 1.5 * x[n] + 0.7 * x[n - 1];
      ctl.advance(xv, xv, d - y, y);
      CHECK(ctl.state().step_size <= prev);
      CHECK(ctl.state().step_size >= cfg.mu_min);
      prev = ctl.state().step_size;
    }
  }
}

TEST_CASE("update directions match finite-difference gradients") {
  // Upper branch: e(w) = d − wᵀx′ gives −½∂e²/∂w = e·x′.
  // Lower branch: y(w) = wᵀx gives −½∂y²/∂w = −y·x.
  const auto x = randn(6, 31);
  const auto xp = randn(6, 32);
  const std::vector<double> w0 = {0.3, -0.2, 0.5, 0.1, -0.6, 0.25};
  const double d = 0.8;
  const double h = 1e-7;
  auto e_of = [&](const std::vector<double>& w) { return d - dot(w, xp); };
  auto y_of = [&](const std::vector<double>& w) { return dot(w, x); };

  auto cfg = reference_config(Algorithm::two_gd);
  cfg.mu1_initial = 1e-3;
  cfg.varsigma.value = 1.0;

  ControllerState up(6, 1e-3);
  up.weights = w0;
  up.output_power_estimate = 0.0;
  step_2gd(up, cfg, x, xp, e_of(w0));
  ControllerState down(6, 1e-3);
  down.weights = w0;
  down.output_power_estimate = 10.0;
  step_2gd(down, cfg, x, xp, e_of(w0));

  for (std::size_t k = 0; k < 6; ++k) {
    auto wp = w0, wm = w0;
    wp[k] += h;
    wm[k] -= h;
    const double fd_e = -0.5 * (std::pow(e_of(wp), 2) - std::pow(e_of(wm), 2)) / (2 * h);
    const double fd_y = -0.5 * (std::pow(y_of(wp), 2) - std::pow(y_of(wm), 2)) / (2 * h);
    const double dir_up = (up.weights[k] - w0[k]) / 1e-3;
    const double dir_down = (down.weights[k] - w0[k]) / 1e-3;
    CHECK(dir_up == doctest::Approx(fd_e).epsilon(1e-6));
    CHECK(dir_down == doctest::Approx(fd_y).epsilon(1e-6));
  }
}

TEST_CASE("step_rescaling") {
  auto cfg = reference_config(Algorithm::rescaling);
  const std::vector<double> zero = {0.0, 0.0};
  ControllerState s(2, 0.1);
  s.weights = {2.0, 0.0};
  s.output_power_estimate = 4.0;
  CHECK(step_rescaling(s, cfg, zero, zero, 0.0) == Branch::exceeded);
  CHECK(s.weights[0] == doctest::Approx(1.0));
  CHECK(s.weights[1] == 0.0);
  CHECK(s.output_power_estimate == 1.0);

  ControllerState a(2, 0.1), b(2, 0.1);
  a.output_power_estimate = b.output_power_estimate = 0.5;
  const std::vector<double> xp = {0.2, 0.4};
  step_rescaling(a, cfg, zero, xp, 0.7);
  step_fxlms(b, xp, 0.7);
  CHECK(a.weights == b.weights);
}

TEST_CASE("lagrangian_factor") {
  CHECK(lagrangian_factor(1.0, 1.0, 2.0) == 0.0);
  CHECK(lagrangian_factor(1.0, 4.0, 1.0) == doctest::Approx(1.0));
  const double gs = 0.13 * 0.13 + 0.87 * 0.87;
  CHECK(lagrangian_factor(gs, 4.0, 1.0) == doctest::Approx(gs * (std::sqrt(4.0 / gs) - 1.0)));
  CHECK(lagrangian_factor(gs, 4.0, 1.0) == doctest::Approx(0.9856).epsilon(1e-4));
  CHECK(lagrangian_factor(1.0, 1.0, 1.0) == 0.0);
  CHECK_THROWS_AS(lagrangian_factor(0.0, 1.0, 1.0), ConfigError);
  CHECK_THROWS_AS(lagrangian_factor(1.0, -1.0, 1.0), ConfigError);
}

TEST_CASE("FilteredReference stays consistent with its model") {
  FilteredReference fr(acoustics::FirPath({0.13, 0.87}), 4, 8);
  CHECK(fr.reference().size() >= 8);
  CHECK(fr.consistent());
  const auto x = randn(50, 2);
  double prev = 0.0;
  for (double v : x) {
    const double xp = fr.push(v);
    CHECK(xp == doctest::Approx(0.13 * v + 0.87 * prev));
    prev = v;
  }
  CHECK(fr.consistent());
  CHECK(fr.regressor()[0] == x.back());
  CHECK(fr.filtered().size() == 4);
}

TEST_CASE("projected power tracker") {
  const std::vector<double> lags = {2.0, 0.5, -0.25};
  const std::vector<double> w = {1.0, -1.0, 0.5};
  // Dense Rw with R Toeplitz(2, 0.5, −0.25).
  const double R[3][3] = {{2.0, 0.5, -0.25}, {0.5, 2.0, 0.5}, {-0.25, 0.5, 2.0}};
  double dense = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) dense += w[i] * R[i][j] * w[j];
  CHECK(toeplitz_quadratic_form(lags, w) == doctest::Approx(dense));

  SUBCASE("direct and FFT routes agree") {
    AlgorithmConfig cfg;
    cfg.power_estimator = PowerEstimator::projected;
    cfg.correlation_smoothing = 0.99;
    for (std::size_t taps : {8u, 200u}) {
      OutputPowerTracker tracker(cfg, taps);
      ControllerState s(taps, 0.0);
      s.weights = randn(taps, 5);
      const auto x = randn(taps + 300, 6);
      for (std::size_t n = taps; n < x.size(); ++n) {
        std::vector<double> win(x.begin() + static_cast<long>(n - taps + 1),
                                x.begin() + static_cast<long>(n + 1));
        std::reverse(win.begin(), win.end());
        tracker.update(s, win, 0.0);
      }
      const auto r = tracker.lag_estimates();
      CHECK(s.output_power_estimate ==
            doctest::Approx(toeplitz_quadratic_form(r, s.weights)).epsilon(1e-10));
    }
  }

  SUBCASE("bias correction makes the first estimate exact") {
    AlgorithmConfig cfg;
    cfg.power_estimator = PowerEstimator::projected;
    OutputPowerTracker tracker(cfg, 1);
    ControllerState s(1, 0.0);
    s.weights = {2.0};
    const std::vector<double> x = {0.5};
    tracker.update(s, x, 1.0);
    CHECK(s.output_power_estimate == doctest::Approx(1.0));
  }
}
