#include "ancsim/controllers/power_tracker.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>

#include "ancsim/controllers/steps.hpp"
#include "ancsim/errors.hpp"

namespace ancsim::controllers {

namespace {

constexpr std::size_t kDirectLimit = 64;

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

double toeplitz_quadratic_form(std::span<const double> lags, std::span<const double> w) {
  const std::size_t n = w.size();
  if (lags.size() < n) throw DataError("toeplitz_quadratic_form: too few lags");
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < n; ++j) row += lags[i > j ? i - j : j - i] * w[j];
    acc += w[i] * row;
  }
  return acc;
}

// wᵀRw = Σ_k r(|k|)·c(k) where c is the deterministic autocorrelation of w,
// computed with one forward/backward real FFT of size ≥ 2L.
class OutputPowerTracker::Projector {
 public:
  explicit Projector(std::size_t taps) : taps_(taps) {
    size_ = 1;
    while (size_ < 2 * taps) size_ <<= 1;
    real_ = fftw_alloc_real(size_);
    spec_ = fftw_alloc_complex(size_ / 2 + 1);
    std::lock_guard lock(planner_mutex());
    forward_ = fftw_plan_dft_r2c_1d(static_cast<int>(size_), real_, spec_, FFTW_ESTIMATE);
    backward_ = fftw_plan_dft_c2r_1d(static_cast<int>(size_), spec_, real_, FFTW_ESTIMATE);
  }

  ~Projector() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(forward_);
    fftw_destroy_plan(backward_);
    fftw_free(real_);
    fftw_free(spec_);
  }

  Projector(const Projector&) = delete;
  Projector& operator=(const Projector&) = delete;

  double operator()(std::span<const double> lags, std::span<const double> w) {
    for (std::size_t k = 0; k < size_; ++k) real_[k] = k < taps_ ? w[k] : 0.0;
    fftw_execute(forward_);
    for (std::size_t k = 0; k <= size_ / 2; ++k) {
      const double re = spec_[k][0];
      const double im = spec_[k][1];
      spec_[k][0] = re * re + im * im;
      spec_[k][1] = 0.0;
    }
    fftw_execute(backward_);
    const double scale = 1.0 / static_cast<double>(size_);
    double acc = lags[0] * real_[0] * scale;
    for (std::size_t k = 1; k < taps_; ++k) acc += 2.0 * lags[k] * real_[k] * scale;
    return acc;
  }

 private:
  std::size_t taps_;
  std::size_t size_;
  double* real_;
  fftw_complex* spec_;
  fftw_plan forward_;
  fftw_plan backward_;
};

OutputPowerTracker::OutputPowerTracker(const AlgorithmConfig& config, std::size_t taps)
    : kind_(config.power_estimator),
      alpha_(config.power_smoothing),
      beta_(config.correlation_smoothing),
      interval_(config.projection_interval),
      lags_(taps, 0.0) {
  if (kind_ == PowerEstimator::projected && taps > kDirectLimit) {
    projector_ = std::make_unique<Projector>(taps);
  }
}

OutputPowerTracker::~OutputPowerTracker() = default;
OutputPowerTracker::OutputPowerTracker(OutputPowerTracker&&) noexcept = default;
OutputPowerTracker& OutputPowerTracker::operator=(OutputPowerTracker&&) noexcept = default;

void OutputPowerTracker::update(ControllerState& state, std::span<const double> x, double y) {
  if (kind_ == PowerEstimator::smoothed) {
    state.output_power_estimate = estimate_output_power(state.output_power_estimate, y, alpha_);
    return;
  }
  const std::size_t taps = lags_.size();
  if (x.size() < taps) throw DataError("power tracker: reference window shorter than filter");
  const double x0 = x[0];
  for (std::size_t k = 0; k < taps; ++k) lags_[k] = beta_ * lags_[k] + (1.0 - beta_) * x0 * x[k];
  beta_pow_ *= beta_;
  if (samples_++ % interval_ != 0) return;
  const double raw = projector_ ? (*projector_)(lags_, state.weights)
                                : toeplitz_quadratic_form(lags_, state.weights);
  state.output_power_estimate = std::max(raw, 0.0) / (1.0 - beta_pow_);
}

std::vector<double> OutputPowerTracker::lag_estimates() const {
  std::vector<double> out(lags_);
  if (beta_pow_ < 1.0) {
    for (double& r : out) r /= 1.0 - beta_pow_;
  }
  return out;
}

}  // namespace ancsim::controllers
