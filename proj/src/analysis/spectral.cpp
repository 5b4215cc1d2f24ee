#include "ancsim/analysis/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <string>

#include "ancsim/errors.hpp"

namespace ancsim::analysis {

namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

double PowerSpectrum::band_power(double low_hz, double high_hz) const {
  double acc = 0.0;
  for (std::size_t k = 0; k < frequencies.size(); ++k) {
    if (frequencies[k] >= low_hz && frequencies[k] <= high_hz) acc += density[k];
  }
  return acc * bin_width;
}

double PowerSpectrum::total_power() const {
  double acc = 0.0;
  for (double p : density) acc += p;
  return acc * bin_width;
}

PowerSpectrum welch_psd(std::span<const double> signal, double sample_rate,
                        std::size_t segment_length, double overlap) {
  if (!(sample_rate > 0.0)) throw ConfigError("welch_psd: sample_rate must be > 0");
  if (segment_length < 2) throw ConfigError("welch_psd: segment_length must be >= 2");
  if (!(overlap >= 0.0 && overlap < 1.0)) throw ConfigError("welch_psd: overlap must lie in [0, 1)");
  if (signal.size() < 2 * segment_length) {
    throw DataError("welch_psd: signal of " + std::to_string(signal.size()) +
                    " samples is shorter than two segments of " + std::to_string(segment_length));
  }
  const std::size_t n = segment_length;
  const std::size_t hop = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(
                                                       static_cast<double>(n) * (1.0 - overlap))));
  std::vector<double> window(n);
  double wsq = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    window[k] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n));
    wsq += window[k] * window[k];
  }

  const std::size_t bins = n / 2 + 1;
  double* in = fftw_alloc_real(n);
  fftw_complex* out = fftw_alloc_complex(bins);
  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex());
    plan = fftw_plan_dft_r2c_1d(static_cast<int>(n), in, out, FFTW_ESTIMATE);
  }

  PowerSpectrum psd;
  psd.bin_width = sample_rate / static_cast<double>(n);
  psd.frequencies.resize(bins);
  psd.density.assign(bins, 0.0);
  for (std::size_t k = 0; k < bins; ++k) psd.frequencies[k] = static_cast<double>(k) * psd.bin_width;

  std::size_t segments = 0;
  for (std::size_t start = 0; start + n <= signal.size(); start += hop, ++segments) {
    double mean = 0.0;
    for (std::size_t k = 0; k < n; ++k) mean += signal[start + k];
    mean /= static_cast<double>(n);
    for (std::size_t k = 0; k < n; ++k) in[k] = (signal[start + k] - mean) * window[k];
    fftw_execute(plan);
    for (std::size_t k = 0; k < bins; ++k) {
      psd.density[k] += out[k][0] * out[k][0] + out[k][1] * out[k][1];
    }
  }
  {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
  fftw_free(in);
  fftw_free(out);

  const double scale = 1.0 / (sample_rate * wsq * static_cast<double>(segments));
  for (std::size_t k = 0; k < bins; ++k) {
    const bool edge = k == 0 || (n % 2 == 0 && k == bins - 1);
    psd.density[k] *= scale * (edge ? 1.0 : 2.0);
  }
  return psd;
}

double to_db(double power, double floor) { return 10.0 * std::log10(std::max(power, floor)); }

}  // namespace ancsim::analysis
