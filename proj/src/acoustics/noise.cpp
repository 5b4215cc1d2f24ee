#include "ancsim/acoustics/noise.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>
#include <string>

#include "ancsim/errors.hpp"

namespace ancsim::acoustics {

namespace {

double sinc(double x) {
  if (x == 0.0) return 1.0;
  const double px = std::numbers::pi * x;
  return std::sin(px) / px;
}

std::complex<double> frequency_response(std::span<const double> taps, double f_norm) {
  std::complex<double> acc{0.0, 0.0};
  for (std::size_t k = 0; k < taps.size(); ++k) {
    acc += taps[k] * std::polar(1.0, -2.0 * std::numbers::pi * f_norm * static_cast<double>(k));
  }
  return acc;
}

}  // namespace

void NoiseSource::validate() const {
  if (!(variance > 0.0) || !std::isfinite(variance)) {
    throw ConfigError("noise.variance must be finite and > 0");
  }
  if (!(sample_rate > 0.0)) throw ConfigError("noise.sample_rate must be > 0");
  if (kind == NoiseKind::band_limited && !band) {
    throw ConfigError("noise.band is required for band-limited noise");
  }
  if (band) {
    const double nyquist = sample_rate / 2.0;
    if (!(band->low_hz > 0.0 && band->low_hz < band->high_hz && band->high_hz < nyquist)) {
      throw ConfigError("noise.band must satisfy 0 < low < high < sample_rate/2 (got [" +
                        std::to_string(band->low_hz) + ", " + std::to_string(band->high_hz) +
                        "] at " + std::to_string(sample_rate) + " Hz)");
    }
  }
}

std::vector<double> design_bandpass(double low_hz, double high_hz, double sample_rate,
                                    std::size_t taps) {
  if (taps < 2) throw ConfigError("design_bandpass: need at least 2 taps");
  if (!(low_hz > 0.0 && low_hz < high_hz && high_hz < sample_rate / 2.0)) {
    throw ConfigError("design_bandpass: band must satisfy 0 < low < high < fs/2");
  }
  const double f1 = low_hz / sample_rate;
  const double f2 = high_hz / sample_rate;
  const double centre = 0.5 * static_cast<double>(taps - 1);
  std::vector<double> h(taps);
  for (std::size_t n = 0; n < taps; ++n) {
    const double t = static_cast<double>(n) - centre;
    const double ideal = 2.0 * f2 * sinc(2.0 * f2 * t) - 2.0 * f1 * sinc(2.0 * f1 * t);
    const double window =
        0.54 - 0.46 * std::cos(2.0 * std::numbers::pi * static_cast<double>(n) /
                               static_cast<double>(taps - 1));
    h[n] = ideal * window;
  }
  const double gain = std::abs(frequency_response(h, 0.5 * (f1 + f2)));
  for (double& v : h) v /= gain;
  return h;
}

NoiseGenerator::NoiseGenerator(const NoiseSource& source)
    : kind_(source.kind),
      rng_(source.seed),
      history_(source.kind == NoiseKind::band_limited ? kBandpassTaps : 1) {
  source.validate();
  if (kind_ == NoiseKind::white_gaussian) {
    white_scale_ = std::sqrt(source.variance);
    return;
  }
  taps_ = design_bandpass(source.band->low_hz, source.band->high_hz, source.sample_rate,
                          kBandpassTaps);
  const double energy = std::inner_product(taps_.begin(), taps_.end(), taps_.begin(), 0.0);
  white_scale_ = std::sqrt(source.variance / energy);
  for (std::size_t k = 1; k < taps_.size(); ++k) history_.push(white_scale_ * white());
}

double NoiseGenerator::next() {
  if (kind_ == NoiseKind::white_gaussian) return white_scale_ * white();
  history_.push(white_scale_ * white());
  const auto window = history_.window();
  return std::inner_product(taps_.begin(), taps_.end(), window.begin(), 0.0);
}

std::vector<double> NoiseGenerator::generate(std::size_t n) {
  std::vector<double> out(n);
  for (double& v : out) v = next();
  return out;
}

std::vector<double> generate(const NoiseSource& source, std::size_t n) {
  if (n == 0) throw ConfigError("generate: sample count must be >= 1");
  NoiseGenerator gen(source);
  return gen.generate(n);
}

std::vector<double> theoretical_autocorrelation(const NoiseSource& source, std::size_t lags) {
  source.validate();
  std::vector<double> r(lags, 0.0);
  if (lags == 0) return r;
  if (source.kind == NoiseKind::white_gaussian) {
    r[0] = source.variance;
    return r;
  }
  const auto h = design_bandpass(source.band->low_hz, source.band->high_hz, source.sample_rate,
                                 kBandpassTaps);
  const double energy = std::inner_product(h.begin(), h.end(), h.begin(), 0.0);
  const double white_var = source.variance / energy;
  for (std::size_t k = 0; k < lags && k < h.size(); ++k) {
    double acc = 0.0;
    for (std::size_t i = 0; i + k < h.size(); ++i) acc += h[i] * h[i + k];
    r[k] = white_var * acc;
  }
  return r;
}

FirPath synthetic_path(std::size_t length, std::size_t delay, double decay_samples,
                       std::uint64_t seed) {
  if (length == 0 || delay >= length) {
    throw ConfigError("synthetic_path: need length >= 1 and delay < length");
  }
  if (!(decay_samples > 0.0)) throw ConfigError("synthetic_path: decay must be > 0");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::vector<double> c(length, 0.0);
  for (std::size_t k = delay; k < length; ++k) {
    c[k] = normal(rng) * std::exp(-static_cast<double>(k - delay) / decay_samples);
  }
  const double norm = std::sqrt(std::inner_product(c.begin(), c.end(), c.begin(), 0.0));
  for (double& v : c) v /= norm;
  return FirPath(std::move(c));
}

double band_rms_gain(const FirPath& path, const FrequencyBand& band, double sample_rate) {
  constexpr std::size_t kGrid = 4096;
  double acc = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i <= kGrid / 2; ++i) {
    const double f_hz = sample_rate * static_cast<double>(i) / kGrid;
    if (f_hz < band.low_hz || f_hz > band.high_hz) continue;
    acc += std::norm(frequency_response(path.coefficients(), f_hz / sample_rate));
    ++count;
  }
  if (count == 0) throw ConfigError("band_rms_gain: band contains no grid frequencies");
  return std::sqrt(acc / static_cast<double>(count));
}

std::string_view to_string(NoiseKind kind) noexcept {
  return kind == NoiseKind::white_gaussian ? "white-gaussian" : "band-limited";
}

NoiseKind noise_kind_from_string(std::string_view name) {
  if (name == "white-gaussian") return NoiseKind::white_gaussian;
  if (name == "band-limited") return NoiseKind::band_limited;
  throw ConfigError("unknown noise kind '" + std::string(name) + "'");
}

}  // namespace ancsim::acoustics
