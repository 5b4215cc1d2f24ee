#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string_view>
#include <vector>

#include "ancsim/acoustics/delay_line.hpp"
#include "ancsim/acoustics/fir_path.hpp"

namespace ancsim::acoustics {

enum class NoiseKind { white_gaussian, band_limited };

struct FrequencyBand {
  double low_hz = 0.0;
  double high_hz = 0.0;

  bool operator==(const FrequencyBand&) const = default;
};

struct NoiseSource {
  NoiseKind kind = NoiseKind::white_gaussian;
  double variance = 1.0;
  std::optional<FrequencyBand> band;
  double sample_rate = 16000.0;
  std::uint64_t seed = 1;

  /// Throws ConfigError on non-positive variance or a band outside (0, fs/2).
  void validate() const;
};

/// Length of the linear-phase bandpass used for band-limited noise (order 255).
inline constexpr std::size_t kBandpassTaps = 256;

/// Windowed-sinc (Hamming) bandpass, unit gain at the band centre.
std::vector<double> design_bandpass(double low_hz, double high_hz, double sample_rate,
                                    std::size_t taps);

/// Seeded sample generator. Band-limited noise is white Gaussian noise through
/// the bandpass, scaled so the output variance equals the requested variance;
/// the filter history is pre-filled so the output is stationary from sample 0.
class NoiseGenerator {
 public:
  explicit NoiseGenerator(const NoiseSource& source);

  double next();
  std::vector<double> generate(std::size_t n);

 private:
  double white() { return normal_(rng_); }

  NoiseKind kind_;
  std::mt19937_64 rng_;
  std::normal_distribution<double> normal_;
  double white_scale_ = 1.0;
  std::vector<double> taps_;
  DelayLine history_;
};

/// n samples from a fresh generator. Throws ConfigError when n == 0.
std::vector<double> generate(const NoiseSource& source, std::size_t n);

/// Exact autocorrelation r(0..lags-1) of the generated process.
std::vector<double> theoretical_autocorrelation(const NoiseSource& source, std::size_t lags);

/// Random decaying impulse response: `delay` leading zeros, then Gaussian taps
/// with envelope exp(-k/decay), normalised to unit energy.
FirPath synthetic_path(std::size_t length, std::size_t delay, double decay_samples,
                       std::uint64_t seed);

/// RMS magnitude response of `path` over [band.low_hz, band.high_hz].
double band_rms_gain(const FirPath& path, const FrequencyBand& band, double sample_rate);

std::string_view to_string(NoiseKind kind) noexcept;
NoiseKind noise_kind_from_string(std::string_view name);

}  // namespace ancsim::acoustics
