#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace ancsim::analysis {

struct PowerSpectrum {
  std::vector<double> frequencies;  // Hz, 0 … fs/2
  std::vector<double> density;      // one-sided, power per Hz
  double bin_width = 0.0;

  /// Σ density·bin_width over bins with low ≤ f ≤ high.
  double band_power(double low_hz, double high_hz) const;
  double total_power() const;
};

/// Welch estimate: Hann-windowed segments with the segment mean removed,
/// averaged modified periodograms. Throws DataError unless the signal holds at
/// least two segments, ConfigError for a bad rate, segment or overlap.
PowerSpectrum welch_psd(std::span<const double> signal, double sample_rate,
                        std::size_t segment_length = 4096, double overlap = 0.5);

/// 10·log10(max(p, floor)).
double to_db(double power, double floor = 1e-300);

}  // namespace ancsim::analysis
