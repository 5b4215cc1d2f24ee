#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace ancsim::acoustics {

/// Finite impulse response of an acoustic path (primary p, secondary s or the
/// offline model ŝ). Immutable after construction.
class FirPath {
 public:
  /// Throws ConfigError when empty or when any tap is non-finite.
  explicit FirPath(std::vector<double> coefficients);

  /// The single-tap unit path [1].
  static FirPath identity();

  std::span<const double> coefficients() const noexcept { return coefficients_; }
  std::size_t size() const noexcept { return coefficients_.size(); }
  double operator[](std::size_t k) const { return coefficients_[k]; }

  /// White-noise power gain, Σ c[k]².
  double power_gain() const noexcept;

  bool operator==(const FirPath&) const = default;

 private:
  std::vector<double> coefficients_;
};

/// One output sample of the streaming convolution: Σ c[k]·history[k], where
/// history[0] is the newest input. Samples before stream start are expected to
/// be zero-filled by the caller (see DelayLine).
double convolve_stream(const FirPath& path, std::span<const double> history);

/// Batch convolution truncated to the input length (zero initial state).
std::vector<double> convolve(const FirPath& path, std::span<const double> signal);

}  // namespace ancsim::acoustics
