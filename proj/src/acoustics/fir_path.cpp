#include "ancsim/acoustics/fir_path.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "ancsim/errors.hpp"

namespace ancsim::acoustics {

FirPath::FirPath(std::vector<double> coefficients) : coefficients_(std::move(coefficients)) {
  if (coefficients_.empty()) throw ConfigError("FirPath: at least one coefficient is required");
  for (std::size_t k = 0; k < coefficients_.size(); ++k) {
    if (!std::isfinite(coefficients_[k])) {
      throw ConfigError("FirPath: coefficient " + std::to_string(k) + " is not finite");
    }
  }
}

FirPath FirPath::identity() { return FirPath({1.0}); }

double FirPath::power_gain() const noexcept {
  return std::inner_product(coefficients_.begin(), coefficients_.end(), coefficients_.begin(),
                            0.0);
}

double convolve_stream(const FirPath& path, std::span<const double> history) {
  if (history.size() < path.size()) {
    throw DataError("convolve_stream: history holds " + std::to_string(history.size()) +
                    " samples, path needs " + std::to_string(path.size()));
  }
  const auto c = path.coefficients();
  double acc = 0.0;
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (!std::isfinite(history[k])) throw DataError("convolve_stream: non-finite input sample");
    acc += c[k] * history[k];
  }
  return acc;
}

std::vector<double> convolve(const FirPath& path, std::span<const double> signal) {
  const auto c = path.coefficients();
  std::vector<double> out(signal.size(), 0.0);
  for (std::size_t n = 0; n < signal.size(); ++n) {
    if (!std::isfinite(signal[n])) throw DataError("convolve: non-finite input sample");
    const std::size_t kmax = std::min(c.size(), n + 1);
    double acc = 0.0;
    for (std::size_t k = 0; k < kmax; ++k) acc += c[k] * signal[n - k];
    out[n] = acc;
  }
  return out;
}

}  // namespace ancsim::acoustics
