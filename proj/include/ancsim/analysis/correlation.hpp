#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ancsim/acoustics/fir_path.hpp"
#include "ancsim/analysis/linalg.hpp"

namespace ancsim::analysis {

struct CorrelationModel {
  Matrix R_x;        // autocorrelation of x, L_f × L_f
  Matrix R_xprime;   // autocorrelation of x′ = x ∗ ŝ
  std::vector<double> P_dx;
  std::vector<double> P_dxprime;

  std::size_t taps() const noexcept { return P_dx.size(); }
  /// Throws DataError if a matrix is asymmetric, non-finite or sizes differ.
  void validate() const;
};

/// Biased lag estimates r(k) = (1/N)·Σ_n a(n)·b(n−k), k = 0..lags−1.
std::vector<double> cross_correlation(std::span<const double> a, std::span<const double> b,
                                      std::size_t lags);

/// Sample-average model: Toeplitz R from biased lag estimates, P vectors from
/// biased cross-correlations p(k) = (1/N)·Σ d(n)·x(n−k). Requires signals of
/// equal length ≥ 10·L_f (DataError otherwise).
CorrelationModel build_correlation_model(std::span<const double> x, std::span<const double> d,
                                         const acoustics::FirPath& s_hat, std::size_t taps);

/// Exact model for a stationary reference with autocorrelation `rx`
/// (at least L_f + |p| + |ŝ| lags) driving d = x ∗ primary.
CorrelationModel exact_correlation_model(std::span<const double> rx,
                                         const acoustics::FirPath& primary,
                                         const acoustics::FirPath& s_hat, std::size_t taps);

}  // namespace ancsim::analysis
