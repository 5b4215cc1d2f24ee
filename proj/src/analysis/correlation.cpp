#include "ancsim/analysis/correlation.hpp"

#include <cmath>
#include <string>

#include "ancsim/errors.hpp"

namespace ancsim::analysis {

void CorrelationModel::validate() const {
  const std::size_t n = P_dx.size();
  if (R_x.rows() != n || R_x.cols() != n || R_xprime.rows() != n || R_xprime.cols() != n ||
      P_dxprime.size() != n) {
    throw DataError("CorrelationModel: inconsistent dimensions");
  }
  if (!R_x.all_finite() || !R_xprime.all_finite()) throw DataError("CorrelationModel: non-finite R");
  if (!R_x.symmetric() || !R_xprime.symmetric()) throw DataError("CorrelationModel: asymmetric R");
  for (std::size_t k = 0; k < n; ++k) {
    if (!std::isfinite(P_dx[k]) || !std::isfinite(P_dxprime[k])) {
      throw DataError("CorrelationModel: non-finite P");
    }
  }
}

std::vector<double> cross_correlation(std::span<const double> a, std::span<const double> b,
                                      std::size_t lags) {
  if (a.size() != b.size()) throw DataError("cross_correlation: signals differ in length");
  const std::size_t n = a.size();
  std::vector<double> r(lags, 0.0);
  if (n == 0) return r;
  for (std::size_t k = 0; k < lags && k < n; ++k) {
    double acc = 0.0;
    for (std::size_t t = k; t < n; ++t) acc += a[t] * b[t - k];
    r[k] = acc / static_cast<double>(n);
  }
  return r;
}

CorrelationModel build_correlation_model(std::span<const double> x, std::span<const double> d,
                                         const acoustics::FirPath& s_hat, std::size_t taps) {
  if (taps == 0) throw ConfigError("build_correlation_model: L_f must be >= 1");
  if (x.size() != d.size()) throw DataError("build_correlation_model: x and d differ in length");
  if (x.size() < 10 * taps) {
    throw DataError("build_correlation_model: signals hold " + std::to_string(x.size()) +
                    " samples, need at least " + std::to_string(10 * taps));
  }
  const auto xp = acoustics::convolve(s_hat, x);
  CorrelationModel m;
  const auto rx = cross_correlation(x, x, taps);
  const auto rxp = cross_correlation(xp, xp, taps);
  m.R_x = Matrix::toeplitz(rx);
  m.R_xprime = Matrix::toeplitz(rxp);
  m.P_dx = cross_correlation(d, x, taps);
  m.P_dxprime = cross_correlation(d, xp, taps);
  m.validate();
  return m;
}

CorrelationModel exact_correlation_model(std::span<const double> rx,
                                         const acoustics::FirPath& primary,
                                         const acoustics::FirPath& s_hat, std::size_t taps) {
  const std::size_t need = taps + primary.size() + s_hat.size();
  if (rx.size() < need) {
    throw DataError("exact_correlation_model: need " + std::to_string(need) + " lags");
  }
  auto r = [&](long k) { return rx[static_cast<std::size_t>(k < 0 ? -k : k)]; };
  const auto p = primary.coefficients();
  const auto s = s_hat.coefficients();
  CorrelationModel m;
  std::vector<double> lx(taps), lxp(taps);
  for (std::size_t k = 0; k < taps; ++k) {
    lx[k] = r(static_cast<long>(k));
    double acc = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i)
      for (std::size_t j = 0; j < s.size(); ++j)
        acc += s[i] * s[j] * r(static_cast<long>(k) + static_cast<long>(j) - static_cast<long>(i));
    lxp[k] = acc;
  }
  m.R_x = Matrix::toeplitz(lx);
  m.R_xprime = Matrix::toeplitz(lxp);
  m.P_dx.assign(taps, 0.0);
  m.P_dxprime.assign(taps, 0.0);
  for (std::size_t k = 0; k < taps; ++k) {
    // E[d(n)x(n−k)] = Σ_i p_i r(k − i); E[d(n)x′(n−k)] = Σ_i Σ_j p_i s_j r(k + j − i).
    for (std::size_t i = 0; i < p.size(); ++i) {
      const long ki = static_cast<long>(k) - static_cast<long>(i);
      m.P_dx[k] += p[i] * r(ki);
      for (std::size_t j = 0; j < s.size(); ++j) m.P_dxprime[k] += p[i] * s[j] * r(ki + static_cast<long>(j));
    }
  }
  m.validate();
  return m;
}

}  // namespace ancsim::analysis
