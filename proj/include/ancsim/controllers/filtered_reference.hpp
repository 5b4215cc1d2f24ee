#pragma once

#include <cstddef>
#include <span>

#include "ancsim/acoustics/delay_line.hpp"
#include "ancsim/acoustics/fir_path.hpp"

namespace ancsim::controllers {

/// Reference history x(n) and the filtered reference x′(n) = x(n) ∗ ŝ(n).
class FilteredReference {
 public:
  /// `taps` is the control-filter length L_f; `reference_length` the minimum
  /// reference history other consumers need (e.g. the primary path length).
  FilteredReference(acoustics::FirPath secondary_model, std::size_t taps,
                    std::size_t reference_length = 0);

  /// Push x(n); returns x′(n).
  double push(double x);

  /// Reference window, newest first (length ≥ max(L_f + |ŝ| − 1, reference_length)).
  std::span<const double> reference() const noexcept { return reference_.window(); }
  /// First L_f reference samples, the control-filter regressor x(n).
  std::span<const double> regressor() const noexcept { return reference_.window().first(taps_); }
  /// Filtered regressor x′(n), length L_f.
  std::span<const double> filtered() const noexcept { return filtered_.window(); }

  const acoustics::FirPath& model() const noexcept { return model_; }

  /// Recomputes every filtered sample from the reference history and compares.
  bool consistent(double tolerance = 1e-12) const;

 private:
  acoustics::FirPath model_;
  std::size_t taps_;
  acoustics::DelayLine reference_;
  acoustics::DelayLine filtered_;
};

}  // namespace ancsim::controllers
