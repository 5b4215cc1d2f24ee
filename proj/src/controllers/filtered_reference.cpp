#include "ancsim/controllers/filtered_reference.hpp"

#include <algorithm>
#include <cmath>

namespace ancsim::controllers {

FilteredReference::FilteredReference(acoustics::FirPath secondary_model, std::size_t taps,
                                     std::size_t reference_length)
    : model_(std::move(secondary_model)),
      taps_(taps),
      reference_(std::max(taps + model_.size() - 1, reference_length)),
      filtered_(taps) {}

double FilteredReference::push(double x) {
  reference_.push(x);
  const double xp = acoustics::convolve_stream(model_, reference_.window());
  filtered_.push(xp);
  return xp;
}

bool FilteredReference::consistent(double tolerance) const {
  const auto ref = reference_.window();
  const auto filt = filtered_.window();
  for (std::size_t k = 0; k < taps_; ++k) {
    const double expected = acoustics::convolve_stream(model_, ref.subspan(k));
    if (std::abs(expected - filt[k]) > tolerance * std::max(1.0, std::abs(expected))) return false;
  }
  return true;
}

}  // namespace ancsim::controllers
