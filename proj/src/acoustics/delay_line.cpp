#include "ancsim/acoustics/delay_line.hpp"

#include <algorithm>

#include "ancsim/errors.hpp"

namespace ancsim::acoustics {

DelayLine::DelayLine(std::size_t length) : buffer_(2 * length, 0.0), length_(length) {
  if (length == 0) throw ConfigError("DelayLine: length must be at least 1");
}

void DelayLine::reset() noexcept {
  std::fill(buffer_.begin(), buffer_.end(), 0.0);
  head_ = 0;
}

}  // namespace ancsim::acoustics
