#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace ancsim::acoustics {

/// Fixed-length history of the most recent samples, newest first. Starts
/// zero-filled. Backed by a mirrored buffer so window() is always contiguous.
class DelayLine {
 public:
  explicit DelayLine(std::size_t length);

  void push(double sample) noexcept {
    head_ = (head_ == 0 ? length_ : head_) - 1;
    buffer_[head_] = sample;
    buffer_[head_ + length_] = sample;
  }

  std::span<const double> window() const noexcept { return {buffer_.data() + head_, length_}; }
  double operator[](std::size_t lag) const noexcept { return buffer_[head_ + lag]; }
  std::size_t length() const noexcept { return length_; }
  void reset() noexcept;

 private:
  std::vector<double> buffer_;
  std::size_t length_;
  std::size_t head_ = 0;
};

}  // namespace ancsim::acoustics
