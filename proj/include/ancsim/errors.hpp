#pragma once

#include <stdexcept>
#include <string>

namespace ancsim {

/// Invalid parameters or scenario description. Maps to CLI exit code 2.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Input data that cannot be processed (non-finite samples, short signals,
/// malformed matrices).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SingularMatrixError : public DataError {
 public:
  SingularMatrixError(const std::string& what, double condition_estimate)
      : DataError(what), condition_estimate_(condition_estimate) {}

  double condition_estimate() const noexcept { return condition_estimate_; }

 private:
  double condition_estimate_;
};

/// A controller produced a non-finite error sample or weight. The harness
/// turns this into a diverged run status; the CLI maps it to exit code 3.
class DivergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// File-system failures; the message carries the offending path.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ancsim
