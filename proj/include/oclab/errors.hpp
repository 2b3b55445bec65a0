#pragma once

#include <stdexcept>
#include <string>

namespace oclab {

// Bad caller input: malformed spec strings, out-of-range parameters.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A computation could not produce a trustworthy number.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Log-domain overflow. `index` names the recursion step that failed, or -1.
class OverflowError : public NumericError {
 public:
  OverflowError(const std::string& what, int index = -1)
      : NumericError(what), index_(index) {}
  int index() const noexcept { return index_; }

 private:
  int index_;
};

class ConstructionError : public NumericError {
 public:
  using NumericError::NumericError;
};

}  // namespace oclab
