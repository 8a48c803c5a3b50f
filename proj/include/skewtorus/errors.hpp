#pragma once

#include <stdexcept>
#include <string>

namespace skewtorus {

// The continued-fraction prefix of alpha is too short to decide a result.
class PrecisionExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A closed form was requested for a period it does not cover.
class UnsupportedPeriod : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Malformed or empty L grid.
class InvalidGrid : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace skewtorus
