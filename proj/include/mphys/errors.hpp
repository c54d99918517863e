#pragma once

#include <stdexcept>

namespace mphys {

// Bad configuration or malformed input file. CLI maps this to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A numerical procedure failed where failure is not an expected outcome
// (e.g. the ground-truth plant refusing to integrate). CLI exit code 3.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace mphys
