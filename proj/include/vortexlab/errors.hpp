#pragma once

#include <stdexcept>
#include <string>

namespace vortexlab {

/// Invalid input or violated precondition. Maps to CLI exit code 2.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Solver divergence, NaN blowup, non-convergence. Maps to CLI exit code 3.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace vortexlab
