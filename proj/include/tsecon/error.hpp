#pragma once

#include <stdexcept>
#include <string>

namespace tsecon {

/// Malformed or inconsistent input data (CSV bundle, series lookups).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A model/test specification that cannot be evaluated as written.
class SpecError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Numerical failure during estimation (rank deficiency, too few observations, ...).
class EstimationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Pipeline manifest that does not parse or references unknown series/steps.
class ManifestError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace tsecon
