#pragma once

#include <stdexcept>
#include <string>

namespace sivr {

/// Malformed or inconsistent input data (dataset files, checkpoints,
/// configuration mismatches). Maps to CLI exit code 2.
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

/// Non-finite value encountered during training or inference.
/// Maps to CLI exit code 3.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace sivr
