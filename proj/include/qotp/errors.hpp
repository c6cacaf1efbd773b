#pragma once

#include <stdexcept>

namespace qotp {

/// Configuration parse/validation failure (CLI exit code 2).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Filesystem failure while reading or writing artifacts (CLI exit code 3).
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace qotp
