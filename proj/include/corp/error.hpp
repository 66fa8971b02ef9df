#pragma once

#include <stdexcept>
#include <string>

namespace corp {

/// Invalid input data or parameters (exit status 1 in the CLI).
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// File system failures (exit status 2 in the CLI).
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace corp
