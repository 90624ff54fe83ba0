#pragma once

#include <stdexcept>
#include <string>

namespace enclose {

// Error categories map one-to-one onto CLI exit codes (see tools/):
//   ValidationError -> 1, NumericError -> 2, IoError -> 3.

// A scenario or state violates a standing assumption or schema.
class ValidationError : public std::runtime_error {
  public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// A run produced non-finite numbers or violated a runtime bound.
class NumericError : public std::runtime_error {
  public:
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

class IoError : public std::runtime_error {
  public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace enclose
