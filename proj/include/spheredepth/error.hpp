#pragma once

#include <stdexcept>
#include <string>

namespace spheredepth {

// Base class for all library errors.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// File and stream failures: missing files, magic mismatch, truncation.
struct IoError : Error {
  explicit IoError(const std::string& msg) : Error(msg) {}
};

// Incompatible tensor/mesh/config shapes.
struct ShapeError : Error {
  explicit ShapeError(const std::string& msg) : Error(msg) {}
};

// Non-finite values or empty valid sets where numbers are required.
struct NumericError : Error {
  explicit NumericError(const std::string& msg) : Error(msg) {}
};

}  // namespace spheredepth
