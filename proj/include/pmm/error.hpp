#pragma once

#include <stdexcept>
#include <string>

namespace pmm {

// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad argument: shape mismatch, nonpositive step size, non-binary mask ...
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// A quantity the theory says cannot occur did occur (indefinite CG system,
// vanishing gamma denominator without the stop test firing).
class NumericalAnomaly : public Error {
 public:
  using Error::Error;
};

// File and format errors from the I/O layer.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace pmm
