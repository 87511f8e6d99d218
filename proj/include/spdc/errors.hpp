#pragma once

#include <stdexcept>
#include <string>

namespace spdc {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input outside the range where a model is defined (e.g. a wavelength
/// outside the Sellmeier validity window).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Invalid or incomplete scenario description.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A numerical procedure failed to produce a result (no bracket, no
/// maximum, width window exhausted).
class NumericalError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace spdc
