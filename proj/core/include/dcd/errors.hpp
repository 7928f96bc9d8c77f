#pragma once

#include <stdexcept>
#include <string>

namespace dcd {

// Base of everything the library throws on purpose. The CLI maps the
// subclasses onto exit statuses: ConfigError -> 2, the rest -> 3.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid or inconsistent input (bad model, bad grid, bad config).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Argument outside the interval a function is defined or certified on.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Two grid functions that should share a geometry do not.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// A structural analysis (GN, F-set lookup) cannot produce the requested value.
class AnalysisError : public Error {
 public:
  using Error::Error;
};

// The explicit scheme produced a value outside the certified range.
class StabilityFault : public Error {
 public:
  using Error::Error;
};

// FarField box is too small: the solution reached the boundary ring.
class DomainTooSmall : public Error {
 public:
  using Error::Error;
};

// Randomized construction gave up.
class GenerationError : public Error {
 public:
  using Error::Error;
};

}  // namespace dcd
