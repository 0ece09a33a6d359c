#pragma once

#include <limits>
#include <stdexcept>
#include <string>

namespace cpl {

/// Base of every failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of the operation (range of a theorem,
/// invalid Cantor ratio, degenerate support, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// NaN or infinite integrand sample.
class InvalidIntegrand : public Error {
 public:
  using Error::Error;
};

/// Adaptive quadrature ran out of subdivisions. Carries the best estimate.
class ToleranceNotMet : public Error {
 public:
  ToleranceNotMet(const std::string& what, double estimate_re, double estimate_im,
                  double error_bound)
      : Error(what), estimate_re(estimate_re), estimate_im(estimate_im),
        error_bound(error_bound) {}

  double estimate_re;
  double estimate_im;
  double error_bound;
};

class EmptyRegion : public Error {
 public:
  using Error::Error;
};

class OutOfRange : public Error {
 public:
  using Error::Error;
};

class PhaseMismatch : public Error {
 public:
  using Error::Error;
};

/// A grid violates its sampling contract, or too many samples failed.
class SamplingError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace cpl
