#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace casimir {

/// Base of every error the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument is outside the domain of the function (xi <= 0, T <= 0, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A requested abscissa lies outside a table that must not be extrapolated.
class RangeError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Malformed input data or configuration. Carries the offending row when known.
class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what, std::optional<std::size_t> row = std::nullopt)
      : Error(row ? what + " (row " + std::to_string(*row) + ")" : what), row_(row) {}

  std::optional<std::size_t> row() const { return row_; }

 private:
  std::optional<std::size_t> row_;
};

/// A numerical procedure failed to reach its tolerance, or produced a value that
/// violates a structural invariant (e.g. a non-positive determinant).
class NumericalError : public Error {
 public:
  NumericalError(const std::string& what, double estimate = 0.0, double error_bound = 0.0)
      : Error(what), estimate_(estimate), error_bound_(error_bound) {}

  double estimate() const { return estimate_; }
  double error_bound() const { return error_bound_; }

 private:
  double estimate_;
  double error_bound_;
};

}  // namespace casimir
