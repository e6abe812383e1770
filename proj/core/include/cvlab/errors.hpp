#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace cvlab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A surface model violates one of its structural invariants.
class ModelInvalid : public Error {
 public:
  using Error::Error;
};

/// A numeric argument is outside the range an operation accepts.
class InvalidParameter : public Error {
 public:
  using Error::Error;
};

/// Evaluation left the domain of a function (log/sqrt of a negative
/// number, division by zero, overflow to a non-finite value, G <= 0).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A value overflowed to a non-finite number during evaluation.
class OverflowError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Malformed metric expression. `offset` is a byte offset into the source.
class ParseError : public Error {
 public:
  ParseError(std::size_t offset, std::vector<std::string> expected,
             const std::string& found);

  std::size_t offset() const noexcept { return offset_; }
  const std::vector<std::string>& expected() const noexcept {
    return expected_;
  }

 private:
  std::size_t offset_;
  std::vector<std::string> expected_;
};

/// Identifier that is neither a variable (t, theta) nor a known function.
class UnknownIdentifier : public Error {
 public:
  UnknownIdentifier(std::size_t offset, std::string name);

  std::size_t offset() const noexcept { return offset_; }
  const std::string& name() const noexcept { return name_; }

 private:
  std::size_t offset_;
  std::string name_;
};

/// A sequence expected to be nonincreasing increased beyond its error bars.
class NotMonotone : public Error {
 public:
  NotMonotone(double h, double increase, double allowed);

  double height() const noexcept { return h_; }
  double increase() const noexcept { return increase_; }

 private:
  double h_;
  double increase_;
};

/// The boundary length functional came out nonpositive.
class NonPositiveMu : public ModelInvalid {
 public:
  NonPositiveMu(double h, double value);
};

/// Malformed surface configuration file.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace cvlab
