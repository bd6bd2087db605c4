#pragma once

#include <stdexcept>
#include <string>

namespace hhb {

/// Violated precondition on user-supplied parameters (CLI exit code 2).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A point or stencil outside the region where an operation is defined.
class DomainError : public ParameterError {
 public:
  using ParameterError::ParameterError;
};

/// Requested order or degree beyond what the library supports.
class UnsupportedError : public ParameterError {
 public:
  using ParameterError::ParameterError;
};

/// A series or iteration failed to reach its tolerance (CLI exit code 3).
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Kernel series truncation cannot meet the requested tail tolerance.
class TruncationError : public ConvergenceError {
 public:
  TruncationError(const std::string& what, int required_degree)
      : ConvergenceError(what), required_degree_(required_degree) {}

  int required_degree() const noexcept { return required_degree_; }

 private:
  int required_degree_;
};

}  // namespace hhb
