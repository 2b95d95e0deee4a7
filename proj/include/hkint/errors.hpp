#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hkint {

/// Bad argument to an operation (non-positive tolerance, ratio outside (0,1), ...).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A point or interval outside the domain an operation was asked to work on.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Cousin-lemma construction could not certify a delta-fine partition.
class ConstructionError : public std::runtime_error {
 public:
  ConstructionError(const std::string& what, double lo, double hi)
      : std::runtime_error(what), lo_(lo), hi_(hi) {}

  /// Offending subinterval [lo, hi].
  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }

  /// Refinement step of an estimator run, when the failure happened inside one.
  std::optional<std::size_t> step() const noexcept { return step_; }
  void set_step(std::size_t s) noexcept { step_ = s; }

 private:
  double lo_;
  double hi_;
  std::optional<std::size_t> step_;
};

/// The gauge evaluated to zero (or NaN) somewhere, typically after a schedule
/// scaled it below the smallest subnormal.
class ScheduleExhausted : public ConstructionError {
 public:
  using ConstructionError::ConstructionError;
};

/// The integrand produced a non-finite value (or faulted) at a point.
class EvaluationError : public std::runtime_error {
 public:
  EvaluationError(const std::string& what, double at)
      : std::runtime_error(what), at_(at) {}

  double at() const noexcept { return at_; }

 private:
  double at_;
};

/// Expression syntax error with byte offset and the tokens that would have been accepted.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t offset, std::vector<std::string> expected)
      : std::runtime_error(what), offset_(offset), expected_(std::move(expected)) {}

  std::size_t offset() const noexcept { return offset_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

 private:
  std::size_t offset_;
  std::vector<std::string> expected_;
};

}  // namespace hkint
