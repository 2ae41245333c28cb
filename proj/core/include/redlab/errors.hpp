#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace redlab {

/// Argument outside the mathematical domain of an operation (e.g. a
/// quantile level outside [0,1]).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Vector or matrix sizes disagree with the system or scenario.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A model parameter or configuration field violates its constraints.
/// `field()` carries the dotted path of the offending field when known.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& message, std::string field = {})
      : std::invalid_argument(field.empty() ? message : field + ": " + message),
        field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// The scenario needs a capability the engine does not have, e.g. exact
/// enumeration of a continuous distribution.
class UnsupportedScenario : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A binary state assignment breaks the cold-standby exclusivity constraint.
class InvalidAssignment : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An enumeration would exceed its configured size guard.
class BudgetError : public std::runtime_error {
 public:
  BudgetError(const std::string& message, std::uint64_t required, std::uint64_t limit)
      : std::runtime_error(message), required_(required), limit_(limit) {}

  std::uint64_t required() const noexcept { return required_; }
  std::uint64_t limit() const noexcept { return limit_; }

 private:
  std::uint64_t required_;
  std::uint64_t limit_;
};

}  // namespace redlab
