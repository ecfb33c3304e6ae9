#pragma once

#include <stdexcept>
#include <string>

namespace growpop {

// Argument outside the mathematical domain of an operation (negative radius,
// dimension mismatch, k < 1 for a jump, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Index outside the range a finite object can answer for.
class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// A caller broke an operation's precondition (e.g. integrating across an
// injection time).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class ScheduleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Numerical cross-check disagreed with the analytic prediction.
class DiagnosticError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Configuration problem. `field()` is the dotted path of the offending entry,
// empty for syntax errors.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& what)
      : std::runtime_error(field.empty() ? what : field + ": " + what), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace growpop
