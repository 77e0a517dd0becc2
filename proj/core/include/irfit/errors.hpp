#pragma once

#include <stdexcept>
#include <string>

namespace irfit {

/// Raised when a user-supplied problem or model breaks one of the
/// standing assumptions the driver relies on (restoration quality,
/// surrogate overestimation bound).
class AssumptionViolation : public std::runtime_error {
 public:
  AssumptionViolation(int assumption, const std::string& what)
      : std::runtime_error("Assumption " + std::to_string(assumption) + " violated: " + what),
        assumption_(assumption) {}

  int assumption() const noexcept { return assumption_; }

 private:
  int assumption_;
};

/// Malformed input files and configuration.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& source, int line, const std::string& what)
      : std::runtime_error(source + ":" + std::to_string(line) + ": " + what), line_(line) {}

  int line() const noexcept { return line_; }

 private:
  int line_;
};

/// Non-finite values coming back from an objective callback.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace irfit
