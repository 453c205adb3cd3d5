#pragma once

#include <stdexcept>
#include <string>

namespace freeshear {

/// Invalid configuration or construction parameters (CLI exit code 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Non-finite or runaway state during time stepping.
class BlowUpError : public std::runtime_error {
 public:
  BlowUpError(const std::string& what, double last_good_time)
      : std::runtime_error(what), last_good_time_(last_good_time) {}
  double last_good_time() const noexcept { return last_good_time_; }

 private:
  double last_good_time_;
};

}  // namespace freeshear
