#pragma once

#include <stdexcept>
#include <string>

namespace dbq {

/// Argument outside the mathematical domain of an operation (negative distance,
/// coordinate outside the grid, incompatible quantum numbers, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Malformed input structure, as opposed to a physically invalid one.
class StructuralError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Configuration document problem. `path()` names the offending field.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string path, const std::string& what)
      : std::runtime_error(path + ": " + what), path_(std::move(path)) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

class CalibrationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Problem size exceeds what the dense routines are allowed to handle.
class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Requested operation lies outside the regime where it is well defined
/// (no barrier under the level, tilt too weak for a Z rotation, ...).
class RegimeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dbq

namespace dbq {

/// The Hubbard-to-qubit reduction does not apply to the given parameters.
class ProjectionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dbq

namespace dbq {

/// Lindblad step size violates dt * (spread(H)/hbar + sum of rates) <= 0.05.
class StepSizeError : public std::domain_error {
 public:
  StepSizeError(const std::string& what, double suggested_dt)
      : std::domain_error(what), suggested_dt_(suggested_dt) {}
  double suggested_dt() const { return suggested_dt_; }

 private:
  double suggested_dt_;
};

}  // namespace dbq
