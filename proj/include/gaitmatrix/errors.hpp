#pragma once

#include <stdexcept>
#include <string>

namespace gaitmatrix {

/// Malformed or out-of-range input (bad angle, index, config field, ...).
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

/// A guard on problem size was exceeded (state space too large, enumeration
/// budget blown).
class CapacityError : public std::runtime_error {
 public:
  explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

/// A sequence traverses a forbidden transition.
class ValidityError : public std::runtime_error {
 public:
  explicit ValidityError(const std::string& what) : std::runtime_error(what) {}
};

/// No allowed cycle exists in the transition graph.
class InfeasibleError : public std::runtime_error {
 public:
  explicit InfeasibleError(const std::string& what) : std::runtime_error(what) {}
};

/// Physical simulation failed (tipping, contact lift, unrealizable state).
class SimulationError : public std::runtime_error {
 public:
  explicit SimulationError(const std::string& what) : std::runtime_error(what) {}
};

/// No activation realizes the requested robot state.
class CalibrationError : public SimulationError {
 public:
  explicit CalibrationError(const std::string& what) : SimulationError(what) {}
};

/// Center of mass left the support span.
class TippingError : public SimulationError {
 public:
  explicit TippingError(const std::string& what) : SimulationError(what) {}
};

/// Closed-loop feedback classified to a state that is not on the commanded
/// sequence.
class OffPathError : public std::runtime_error {
 public:
  explicit OffPathError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace gaitmatrix
