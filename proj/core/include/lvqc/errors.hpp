#pragma once

#include <stdexcept>
#include <string>

namespace lvqc {

// A register or matrix is too large for the requested backend (caller should
// switch to the MPS backend or shrink the problem).
class CapacityError : public std::runtime_error {
 public:
  explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

// A protocol inequality (the depth/window compatibility conditions of the
// compilation scheme) is violated. The message names the failed inequality
// with its concrete numbers.
class ConstraintError : public std::invalid_argument {
 public:
  explicit ConstraintError(const std::string& what) : std::invalid_argument(what) {}
};

// The optimizer hit a non-finite cost value and cannot proceed.
class OptimizerError : public std::runtime_error {
 public:
  explicit OptimizerError(const std::string& what) : std::runtime_error(what) {}
};

// The size planner cannot meet the requested tolerance within the given
// lattice; carries the best epsilon achievable at the largest feasible window.
class PlannerInfeasibleError : public std::runtime_error {
 public:
  PlannerInfeasibleError(const std::string& what, double achievable)
      : std::runtime_error(what), achievable_epsilon(achievable) {}
  double achievable_epsilon;
};

// A numerical result violated an exact mathematical property by more than the
// allowed rounding slack (e.g. a cost outside [-1e-9, 1+1e-9] before clamping).
class IntegrityError : public std::runtime_error {
 public:
  explicit IntegrityError(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

// Clamps a nominally-[0,1] quantity, rejecting anything beyond rounding slack.
inline double clamp_unit_interval(double value, const char* what) {
  if (!(value > -1e-9) || !(value < 1.0 + 1e-9)) {
    throw IntegrityError(std::string(what) + ": value " + std::to_string(value) +
                         " outside [0,1] beyond rounding slack");
  }
  return value < 0.0 ? 0.0 : (value > 1.0 ? 1.0 : value);
}

}  // namespace detail

}  // namespace lvqc
