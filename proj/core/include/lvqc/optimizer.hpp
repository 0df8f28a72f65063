#pragma once

#include <functional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "lvqc/circuit.hpp"

namespace lvqc {

struct OptimizerConfig {
  int max_iterations = 128;
  double fd_step = 1e-5;           // central-difference step
  double grad_tolerance = 1e-8;    // stop when ||grad||_2 falls below
  double cost_tolerance = 0.0;     // stop when the accepted decrease falls below (0 = off)
  double armijo_c = 1e-4;
  double backtrack_factor = 0.5;
  int max_line_search_steps = 48;

  void validate() const;
};

enum class TerminationReason {
  GradientTolerance,
  CostTolerance,
  IterationBudget,
  LineSearchFailure,
};

const char* to_string(TerminationReason reason);

struct IterationRecord {
  int iteration = 0;
  double cost = 0.0;
  double grad_norm = 0.0;
  double step_size = 0.0;  // accepted line-search step (0 for the initial record)
  double seconds = 0.0;    // wall time spent on this iteration
};

struct OptimizationTrace {
  std::vector<IterationRecord> history;  // costs non-increasing across entries
  Eigen::VectorXd theta_opt;
  double initial_cost = 0.0;
  double final_cost = 0.0;
  TerminationReason reason = TerminationReason::IterationBudget;
  std::string message;
  int evaluations = 0;  // cost-function calls, gradient probes included
};

using CostFunction = std::function<double(const Eigen::VectorXd&)>;

// Central differences, coordinate by coordinate. Throws OptimizerError on a
// non-finite probe.
Eigen::VectorXd finite_difference_gradient(const CostFunction& cost, const Eigen::VectorXd& theta,
                                           double h);

// BFGS (dense inverse-Hessian updates) with finite-difference gradients and
// Armijo backtracking. Deterministic for a deterministic cost. A failed line
// search terminates with the best point found so far rather than throwing.
OptimizationTrace minimize(const CostFunction& cost, const Eigen::VectorXd& theta0,
                           const OptimizerConfig& cfg = {});

// Convenience wrapper for circuit parameters: optimizes over the angle list
// and returns the optimized ParameterVector (mode/depth preserved).
ParameterVector minimize(const std::function<double(const ParameterVector&)>& cost,
                         const ParameterVector& theta0, const OptimizerConfig& cfg,
                         OptimizationTrace* trace_out = nullptr);

}  // namespace lvqc
