#include "lvqc/optimizer.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>
#include <string>

#include "lvqc/errors.hpp"

namespace lvqc {

void OptimizerConfig::validate() const {
  if (max_iterations < 1) throw std::invalid_argument("optimizer: max_iterations must be >= 1");
  if (!(fd_step > 0.0)) throw std::invalid_argument("optimizer: fd_step must be positive");
  if (!(grad_tolerance > 0.0)) {
    throw std::invalid_argument("optimizer: grad_tolerance must be positive");
  }
  if (cost_tolerance < 0.0) {
    throw std::invalid_argument("optimizer: cost_tolerance must be nonnegative");
  }
  if (!(armijo_c > 0.0 && armijo_c < 1.0)) {
    throw std::invalid_argument("optimizer: armijo_c must lie in (0,1)");
  }
  if (!(backtrack_factor > 0.0 && backtrack_factor < 1.0)) {
    throw std::invalid_argument("optimizer: backtrack_factor must lie in (0,1)");
  }
  if (max_line_search_steps < 1) {
    throw std::invalid_argument("optimizer: max_line_search_steps must be >= 1");
  }
}

const char* to_string(TerminationReason reason) {
  switch (reason) {
    case TerminationReason::GradientTolerance:
      return "gradient_tolerance";
    case TerminationReason::CostTolerance:
      return "cost_tolerance";
    case TerminationReason::IterationBudget:
      return "iteration_budget";
    case TerminationReason::LineSearchFailure:
      return "line_search_failure";
  }
  return "unknown";
}

Eigen::VectorXd finite_difference_gradient(const CostFunction& cost, const Eigen::VectorXd& theta,
                                           double h) {
  if (!(h > 0.0)) throw std::invalid_argument("finite_difference_gradient: h must be positive");
  Eigen::VectorXd grad(theta.size());
  Eigen::VectorXd probe = theta;
  for (Eigen::Index i = 0; i < theta.size(); ++i) {
    probe[i] = theta[i] + h;
    const double up = cost(probe);
    probe[i] = theta[i] - h;
    const double down = cost(probe);
    probe[i] = theta[i];
    if (!std::isfinite(up) || !std::isfinite(down)) {
      throw OptimizerError("finite_difference_gradient: non-finite cost at coordinate " +
                           std::to_string(i));
    }
    grad[i] = (up - down) / (2.0 * h);
  }
  return grad;
}

OptimizationTrace minimize(const CostFunction& cost, const Eigen::VectorXd& theta0,
                           const OptimizerConfig& cfg) {
  cfg.validate();
  using clock = std::chrono::steady_clock;
  const Eigen::Index n = theta0.size();
  if (n == 0) throw std::invalid_argument("minimize: empty parameter vector");

  OptimizationTrace trace;
  int evals = 0;
  auto f = [&](const Eigen::VectorXd& x) {
    ++evals;
    return cost(x);
  };
  auto grad_of = [&](const Eigen::VectorXd& x) {
    Eigen::VectorXd g = finite_difference_gradient(cost, x, cfg.fd_step);
    evals += 2 * static_cast<int>(n);
    return g;
  };

  Eigen::VectorXd x = theta0;
  double fx = f(x);
  if (!std::isfinite(fx)) {
    throw OptimizerError("minimize: cost is non-finite at the initial point");
  }
  trace.initial_cost = fx;

  auto t_start = clock::now();
  Eigen::VectorXd g = grad_of(x);
  trace.history.push_back(
      {0, fx, g.norm(), 0.0, std::chrono::duration<double>(clock::now() - t_start).count()});

  Eigen::MatrixXd h_inv = Eigen::MatrixXd::Identity(n, n);
  const Eigen::MatrixXd identity = Eigen::MatrixXd::Identity(n, n);
  trace.reason = TerminationReason::IterationBudget;
  trace.message = "iteration budget exhausted";

  for (int iter = 1; iter <= cfg.max_iterations; ++iter) {
    if (g.norm() < cfg.grad_tolerance) {
      trace.reason = TerminationReason::GradientTolerance;
      trace.message = "gradient norm below tolerance";
      break;
    }
    auto t_iter = clock::now();

    Eigen::VectorXd p = -(h_inv * g);
    double slope = g.dot(p);
    if (!(slope < 0.0)) {
      // Curvature estimate lost positive definiteness; restart from steepest
      // descent.
      h_inv = identity;
      p = -g;
      slope = -g.squaredNorm();
    }

    double step = 1.0;
    double ft = 0.0;
    bool accepted = false;
    Eigen::VectorXd xt;
    for (int ls = 0; ls < cfg.max_line_search_steps; ++ls) {
      xt = x + step * p;
      ft = f(xt);
      if (std::isfinite(ft) && ft <= fx + cfg.armijo_c * step * slope) {
        accepted = true;
        break;
      }
      step *= cfg.backtrack_factor;
    }
    if (!accepted) {
      trace.reason = TerminationReason::LineSearchFailure;
      trace.message = "line search failed at iteration " + std::to_string(iter) +
                      "; returning best point found";
      break;
    }

    Eigen::VectorXd g_new = grad_of(xt);
    const Eigen::VectorXd s = xt - x;
    const Eigen::VectorXd y = g_new - g;
    const double sy = s.dot(y);
    if (sy > 1e-12 * s.norm() * y.norm()) {
      const double rho = 1.0 / sy;
      const Eigen::MatrixXd left = identity - rho * s * y.transpose();
      h_inv = left * h_inv * left.transpose() + rho * s * s.transpose();
    }
    const double decrease = fx - ft;
    x = xt;
    fx = ft;
    g = g_new;
    trace.history.push_back({iter, fx, g.norm(), step,
                             std::chrono::duration<double>(clock::now() - t_iter).count()});
    if (cfg.cost_tolerance > 0.0 && decrease < cfg.cost_tolerance * (1.0 + std::abs(fx))) {
      trace.reason = TerminationReason::CostTolerance;
      trace.message = "cost decrease below tolerance";
      break;
    }
  }

  trace.theta_opt = x;
  trace.final_cost = fx;
  trace.evaluations = evals;
  return trace;
}

ParameterVector minimize(const std::function<double(const ParameterVector&)>& cost,
                         const ParameterVector& theta0, const OptimizerConfig& cfg,
                         OptimizationTrace* trace_out) {
  ParameterVector shaped = theta0;
  auto wrapped = [&](const Eigen::VectorXd& x) {
    ParameterVector candidate = theta0;
    candidate.angles.assign(x.data(), x.data() + x.size());
    return cost(candidate);
  };
  const Eigen::VectorXd x0 = Eigen::Map<const Eigen::VectorXd>(
      theta0.angles.data(), static_cast<Eigen::Index>(theta0.angles.size()));
  OptimizationTrace trace = minimize(CostFunction(wrapped), x0, cfg);
  shaped.angles.assign(trace.theta_opt.data(), trace.theta_opt.data() + trace.theta_opt.size());
  if (trace_out != nullptr) *trace_out = std::move(trace);
  return shaped;
}

}  // namespace lvqc
