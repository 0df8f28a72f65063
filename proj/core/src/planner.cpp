#include "lvqc/planner.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "lvqc/errors.hpp"

namespace lvqc {

namespace {

struct ResolvedScales {
  double v = 0.0;
  double xi = 0.0;
};

ResolvedScales resolve_scales(const LRBoundModel& model, const LocalHamiltonian::Metadata& meta) {
  ResolvedScales out;
  out.v = model.v > 0.0 ? model.v : 2.0 * meta.g * meta.k * meta.d_H;
  out.xi = model.xi > 0.0 ? model.xi : static_cast<double>(meta.d_H);
  if (!(out.v > 0.0)) {
    throw std::invalid_argument("epsilon_lr: LR velocity must be positive (set v or metadata)");
  }
  if (model.variant != LRBoundModel::Variant::LongRange && !(out.xi > 0.0)) {
    throw std::invalid_argument("epsilon_lr: decay length must be positive (set xi or d_H)");
  }
  return out;
}

double resolve_sigma(const LRBoundModel& model) {
  const double lo = (model.D + 1.0) / (model.alpha + 1.0);
  const double sigma = model.sigma.value_or(0.5 * (lo + 1.0));
  if (!(sigma > lo && sigma < 1.0)) {
    throw std::domain_error("epsilon_lr: sigma = " + std::to_string(sigma) +
                            " outside ((D+1)/(alpha+1), 1) = (" + std::to_string(lo) + ", 1)");
  }
  return sigma;
}

// Closed form of C_lr * int_{l0+vt}^inf r^{D-1} e^{-(r-vt)/xi} dr. Substituting
// u = r - (l0+vt) and expanding the binomial gives
//   e^{-l0/xi} * sum_{k=0}^{D-1} (D-1)!/(D-1-k)! * (l0+vt)^{D-1-k} * xi^{k+1}.
double finite_range_tail(double c, double l0, double a, double xi, int D) {
  double coef = 1.0;  // (D-1)! / (D-1-k)!
  double sum = 0.0;
  for (int k = 0; k <= D - 1; ++k) {
    sum += coef * std::pow(a, D - 1 - k) * std::pow(xi, k + 1);
    coef *= D - 1 - k;
  }
  return c * std::exp(-l0 / xi) * sum;
}

}  // namespace

double epsilon_lr(const LRBoundModel& model, double l0, double r_H, double tau,
                  const LocalHamiltonian::Metadata& meta) {
  if (model.D < 1) throw std::invalid_argument("epsilon_lr: dimension D must be >= 1");
  if (!(l0 > 0.0)) throw std::invalid_argument("epsilon_lr: l0 must be positive");
  if (!(tau >= 0.0)) throw std::invalid_argument("epsilon_lr: tau must be nonnegative");
  const ResolvedScales scales = resolve_scales(model, meta);
  const double a = l0 + scales.v * tau;

  switch (model.variant) {
    case LRBoundModel::Variant::FiniteRange:
      return finite_range_tail(model.C_lr, l0, a, scales.xi, model.D);
    case LRBoundModel::Variant::ShortRange: {
      if (!(r_H > 0.0)) throw std::invalid_argument("epsilon_lr: short range needs r_H > 0");
      if (!(model.zeta > 0.0)) throw std::invalid_argument("epsilon_lr: zeta must be positive");
      const double tail = model.h_strength * std::pow(l0 + r_H + scales.v * tau, model.D) *
                          std::pow(r_H, model.D - 1) * std::exp(-r_H / model.zeta);
      return finite_range_tail(model.C_lr, l0, a, scales.xi, model.D) + tail;
    }
    case LRBoundModel::Variant::LongRange: {
      if (!(model.alpha > model.D)) {
        throw ConstraintError("epsilon_lr: long-range bound needs alpha > D (alpha = " +
                              std::to_string(model.alpha) + ", D = " + std::to_string(model.D) +
                              ")");
      }
      if (!(r_H > 0.0)) throw std::invalid_argument("epsilon_lr: long range needs r_H > 0");
      const double sigma = resolve_sigma(model);
      const double t1 = model.C9 * model.f_sigma_vtau *
                        std::exp(scales.v * tau - std::pow(a, 1.0 - sigma)) *
                        std::pow(a, model.D + 1.0 - sigma);
      const double t2 = model.C10 * std::pow(a, model.D - sigma * model.alpha);
      const double t3 = model.C11 * model.h_strength *
                        std::pow(l0 + r_H + scales.v * tau, model.D) /
                        std::pow(r_H, model.alpha);
      return t1 + t2 + t3;
    }
  }
  throw std::logic_error("epsilon_lr: unknown variant");
}

namespace {

struct PlanGeometry {
  int Lp = 0;
  double d_prime = 0.0;
  int Ltilde = 0;
};

PlanGeometry plan_geometry(const LRBoundModel& model, int l0, int r_H, double v, double tau,
                           const LocalHamiltonian::Metadata& meta, int d) {
  PlanGeometry g;
  const double reach = model.variant == LRBoundModel::Variant::FiniteRange
                           ? l0 + meta.d_H + v * tau
                           : l0 + r_H + v * tau;
  g.Lp = 2 * static_cast<int>(std::ceil(reach - 1e-12));
  g.d_prime = d - g.Lp / 4.0;
  // L' + 2d' + 1 = L'/2 + 2d + 1, an integer since L' is even.
  const int x = g.Lp / 2 + 2 * d + 1;
  g.Ltilde = (x % 2 == 0) ? x + 2 : x + 1;
  return g;
}

}  // namespace

CompilationPlan plan_size(const LRBoundModel& model, double tau, int d,
                          const LocalHamiltonian::Metadata& meta, const PlanTarget& target,
                          double tolerance) {
  if (d < 1) throw std::invalid_argument("plan_size: depth must be >= 1");
  if (!(tolerance > 0.0 && tolerance <= 1.0)) {
    throw std::invalid_argument("plan_size: tolerance must lie in (0, 1]");
  }
  const bool global = target.kind == PlanTarget::Kind::Global;
  if (global && target.L < 2) {
    throw std::invalid_argument("plan_size: global target requires the lattice size L");
  }
  if (global && model.variant == LRBoundModel::Variant::LongRange &&
      !(model.alpha > 2.0 * model.D)) {
    throw ConstraintError("plan_size: global long-range planning needs alpha > 2D (alpha = " +
                          std::to_string(model.alpha) + ", D = " + std::to_string(model.D) + ")");
  }
  const ResolvedScales scales = resolve_scales(model, meta);
  const double scale = global ? std::pow(static_cast<double>(target.L), model.D) : 1.0;
  const long long size_limit = target.L;  // 0 = no ceiling
  const bool vacuous = tolerance >= 1.0;
  const bool needs_r = model.variant != LRBoundModel::Variant::FiniteRange;

  auto make_plan = [&](int l0, int r_H, double eps, const PlanGeometry& g) {
    CompilationPlan plan;
    plan.l0 = l0;
    plan.r_H = needs_r ? r_H : 0;
    plan.Lp = g.Lp;
    plan.d = d;
    plan.d_prime = g.d_prime;
    plan.Ltilde = g.Ltilde;
    plan.epsilon_lr = eps;
    plan.target = target;
    return plan;
  };

  double best_scaled = std::numeric_limits<double>::infinity();
  bool geometry_ok_somewhere = false;

  // The search budget s = l0 (+ r_H) fixes the window geometry; the depth
  // constraint 4d >= L' and the lattice ceiling both cap s, so the scan
  // terminates without an artificial bound.
  for (int s = needs_r ? 2 : 1;; ++s) {
    const PlanGeometry g =
        plan_geometry(model, needs_r ? s - 1 : s, needs_r ? 1 : 0, scales.v, tau, meta, d);
    const bool depth_ok = g.d_prime >= 0.0;
    const bool size_ok = size_limit <= 0 || g.Ltilde <= size_limit;
    if (!depth_ok || !size_ok) {
      std::string reason;
      if (!geometry_ok_somewhere) {
        reason = "plan_size: no window satisfies the geometry constraints (smallest L' = " +
                 std::to_string(g.Lp) + " already " +
                 (!depth_ok ? "exceeds 4d = " + std::to_string(4 * d)
                            : "forces Ltilde past L = " + std::to_string(size_limit)) +
                 ")";
        // Report the epsilon the smallest geometry would give, for context.
        best_scaled = scale * epsilon_lr(model, needs_r ? s - 1 : s, needs_r ? 1 : 0, tau, meta);
      } else {
        reason = "plan_size: tolerance " + std::to_string(tolerance) +
                 " unreachable before the window " +
                 (!depth_ok ? "outgrows the depth (4d >= L' fails at L' = " + std::to_string(g.Lp)
                            : "exceeds the lattice (Ltilde = " + std::to_string(g.Ltilde) +
                                  " > L = " + std::to_string(size_limit)) +
                 "); best achievable " + (global ? "L^D * epsilon = " : "epsilon = ") +
                 std::to_string(best_scaled);
      }
      throw PlannerInfeasibleError(reason, best_scaled);
    }
    geometry_ok_somewhere = true;

    // Best epsilon over the splits of s (finite range has a single candidate).
    double eps_best = std::numeric_limits<double>::infinity();
    int l0_best = 0;
    int r_best = 0;
    if (needs_r) {
      for (int r = 1; r <= s - 1; ++r) {
        const double eps = epsilon_lr(model, s - r, r, tau, meta);
        if (eps < eps_best) {
          eps_best = eps;
          l0_best = s - r;
          r_best = r;
        }
      }
    } else {
      eps_best = epsilon_lr(model, s, 0, tau, meta);
      l0_best = s;
    }
    best_scaled = std::min(best_scaled, scale * eps_best);
    if (vacuous || scale * eps_best <= tolerance) {
      return make_plan(l0_best, r_best, eps_best, g);
    }
  }
}

}  // namespace lvqc
