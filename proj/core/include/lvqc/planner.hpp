#pragma once

#include <optional>

#include "lvqc/lattice.hpp"

namespace lvqc {

// Lieb-Robinson error model for the three interaction classes. All prefactors
// default to 1: the bounds' constants are not fixed by theory, so every
// epsilon produced from this model is a tuning estimate, not a certificate
// (plans carry a heuristic_constants flag to that effect).
struct LRBoundModel {
  enum class Variant { FiniteRange, ShortRange, LongRange };

  Variant variant = Variant::FiniteRange;
  int D = 1;  // spatial dimension of the lattice

  double C_lr = 1.0;  // prefactor of the light-cone tail integral
  double v = 0.0;     // LR velocity; 0 = heuristic 2 g k d_H from the Hamiltonian
  double xi = 0.0;    // decay length; 0 = heuristic d_H

  // Short/long range: interaction-tail strength and (short) decay length.
  double h_strength = 1.0;
  double zeta = 1.0;

  // Long range: power-law exponent and the free exponent sigma in
  // ((D+1)/(alpha+1), 1); unset sigma = midpoint of that interval.
  double alpha = 0.0;
  std::optional<double> sigma;
  double f_sigma_vtau = 1.0;
  double C9 = 1.0;
  double C10 = 1.0;
  double C11 = 1.0;
};

struct PlanTarget {
  enum class Kind { Local, Global };
  Kind kind = Kind::Local;
  // Lattice size. Required for Global (the bound is multiplied by L^D);
  // optional for Local (0 = unknown, disables the feasibility ceiling).
  long long L = 0;
};

struct CompilationPlan {
  int l0 = 0;
  int r_H = 0;  // 0 for the finite-range variant
  int Lp = 0;   // L' = 2*ceil(l0 + d_H + v tau), or 2*ceil(l0 + r_H + v tau)
  int d = 0;
  double d_prime = 0.0;  // d - L'/4
  int Ltilde = 0;        // smallest even integer > L' + 2 d' + 1
  double epsilon_lr = 0.0;
  PlanTarget target;
  // epsilon_lr is evaluated with configurable O(1) constants, not certified.
  bool heuristic_constants = true;
};

// Evaluates the epsilon_LR error functional at cutoff lengths (l0, r_H).
// finite_range:  C_lr * int_{l0+vt}^inf r^{D-1} e^{-(r-vt)/xi} dr (closed form),
// short_range:   + h (l0+r_H+vt)^D r_H^{D-1} e^{-r_H/zeta},
// long_range:    C9 f_sigma e^{vt-(l0+vt)^{1-s}} (l0+vt)^{D+1-s}
//                + C10 (l0+vt)^{D-s*alpha} + C11 h (l0+r_H+vt)^D / r_H^alpha.
// r_H is ignored by the finite-range variant.
double epsilon_lr(const LRBoundModel& model, double l0, double r_H, double tau,
                  const LocalHamiltonian::Metadata& meta);

// Picks the smallest integer cutoffs with epsilon_lr <= tolerance (Local) or
// L^D * epsilon_lr <= tolerance (Global), then applies the even-rounding rule
// to produce the compilation size. Throws PlannerInfeasibleError (carrying the
// best achievable epsilon) when the depth cannot support the required window
// or the window would exceed the lattice.
CompilationPlan plan_size(const LRBoundModel& model, double tau, int d,
                          const LocalHamiltonian::Metadata& meta, const PlanTarget& target,
                          double tolerance);

}  // namespace lvqc
