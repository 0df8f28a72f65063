#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lvqc/circuit.hpp"
#include "lvqc/cost.hpp"
#include "lvqc/lattice.hpp"
#include "lvqc/optimizer.hpp"
#include "lvqc/planner.hpp"

namespace lvqc {

// TranslationInvariant: single-site local cost at the center of the
// compilation register (exact collapse of the site average under periodic
// boundaries, the bulk approximation on open chains). Windowed: per-site
// restricted propagators against restricted circuits (dense backend only),
// for Hamiltonians with no translation structure.
enum class Protocol { TranslationInvariant, Windowed };
enum class BackendKind { Dense, Mps };
enum class ReferenceKind { Exact, Trotter };
enum class InitialState { LocalExcitation, DomainWall };

// Named Hamiltonian family, so the driver can instantiate the model at every
// evaluation size. A custom instance can be supplied instead; retiling it to
// other sizes requires it to be periodic and translation-invariant.
struct HamiltonianSpec {
  std::string family = "heisenberg_afm";
  Boundary boundary = Boundary::Periodic;
  int size = 0;  // base lattice size L
  std::optional<LocalHamiltonian> custom;
};

LocalHamiltonian instantiate(const HamiltonianSpec& spec, int size);

struct CompileConfig {
  HamiltonianSpec hamiltonian;
  double tau = 0.5;
  int depth = 3;
  Protocol protocol = Protocol::TranslationInvariant;
  // Weight of the global cost in the optimization target:
  // alpha*C_HST + (1-alpha)*C_LHST(local). 0 = pure local cost.
  double alpha = 0.0;

  // Compilation size resolution: explicit Ltilde wins, then an explicit plan,
  // then the LR planner (lr_model with plan_tolerance / plan_target).
  int Ltilde = 0;
  std::optional<CompilationPlan> plan;
  std::optional<LRBoundModel> lr_model;
  double plan_tolerance = 1e-2;
  PlanTarget::Kind plan_target = PlanTarget::Kind::Local;

  // Propagator window diameter; required by the Generic protocol.
  int Lp = 0;

  // Dense evaluates exactly whenever the register fits (dense_limit sites)
  // and falls back to the MPS evaluator above it; Mps forces the MPS path.
  BackendKind backend = BackendKind::Dense;
  int chi_max = 30;
  double svd_cutoff = 1e-10;
  int dense_limit = 12;
  ReferenceKind reference = ReferenceKind::Exact;
  int reference_depth = 100;  // Trotter depth of non-exact references

  OptimizerConfig optimizer;
  std::vector<int> evaluation_sizes;  // empty = just the base size
};

struct SizeEvaluation {
  int L = 0;
  CostReport optimized;
  CostReport baseline;  // same-depth Trotter parameters
};

struct EvaluationOptions {
  BackendKind backend = BackendKind::Dense;
  int chi_max = 30;
  double svd_cutoff = 1e-10;
  int dense_limit = 12;
  ReferenceKind reference = ReferenceKind::Exact;
  int reference_depth = 100;
};

// Scores circuits against the reference propagator of h (full per-site local
// costs, the global cost, and the fidelity bounds). Dense evaluation when the
// backend is Dense and the register fits dense_limit, MPS otherwise; the
// reference is constructed once and shared across the circuits.
std::vector<CostReport> evaluate_circuits(const LocalHamiltonian& h,
                                          const std::vector<BrickworkCircuit>& circuits,
                                          double tau, const EvaluationOptions& opts = {});

struct RunReport {
  std::optional<CompilationPlan> plan;
  int Ltilde = 0;
  int depth = 0;
  double tau = 0.0;
  double alpha = 0.0;
  double initial_cost = 0.0;  // optimization cost at the Trotter start
  double final_cost = 0.0;
  ParameterVector theta_opt;
  ParameterVector theta_baseline;
  OptimizationTrace trace;
  std::vector<SizeEvaluation> evaluations;
};

// End-to-end compilation: resolve the compilation size, optimize the local
// cost from the Trotter initialization, extend the parameters, and score
// optimized vs baseline circuits at every evaluation size.
RunReport run_lvqc(const CompileConfig& cfg);

struct DynamicsConfig {
  int L = 0;
  int Ltilde = 0;  // excitation separation of the initial state
  InitialState initial = InitialState::LocalExcitation;
  int steps = 10;
  double tau = 0.5;
  BackendKind backend = BackendKind::Dense;
  int chi_max = 60;
  double svd_cutoff = 1e-10;
  int reference_depth = 100;  // Trotter substeps per tau of the MPS reference
  Boundary boundary = Boundary::Periodic;
};

struct DynamicsResult {
  std::vector<double> times;        // n*tau for n = 0..steps
  std::vector<double> z_circuit;    // <Z_{L/2}> after n circuit applications
  std::vector<double> z_reference;  // exact sector evolution, or deep Trotter
  double mse = 0.0;                 // mean over n = 1..steps
};

// Stroboscopic quench study: repeatedly applies the compiled circuit to the
// chosen initial state and compares <Z_{L/2}> against a reference evolution
// (exact on the dense backend, depth-reference_depth Trotter on MPS).
DynamicsResult run_stroboscopic(const HamiltonianSpec& spec, const ParameterVector& theta_opt,
                                const DynamicsConfig& cfg);

}  // namespace lvqc
