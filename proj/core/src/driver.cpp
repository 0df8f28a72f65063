#include "lvqc/driver.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>
#include <string>

#include "lvqc/errors.hpp"
#include "lvqc/mps.hpp"
#include "lvqc/statevector.hpp"

namespace lvqc {

LocalHamiltonian instantiate(const HamiltonianSpec& spec, int size) {
  if (size < 2) throw std::invalid_argument("instantiate: lattice size must be >= 2");
  if (spec.custom) {
    spec.custom->validate();
    if (spec.custom->lattice.size == size) return *spec.custom;
    return tile_translation_invariant(*spec.custom, size);
  }
  if (spec.family == "heisenberg_afm") return build_heisenberg_afm(size, spec.boundary);
  throw std::invalid_argument("instantiate: unknown Hamiltonian family '" + spec.family + "'");
}

namespace {

DenseUnitary dense_reference(const LocalHamiltonian& h, double tau, ReferenceKind reference,
                             int reference_depth) {
  if (reference == ReferenceKind::Exact) return exact_evolution(h, tau);
  return circuit_to_unitary(trotter_circuit(h, tau, reference_depth));
}

CostReport report_from_per_site(std::vector<double> per_site, double c_hst, int L,
                                CostBackend backend) {
  CostReport report;
  report.backend = backend;
  report.c_hst = c_hst;
  report.c_lhst_per_site = std::move(per_site);
  double acc = 0.0;
  for (double c : report.c_lhst_per_site) acc += c;
  report.c_lhst = acc / static_cast<double>(report.c_lhst_per_site.size());
  const auto bounds = fidelity_bounds(report.c_hst, report.c_lhst, L);
  report.fidelity_lower_bound_hst = bounds.first;
  report.fidelity_lower_bound_lhst = bounds.second;
  return report;
}

}  // namespace

std::vector<CostReport> evaluate_circuits(const LocalHamiltonian& h,
                                          const std::vector<BrickworkCircuit>& circuits,
                                          double tau, const EvaluationOptions& opts) {
  h.validate();
  const int L = h.lattice.size;
  std::vector<CostReport> reports;
  reports.reserve(circuits.size());
  const bool dense = opts.backend == BackendKind::Dense && L <= opts.dense_limit;
  if (dense) {
    const DenseUnitary u = dense_reference(h, tau, opts.reference, opts.reference_depth);
    for (const auto& v : circuits) reports.push_back(dense_cost_report(u, circuit_to_unitary(v)));
  } else {
    const BellCostEvaluator ev(h, tau, opts.reference_depth, opts.chi_max, opts.svd_cutoff);
    for (const auto& v : circuits) {
      reports.push_back(report_from_per_site(ev.cost_lhst_per_site(v), ev.cost_hst(v), L,
                                             CostBackend::Mps));
    }
  }
  return reports;
}

namespace {

int default_generic_window(int Ltilde, int depth) {
  // Largest even diameter satisfying Ltilde >= Lp/2 + 2d + 1.
  const int cap = 2 * (Ltilde - 2 * depth - 1);
  const int Lp = cap - (cap % 2 != 0 ? 1 : 0);
  if (Lp < 2) {
    throw ConstraintError(
        "run_lvqc: no propagator window fits (need Ltilde >= 2*depth + 2, got Ltilde = " +
        std::to_string(Ltilde) + ", depth = " + std::to_string(depth) + ")");
  }
  return Lp;
}

}  // namespace

RunReport run_lvqc(const CompileConfig& cfg) {
  if (cfg.depth < 1) throw std::invalid_argument("run_lvqc: depth must be >= 1");
  if (!(cfg.tau >= 0.0)) throw std::invalid_argument("run_lvqc: tau must be nonnegative");
  if (!(cfg.alpha >= 0.0 && cfg.alpha <= 1.0)) {
    throw std::invalid_argument("run_lvqc: alpha must lie in [0,1]");
  }

  RunReport report;
  report.depth = cfg.depth;
  report.tau = cfg.tau;
  report.alpha = cfg.alpha;

  // Resolve the compilation size.
  if (cfg.Ltilde > 0) {
    report.Ltilde = cfg.Ltilde;
    if (cfg.plan) report.plan = cfg.plan;
  } else if (cfg.plan) {
    report.plan = cfg.plan;
    report.Ltilde = cfg.plan->Ltilde;
  } else if (cfg.lr_model) {
    const LocalHamiltonian h_base = instantiate(cfg.hamiltonian, cfg.hamiltonian.size);
    PlanTarget target;
    target.kind = cfg.plan_target;
    target.L = cfg.hamiltonian.size;
    report.plan =
        plan_size(*cfg.lr_model, cfg.tau, cfg.depth, h_base.metadata(), target, cfg.plan_tolerance);
    report.Ltilde = report.plan->Ltilde;
  } else {
    throw std::invalid_argument("run_lvqc: provide Ltilde, a plan, or an LR model to plan with");
  }
  const int Lt = report.Ltilde;
  if (Lt < 2) throw std::invalid_argument("run_lvqc: compilation size must be >= 2");

  std::vector<int> sizes = cfg.evaluation_sizes;
  if (sizes.empty()) sizes.push_back(cfg.hamiltonian.size);
  for (int L : sizes) {
    if (L < Lt) {
      throw ConstraintError("run_lvqc: evaluation size " + std::to_string(L) +
                            " smaller than the compilation size " + std::to_string(Lt));
    }
  }

  // Optimization cost at the compilation size.
  const LocalHamiltonian h_sub = instantiate(cfg.hamiltonian, Lt);
  std::function<double(const ParameterVector&)> objective;
  std::unique_ptr<DenseBellEvaluator> dense_eval;
  std::unique_ptr<BellCostEvaluator> mps_eval;
  if (cfg.protocol == Protocol::TranslationInvariant) {
    // Periodic chains collapse the site average exactly; open chains use the
    // same central-site objective as the bulk approximation.
    if (Lt % 2 != 0) throw std::invalid_argument("run_lvqc: Ltilde must be even");
    const Boundary boundary = cfg.hamiltonian.boundary;
    const int center = Lt / 2;
    const bool dense = cfg.backend == BackendKind::Dense && Lt <= cfg.dense_limit;
    if (dense) {
      dense_eval = std::make_unique<DenseBellEvaluator>(
          dense_reference(h_sub, cfg.tau, cfg.reference, cfg.reference_depth));
      objective = [&cfg, &dense_eval, Lt, center, boundary](const ParameterVector& theta) {
        const BrickworkCircuit v = build_brickwork(Lt, cfg.depth, theta, boundary);
        return dense_eval->cost_alpha_single_site(v, cfg.alpha, center);
      };
    } else {
      mps_eval = std::make_unique<BellCostEvaluator>(h_sub, cfg.tau, cfg.reference_depth,
                                                     cfg.chi_max, cfg.svd_cutoff);
      objective = [&cfg, &mps_eval, Lt, center, boundary](const ParameterVector& theta) {
        const BrickworkCircuit v = build_brickwork(Lt, cfg.depth, theta, boundary);
        return mps_eval->cost_alpha_single_site(v, cfg.alpha, center);
      };
    }
  } else {
    if (cfg.backend == BackendKind::Mps) {
      throw std::invalid_argument("run_lvqc: the windowed protocol supports the dense backend "
                                  "only");
    }
    const int Lp = cfg.Lp > 0 ? cfg.Lp : default_generic_window(Lt, cfg.depth);
    objective = [&cfg, h_sub, Lp, Lt](const ParameterVector& theta) {
      return subsystem_cost_generic(h_sub, theta, cfg.tau, Lp, Lt, cfg.depth);
    };
  }

  const ParameterVector theta0 = trotter_params(cfg.tau, cfg.depth);
  report.theta_baseline = theta0;
  report.theta_opt = minimize(objective, theta0, cfg.optimizer, &report.trace);
  report.initial_cost = report.trace.initial_cost;
  report.final_cost = report.trace.final_cost;

  // Score optimized vs baseline circuits at every evaluation size.
  for (int L : sizes) {
    const LocalHamiltonian h_L = instantiate(cfg.hamiltonian, L);
    const BrickworkCircuit v_opt =
        build_brickwork(L, cfg.depth, extend_parameters(report.theta_opt, Lt, L),
                        cfg.hamiltonian.boundary);
    const BrickworkCircuit v_base =
        build_brickwork(L, cfg.depth, extend_parameters(report.theta_baseline, Lt, L),
                        cfg.hamiltonian.boundary);
    SizeEvaluation eval;
    eval.L = L;
    EvaluationOptions eopts;
    eopts.backend = cfg.backend;
    eopts.chi_max = cfg.chi_max;
    eopts.svd_cutoff = cfg.svd_cutoff;
    eopts.dense_limit = cfg.dense_limit;
    eopts.reference = cfg.reference;
    eopts.reference_depth = cfg.reference_depth;
    auto reports = evaluate_circuits(h_L, {v_opt, v_base}, cfg.tau, eopts);
    eval.optimized = std::move(reports[0]);
    eval.baseline = std::move(reports[1]);
    EpsilonBudget budget;
    budget.epsilon_lhst = report.final_cost;
    budget.epsilon_lr = report.plan ? report.plan->epsilon_lr : 0.0;
    budget.epsilon_hst = L * (budget.epsilon_lhst + budget.epsilon_lr);
    eval.optimized.epsilon_budget = budget;
    report.evaluations.push_back(std::move(eval));
  }
  return report;
}

namespace {

std::uint64_t bits_to_mask(const std::vector<int>& bits) {
  std::uint64_t mask = 0;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i]) mask |= std::uint64_t{1} << i;
  }
  return mask;
}

double dense_z_expectation(const StateVector& psi, int site) {
  const std::uint64_t m = std::uint64_t{1} << (site - 1);
  double acc = 0.0;
  for (Eigen::Index i = 0; i < psi.amps.size(); ++i) {
    const double p = std::norm(psi.amps[i]);
    acc += (static_cast<std::uint64_t>(i) & m) ? -p : p;
  }
  return acc;
}

}  // namespace

DynamicsResult run_stroboscopic(const HamiltonianSpec& spec, const ParameterVector& theta_opt,
                                const DynamicsConfig& cfg) {
  if (cfg.L < 2 || cfg.L % 2 != 0) {
    throw std::invalid_argument("run_stroboscopic: L must be even and >= 2");
  }
  if (cfg.steps < 0) throw std::invalid_argument("run_stroboscopic: steps must be >= 0");
  if (theta_opt.mode != ParamMode::Shared) {
    throw ConstraintError("run_stroboscopic: shared-mode parameters required");
  }
  const int L = cfg.L;
  const int site = L / 2;
  const std::vector<int> bits = cfg.initial == InitialState::LocalExcitation
                                    ? local_excitation_bits(L, cfg.Ltilde)
                                    : domain_wall_bits(L, cfg.Ltilde);
  const LocalHamiltonian h = instantiate(spec, L);
  const ParameterVector theta = extend_parameters(theta_opt, std::min(cfg.Ltilde, L), L);
  const BrickworkCircuit v = build_brickwork(L, theta.depth, theta, cfg.boundary);

  DynamicsResult result;
  auto record = [&](double zc, double zr) {
    result.times.push_back(cfg.tau * static_cast<double>(result.times.size()));
    result.z_circuit.push_back(zc);
    result.z_reference.push_back(zr);
  };

  if (cfg.backend == BackendKind::Dense) {
    if (L > 24) {
      throw CapacityError("run_stroboscopic: dense backend limited to 24 sites, got " +
                          std::to_string(L));
    }
    StateVector psi_c = StateVector::basis_state(L, bits_to_mask(bits));
    StateVector psi_r = psi_c;
    const ExactPropagator propagator(h);
    record(dense_z_expectation(psi_c, site), dense_z_expectation(psi_r, site));
    for (int n = 0; n < cfg.steps; ++n) {
      apply_circuit_inplace(psi_c, v);
      psi_r = propagator.evolve(psi_r, cfg.tau);
      record(dense_z_expectation(psi_c, site), dense_z_expectation(psi_r, site));
    }
  } else {
    const MpsLimits limits{cfg.chi_max, cfg.svd_cutoff};
    MatrixProductState psi_c = product_state(bits, limits);
    MatrixProductState psi_r = product_state(bits, limits);
    record(local_expectation(psi_c, 'Z', site), local_expectation(psi_r, 'Z', site));
    for (int n = 0; n < cfg.steps; ++n) {
      apply_circuit_mps(psi_c, v);
      psi_r = tebd_evolve(psi_r, h, cfg.tau, cfg.reference_depth);
      record(local_expectation(psi_c, 'Z', site), local_expectation(psi_r, 'Z', site));
    }
  }

  double acc = 0.0;
  for (std::size_t n = 1; n < result.times.size(); ++n) {
    const double diff = result.z_circuit[n] - result.z_reference[n];
    acc += diff * diff;
  }
  result.mse = cfg.steps > 0 ? acc / cfg.steps : 0.0;
  return result;
}

}  // namespace lvqc
