#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "lvqc/circuit.hpp"
#include "lvqc/driver.hpp"
#include "lvqc/errors.hpp"
#include "lvqc/lattice.hpp"
#include "lvqc/mps.hpp"
#include "lvqc/statevector.hpp"

using namespace lvqc;

namespace {

HamiltonianSpec heisenberg_spec(int size, Boundary boundary) {
  HamiltonianSpec spec;
  spec.family = "heisenberg_afm";
  spec.boundary = boundary;
  spec.size = size;
  return spec;
}

ParameterVector random_shared(int depth, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> dist(-0.7, 0.7);
  ParameterVector theta;
  theta.mode = ParamMode::Shared;
  theta.depth = depth;
  theta.angles.resize(static_cast<std::size_t>(10 * depth));
  for (double& a : theta.angles) a = dist(rng);
  return theta;
}

std::uint64_t mask_of(const std::vector<int>& bits) {
  std::uint64_t mask = 0;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i]) mask |= std::uint64_t{1} << i;
  }
  return mask;
}

double z_of(const Eigen::VectorXcd& amps, int site) {
  const std::uint64_t m = std::uint64_t{1} << (site - 1);
  double acc = 0.0;
  for (Eigen::Index i = 0; i < amps.size(); ++i) {
    const double p = std::norm(amps[i]);
    acc += (static_cast<std::uint64_t>(i) & m) ? -p : p;
  }
  return acc;
}

}  // namespace

TEST_CASE("instantiate builds families, retiles custom models, and rejects junk") {
  const HamiltonianSpec spec = heisenberg_spec(8, Boundary::Periodic);
  const LocalHamiltonian h8 = instantiate(spec, 8);
  CHECK(h8.lattice.size == 8);
  CHECK(h8.lattice.boundary == Boundary::Periodic);
  CHECK(h8.terms.size() == 24);

  // A custom model at the requested size is passed through untouched; at any
  // other size it is retiled, which must reproduce the family construction.
  HamiltonianSpec custom;
  custom.custom = build_heisenberg_afm(4, Boundary::Periodic);
  const LocalHamiltonian same = instantiate(custom, 4);
  CHECK(same.terms.size() == custom.custom->terms.size());
  const Eigen::MatrixXcd tiled = hamiltonian_matrix(instantiate(custom, 6));
  const Eigen::MatrixXcd direct = hamiltonian_matrix(build_heisenberg_afm(6, Boundary::Periodic));
  CHECK((tiled - direct).norm() < 1e-12);

  HamiltonianSpec unknown = heisenberg_spec(8, Boundary::Periodic);
  unknown.family = "xy_chain";
  CHECK_THROWS_AS(instantiate(unknown, 8), std::invalid_argument);
  CHECK_THROWS_AS(instantiate(spec, 1), std::invalid_argument);

  HamiltonianSpec open_custom;
  open_custom.custom = build_heisenberg_afm(4, Boundary::Open);
  CHECK_THROWS(instantiate(open_custom, 6));  // open chains cannot be retiled
}

TEST_CASE("evaluate_circuits agrees across backends on a shared Trotter reference") {
  const LocalHamiltonian h = build_heisenberg_afm(8, Boundary::Periodic);
  const double tau = 0.5;
  const std::vector<BrickworkCircuit> circuits = {
      trotter_circuit(h, tau, 2), build_brickwork(8, 2, random_shared(2, 21), Boundary::Periodic)};

  EvaluationOptions dense;
  dense.reference = ReferenceKind::Trotter;
  dense.reference_depth = 100;
  EvaluationOptions mps;
  mps.backend = BackendKind::Mps;
  mps.chi_max = 0;  // unbounded
  mps.svd_cutoff = 1e-14;
  mps.reference_depth = 100;

  const auto rd = evaluate_circuits(h, circuits, tau, dense);
  const auto rm = evaluate_circuits(h, circuits, tau, mps);
  REQUIRE(rd.size() == 2);
  REQUIRE(rm.size() == 2);
  for (std::size_t k = 0; k < 2; ++k) {
    CHECK(rd[k].backend == CostBackend::Dense);
    CHECK(rm[k].backend == CostBackend::Mps);
    CHECK(std::abs(rd[k].c_hst - rm[k].c_hst) < 1e-7);
    CHECK(std::abs(rd[k].c_lhst - rm[k].c_lhst) < 1e-7);
    REQUIRE(rd[k].c_lhst_per_site.size() == 8);
    REQUIRE(rm[k].c_lhst_per_site.size() == 8);
    for (int j = 0; j < 8; ++j) {
      CHECK(std::abs(rd[k].c_lhst_per_site[j] - rm[k].c_lhst_per_site[j]) < 1e-7);
    }
    // Internal consistency of each report.
    double acc = 0.0;
    for (double c : rm[k].c_lhst_per_site) acc += c;
    CHECK(rm[k].c_lhst == doctest::Approx(acc / 8.0).epsilon(1e-12));
    const auto bounds = fidelity_bounds(rd[k].c_hst, rd[k].c_lhst, 8);
    CHECK(rd[k].fidelity_lower_bound_hst == doctest::Approx(bounds.first).epsilon(1e-12));
    CHECK(rd[k].fidelity_lower_bound_lhst == doctest::Approx(bounds.second).epsilon(1e-12));
  }

  // A circuit scored against the Trotter reference of its own depth is exact.
  EvaluationOptions self;
  self.reference = ReferenceKind::Trotter;
  self.reference_depth = 2;
  const auto rs = evaluate_circuits(h, {trotter_circuit(h, tau, 2)}, tau, self);
  CHECK(rs[0].c_hst < 1e-12);
  CHECK(rs[0].c_lhst < 1e-12);
  CHECK(rs[0].fidelity_lower_bound_hst > 1.0 - 1e-10);
}

TEST_CASE("run_lvqc validates its configuration") {
  CompileConfig cfg;
  cfg.hamiltonian = heisenberg_spec(8, Boundary::Periodic);
  cfg.Ltilde = 6;
  cfg.depth = 0;
  CHECK_THROWS_AS(run_lvqc(cfg), std::invalid_argument);
  cfg.depth = 2;
  cfg.tau = -0.5;
  CHECK_THROWS_AS(run_lvqc(cfg), std::invalid_argument);
  cfg.tau = 0.5;
  cfg.alpha = 1.5;
  CHECK_THROWS_AS(run_lvqc(cfg), std::invalid_argument);
  cfg.alpha = 0.0;

  CompileConfig no_size = cfg;
  no_size.Ltilde = 0;
  CHECK_THROWS_AS(run_lvqc(no_size), std::invalid_argument);

  CompileConfig odd = cfg;
  odd.Ltilde = 7;
  CHECK_THROWS_AS(run_lvqc(odd), std::invalid_argument);

  CompileConfig tiny = cfg;
  tiny.Ltilde = 1;
  CHECK_THROWS_AS(run_lvqc(tiny), std::invalid_argument);

  CompileConfig shrunk = cfg;
  shrunk.evaluation_sizes = {6, 4};
  CHECK_THROWS_AS(run_lvqc(shrunk), ConstraintError);

  CompileConfig windowed_mps = cfg;
  windowed_mps.protocol = Protocol::Windowed;
  windowed_mps.backend = BackendKind::Mps;
  CHECK_THROWS_AS(run_lvqc(windowed_mps), std::invalid_argument);

  // No window diameter can satisfy the locality constraints at this depth.
  CompileConfig no_window = cfg;
  no_window.protocol = Protocol::Windowed;
  no_window.depth = 3;
  no_window.evaluation_sizes = {8};
  CHECK_THROWS_AS(run_lvqc(no_window), ConstraintError);
}

TEST_CASE("run_lvqc resolves the compilation size by precedence") {
  CompileConfig base;
  base.hamiltonian = heisenberg_spec(8, Boundary::Periodic);
  base.tau = 0.25;
  base.depth = 2;
  base.optimizer.max_iterations = 3;
  base.evaluation_sizes = {8};

  // Explicit Ltilde wins; a supplied plan is still carried in the report.
  CompileConfig explicit_cfg = base;
  explicit_cfg.Ltilde = 6;
  CompilationPlan plan;
  plan.Ltilde = 8;
  plan.epsilon_lr = 0.125;
  explicit_cfg.plan = plan;
  const RunReport r1 = run_lvqc(explicit_cfg);
  CHECK(r1.Ltilde == 6);
  REQUIRE(r1.plan.has_value());
  CHECK(r1.plan->Ltilde == 8);

  // Plan next.
  CompileConfig planned = base;
  planned.plan = plan;
  planned.plan->Ltilde = 6;
  const RunReport r2 = run_lvqc(planned);
  CHECK(r2.Ltilde == 6);

  // LR model last: a finite-range model the planner satisfies at l0 = 1, so
  // L' = 2 ceil(1 + d_H + v tau) = 6, d' = 0.5, and Ltilde = 10 (the smallest
  // even size above L' + 2 d' + 1 = 8). The lattice must be large enough to
  // hold that window.
  CompileConfig modeled = base;
  modeled.hamiltonian = heisenberg_spec(10, Boundary::Periodic);
  modeled.evaluation_sizes = {10};
  LRBoundModel model;
  model.variant = LRBoundModel::Variant::FiniteRange;
  model.D = 1;
  model.C_lr = 1.0;
  model.v = 1.0;
  model.xi = 1.0;
  modeled.lr_model = model;
  modeled.plan_tolerance = 0.9;
  const RunReport r3 = run_lvqc(modeled);
  REQUIRE(r3.plan.has_value());
  CHECK(r3.plan->l0 == 1);
  CHECK(r3.plan->Lp == 6);
  CHECK(r3.plan->Ltilde == 10);
  CHECK(r3.Ltilde == 10);
  CHECK(r3.plan->epsilon_lr == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));

  // The epsilon budget of each optimized report is wired from plan + cost.
  REQUIRE(r3.evaluations.size() == 1);
  const auto& opt = r3.evaluations[0].optimized;
  REQUIRE(opt.epsilon_budget.has_value());
  CHECK(opt.epsilon_budget->epsilon_lhst == r3.final_cost);
  CHECK(opt.epsilon_budget->epsilon_lr == r3.plan->epsilon_lr);
  CHECK(opt.epsilon_budget->epsilon_hst ==
        doctest::Approx(10.0 * (r3.final_cost + r3.plan->epsilon_lr)).epsilon(1e-12));
  CHECK_FALSE(r3.evaluations[0].baseline.epsilon_budget.has_value());

  // The baseline is the Trotter initialization, and the trace brackets match.
  const ParameterVector trot = trotter_params(0.25, 2);
  CHECK(r3.theta_baseline.angles == trot.angles);
  CHECK(r3.initial_cost == r3.trace.initial_cost);
  CHECK(r3.final_cost == r3.trace.final_cost);
}

TEST_CASE("run_lvqc improves on the Trotter baseline at every evaluation size") {
  CompileConfig cfg;
  cfg.hamiltonian = heisenberg_spec(8, Boundary::Open);
  cfg.tau = 0.5;
  cfg.depth = 3;
  cfg.Ltilde = 8;
  cfg.chi_max = 30;
  cfg.optimizer.max_iterations = 80;
  cfg.optimizer.grad_tolerance = 1e-7;
  cfg.evaluation_sizes = {8, 12, 16};

  const RunReport report = run_lvqc(cfg);
  CHECK(report.final_cost < 0.5 * report.initial_cost);
  CHECK(report.theta_opt.mode == ParamMode::Shared);
  CHECK(report.theta_opt.depth == 3);
  CHECK(report.theta_opt.angles.size() == 30);

  REQUIRE(report.evaluations.size() == 3);
  for (std::size_t k = 0; k < 3; ++k) {
    const auto& e = report.evaluations[k];
    CHECK(e.L == cfg.evaluation_sizes[k]);
    REQUIRE(e.optimized.c_lhst_per_site.size() == static_cast<std::size_t>(e.L));
    CHECK(e.optimized.c_lhst < e.baseline.c_lhst);
    CHECK(e.optimized.c_hst < e.baseline.c_hst);
    const int center = e.L / 2;
    CHECK(e.optimized.c_lhst_per_site[center - 1] < e.baseline.c_lhst_per_site[center - 1]);
    CHECK(e.optimized.fidelity_lower_bound_hst > e.baseline.fidelity_lower_bound_hst);
    CHECK(e.optimized.fidelity_lower_bound_lhst > e.baseline.fidelity_lower_bound_lhst);
  }
  CHECK(report.evaluations[0].optimized.backend == CostBackend::Dense);
  CHECK(report.evaluations[1].optimized.backend == CostBackend::Dense);
  CHECK(report.evaluations[2].optimized.backend == CostBackend::Mps);
}

TEST_CASE("a zero-time target compiles to zero cost") {
  CompileConfig cfg;
  cfg.hamiltonian = heisenberg_spec(6, Boundary::Periodic);
  cfg.tau = 0.0;
  cfg.depth = 2;
  cfg.Ltilde = 6;
  cfg.evaluation_sizes = {6};
  const RunReport report = run_lvqc(cfg);
  CHECK(report.initial_cost < 1e-8);
  CHECK(report.final_cost < 1e-8);
  CHECK(report.evaluations[0].optimized.c_hst < 1e-8);
  CHECK(report.evaluations[0].optimized.c_lhst < 1e-8);
}

TEST_CASE("the windowed protocol optimizes restricted propagator windows") {
  CompileConfig cfg;
  cfg.hamiltonian = heisenberg_spec(6, Boundary::Periodic);
  cfg.tau = 0.4;
  cfg.depth = 2;
  cfg.protocol = Protocol::Windowed;
  cfg.Ltilde = 6;
  cfg.optimizer.max_iterations = 10;
  cfg.evaluation_sizes = {6};

  const RunReport report = run_lvqc(cfg);  // default window diameter: 2
  CHECK(report.final_cost <= report.initial_cost + 1e-12);
  CHECK(report.evaluations[0].optimized.c_lhst <= report.evaluations[0].baseline.c_lhst + 1e-12);

  // An explicit window that violates Ltilde >= Lp/2 + 2d + 1 is rejected.
  CompileConfig wide = cfg;
  wide.Lp = 4;
  CHECK_THROWS_AS(run_lvqc(wide), ConstraintError);

  // At depth 1 the default (largest) window outruns the light cone: 4d < Lp.
  CompileConfig shallow = cfg;
  shallow.depth = 1;
  CHECK_THROWS_AS(run_lvqc(shallow), ConstraintError);
}

TEST_CASE("larger compilation windows tighten the full-size cost") {
  const double tau = 0.5;
  const auto compile_at = [&](int Lt) {
    CompileConfig cfg;
    cfg.hamiltonian = heisenberg_spec(Lt, Boundary::Periodic);
    cfg.tau = tau;
    cfg.depth = 2;
    cfg.Ltilde = Lt;
    cfg.optimizer.max_iterations = 30;
    cfg.optimizer.grad_tolerance = 1e-7;
    cfg.evaluation_sizes = {Lt};
    return run_lvqc(cfg);
  };

  const std::vector<int> ladder = {6, 8, 10};
  std::vector<RunReport> reports;
  std::vector<BrickworkCircuit> extended;
  for (int Lt : ladder) {
    reports.push_back(compile_at(Lt));
    extended.push_back(build_brickwork(
        12, 2, extend_parameters(reports.back().theta_opt, Lt, 12), Boundary::Periodic));
  }
  const LocalHamiltonian h12 = build_heisenberg_afm(12, Boundary::Periodic);
  const auto at12 = evaluate_circuits(h12, extended, tau);

  std::vector<double> margin;
  for (std::size_t k = 0; k < ladder.size(); ++k) {
    margin.push_back(at12[k].c_lhst - reports[k].final_cost);
    // The full-size cost can only exceed the compilation cost.
    CHECK(margin.back() > -1e-9);
  }
  CHECK(margin[1] <= margin[0] * 1.10 + 1e-6);
  CHECK(margin[2] <= margin[1] * 1.10 + 1e-6);
  CHECK(margin[2] < margin[0]);
}

TEST_CASE("run_lvqc reports are bitwise reproducible") {
  CompileConfig cfg;
  cfg.hamiltonian = heisenberg_spec(6, Boundary::Periodic);
  cfg.tau = 0.5;
  cfg.depth = 2;
  cfg.Ltilde = 6;
  cfg.optimizer.max_iterations = 25;
  cfg.evaluation_sizes = {6, 8};

  const RunReport a = run_lvqc(cfg);
  const RunReport b = run_lvqc(cfg);
  CHECK(a.final_cost == b.final_cost);
  CHECK(a.initial_cost == b.initial_cost);
  CHECK(a.theta_opt.angles == b.theta_opt.angles);
  REQUIRE(a.evaluations.size() == b.evaluations.size());
  for (std::size_t k = 0; k < a.evaluations.size(); ++k) {
    CHECK(a.evaluations[k].optimized.c_lhst == b.evaluations[k].optimized.c_lhst);
    CHECK(a.evaluations[k].optimized.c_hst == b.evaluations[k].optimized.c_hst);
    CHECK(a.evaluations[k].baseline.c_lhst == b.evaluations[k].baseline.c_lhst);
  }
}

TEST_CASE("run_stroboscopic matches dense oracles step by step") {
  const HamiltonianSpec spec = heisenberg_spec(8, Boundary::Periodic);
  const ParameterVector theta = trotter_params(0.4, 2);
  DynamicsConfig cfg;
  cfg.L = 8;
  cfg.Ltilde = 4;
  cfg.steps = 3;
  cfg.tau = 0.4;

  const DynamicsResult res = run_stroboscopic(spec, theta, cfg);
  REQUIRE(res.times.size() == 4);
  CHECK(res.times[0] == 0.0);
  CHECK(res.times[3] == doctest::Approx(1.2));
  CHECK(res.z_circuit[0] == 1.0);  // center site unflipped in the LE state
  CHECK(res.z_reference[0] == 1.0);

  const LocalHamiltonian h = build_heisenberg_afm(8, Boundary::Periodic);
  const Eigen::MatrixXcd u = exact_evolution(h, 0.4);
  const Eigen::MatrixXcd vm =
      circuit_to_unitary(build_brickwork(8, 2, theta, Boundary::Periodic));
  Eigen::VectorXcd psi_c = StateVector::basis_state(8, mask_of(local_excitation_bits(8, 4))).amps;
  Eigen::VectorXcd psi_r = psi_c;
  double acc = 0.0;
  for (int n = 1; n <= 3; ++n) {
    psi_c = vm * psi_c;
    psi_r = u * psi_r;
    CHECK(std::abs(res.z_circuit[n] - z_of(psi_c, 4)) < 1e-10);
    CHECK(std::abs(res.z_reference[n] - z_of(psi_r, 4)) < 1e-9);
    const double diff = res.z_circuit[n] - res.z_reference[n];
    acc += diff * diff;
  }
  CHECK(res.mse == doctest::Approx(acc / 3.0).epsilon(1e-9));

  DynamicsConfig dw = cfg;
  dw.initial = InitialState::DomainWall;
  dw.steps = 0;
  const DynamicsResult res_dw = run_stroboscopic(spec, theta, dw);
  REQUIRE(res_dw.times.size() == 1);
  CHECK(res_dw.z_circuit[0] == -1.0);  // the wall flips the center site
  CHECK(res_dw.mse == 0.0);
}

TEST_CASE("run_stroboscopic agrees across backends") {
  const HamiltonianSpec spec = heisenberg_spec(8, Boundary::Periodic);
  const ParameterVector theta = trotter_params(0.4, 2);
  DynamicsConfig cfg;
  cfg.L = 8;
  cfg.Ltilde = 4;
  cfg.steps = 3;
  cfg.tau = 0.4;

  const DynamicsResult dense = run_stroboscopic(spec, theta, cfg);
  DynamicsConfig mps = cfg;
  mps.backend = BackendKind::Mps;
  mps.chi_max = 0;
  mps.svd_cutoff = 1e-14;
  mps.reference_depth = 400;
  const DynamicsResult loose = run_stroboscopic(spec, theta, mps);
  REQUIRE(loose.times.size() == dense.times.size());
  for (std::size_t n = 0; n < dense.times.size(); ++n) {
    // Same circuit on both backends; the MPS reference is Trotterized.
    CHECK(std::abs(dense.z_circuit[n] - loose.z_circuit[n]) < 1e-8);
    CHECK(std::abs(dense.z_reference[n] - loose.z_reference[n]) < 0.03);
  }
}

TEST_CASE("run_stroboscopic validates input and guards capacity") {
  const HamiltonianSpec spec = heisenberg_spec(8, Boundary::Periodic);
  const ParameterVector theta = trotter_params(0.4, 2);
  DynamicsConfig cfg;
  cfg.L = 8;
  cfg.Ltilde = 4;

  DynamicsConfig odd = cfg;
  odd.L = 7;
  CHECK_THROWS_AS(run_stroboscopic(spec, theta, odd), std::invalid_argument);

  DynamicsConfig negative = cfg;
  negative.steps = -1;
  CHECK_THROWS_AS(run_stroboscopic(spec, theta, negative), std::invalid_argument);

  ParameterVector per_gate = theta;
  per_gate.mode = ParamMode::PerGate;
  CHECK_THROWS_AS(run_stroboscopic(spec, per_gate, cfg), ConstraintError);

  DynamicsConfig huge = cfg;
  huge.L = 26;
  huge.Ltilde = 12;
  CHECK_THROWS_AS(run_stroboscopic(heisenberg_spec(26, Boundary::Periodic), theta, huge),
                  CapacityError);
}
