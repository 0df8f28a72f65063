#include <doctest.h>

#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "lvqc/lattice.hpp"
#include "lvqc/serialization.hpp"

using namespace lvqc;
using nlohmann::json;

TEST_CASE("parameter vectors round-trip through JSON") {
  ParameterVector theta;
  theta.mode = ParamMode::PerGate;
  theta.depth = 2;
  theta.angles = {0.5, -0.25, 1.0, 0.125, 2.0};

  const ParameterVector back = parameters_from_json(to_json(theta));
  CHECK(back.mode == ParamMode::PerGate);
  CHECK(back.depth == 2);
  CHECK(back.angles == theta.angles);

  // Partial documents fill the documented defaults.
  const ParameterVector empty = parameters_from_json("{}");
  CHECK(empty.mode == ParamMode::Shared);
  CHECK(empty.depth == 0);
  CHECK(empty.angles.empty());

  CHECK_THROWS_AS(parameters_from_json("{ not json"), std::invalid_argument);
  CHECK_THROWS_AS(parameters_from_json(R"({"mode": "diagonal"})"), std::invalid_argument);
  CHECK_THROWS_AS(parameters_from_json(R"({"angles": "oops"})"), std::invalid_argument);
}

TEST_CASE("Hamiltonians round-trip and are validated on parse") {
  const LocalHamiltonian h = build_heisenberg_afm(4, Boundary::Periodic);
  const LocalHamiltonian back = hamiltonian_from_json(to_json(h));
  CHECK(back.lattice.size == 4);
  CHECK(back.lattice.boundary == Boundary::Periodic);
  REQUIRE(back.terms.size() == h.terms.size());
  for (std::size_t i = 0; i < h.terms.size(); ++i) {
    CHECK(back.terms[i].sites == h.terms[i].sites);
    CHECK(back.terms[i].paulis == h.terms[i].paulis);
    CHECK(back.terms[i].coeff == h.terms[i].coeff);
  }

  // Required key missing, invalid Pauli letter, out-of-range site: all the
  // same exception type, whether caught by the parser or by validate().
  CHECK_THROWS_AS(hamiltonian_from_json("{}"), std::invalid_argument);
  CHECK_THROWS_AS(hamiltonian_from_json(R"({"size": 2, "terms": [
      {"sites": [1, 2], "paulis": "XQ", "coeff": 1.0}]})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(hamiltonian_from_json(R"({"size": 2, "terms": [
      {"sites": [1, 5], "paulis": "XX", "coeff": 1.0}]})"),
                  std::invalid_argument);
}

TEST_CASE("compilation plans round-trip including the global target") {
  CompilationPlan plan;
  plan.l0 = 5;
  plan.r_H = 2;
  plan.Lp = 16;
  plan.d = 5;
  plan.d_prime = 1.0;
  plan.Ltilde = 20;
  plan.epsilon_lr = 6.737946999085467e-03;
  plan.target.kind = PlanTarget::Kind::Global;
  plan.target.L = 1000000;
  plan.heuristic_constants = false;

  const CompilationPlan back = plan_from_json(to_json(plan));
  CHECK(back.l0 == plan.l0);
  CHECK(back.r_H == plan.r_H);
  CHECK(back.Lp == plan.Lp);
  CHECK(back.d == plan.d);
  CHECK(back.d_prime == plan.d_prime);
  CHECK(back.Ltilde == plan.Ltilde);
  CHECK(back.epsilon_lr == plan.epsilon_lr);
  CHECK(back.target.kind == PlanTarget::Kind::Global);
  CHECK(back.target.L == 1000000);
  CHECK(back.heuristic_constants == false);

  const CompilationPlan empty = plan_from_json("{}");
  CHECK(empty.Ltilde == 0);
  CHECK(empty.target.kind == PlanTarget::Kind::Local);
  CHECK(empty.heuristic_constants == true);
  CHECK_THROWS_AS(plan_from_json(R"({"target": {"kind": "cosmic"}})"), std::invalid_argument);
}

TEST_CASE("LR bound models round-trip with a nullable sigma") {
  LRBoundModel m;
  m.variant = LRBoundModel::Variant::LongRange;
  m.D = 2;
  m.C_lr = 1.25;
  m.v = 3.0;
  m.xi = 0.75;
  m.h_strength = 1.5;
  m.zeta = 0.8;
  m.alpha = 5.0;
  m.sigma = 0.7;
  m.f_sigma_vtau = 0.9;
  m.C9 = 1.1;
  m.C10 = 1.2;
  m.C11 = 1.3;

  const LRBoundModel back = lr_model_from_json(to_json(m));
  CHECK(back.variant == LRBoundModel::Variant::LongRange);
  CHECK(back.D == 2);
  CHECK(back.C_lr == m.C_lr);
  CHECK(back.v == m.v);
  CHECK(back.xi == m.xi);
  CHECK(back.h_strength == m.h_strength);
  CHECK(back.zeta == m.zeta);
  CHECK(back.alpha == m.alpha);
  REQUIRE(back.sigma.has_value());
  CHECK(*back.sigma == 0.7);
  CHECK(back.f_sigma_vtau == m.f_sigma_vtau);
  CHECK(back.C9 == m.C9);
  CHECK(back.C10 == m.C10);
  CHECK(back.C11 == m.C11);

  m.sigma.reset();
  const LRBoundModel no_sigma = lr_model_from_json(to_json(m));
  CHECK_FALSE(no_sigma.sigma.has_value());

  CHECK_THROWS_AS(lr_model_from_json(R"({"variant": "telepathic"})"), std::invalid_argument);
  CHECK_THROWS_AS(lr_model_from_json(R"({"sigma": "broad"})"), std::invalid_argument);
}

TEST_CASE("optimizer and estimator configs round-trip and accept partials") {
  OptimizerConfig opt;
  opt.max_iterations = 17;
  opt.fd_step = 1e-4;
  opt.grad_tolerance = 1e-6;
  opt.cost_tolerance = 1e-9;
  opt.armijo_c = 0.25;
  opt.backtrack_factor = 0.75;
  opt.max_line_search_steps = 12;
  const OptimizerConfig opt_back = optimizer_config_from_json(to_json(opt));
  CHECK(opt_back.max_iterations == 17);
  CHECK(opt_back.fd_step == 1e-4);
  CHECK(opt_back.grad_tolerance == 1e-6);
  CHECK(opt_back.cost_tolerance == 1e-9);
  CHECK(opt_back.armijo_c == 0.25);
  CHECK(opt_back.backtrack_factor == 0.75);
  CHECK(opt_back.max_line_search_steps == 12);

  const OptimizerConfig opt_partial = optimizer_config_from_json(R"({"max_iterations": 3})");
  CHECK(opt_partial.max_iterations == 3);
  CHECK(opt_partial.fd_step == OptimizerConfig{}.fd_step);

  EstimatorConfig est;
  est.n1 = 32;
  est.n2 = 500;
  est.n3 = 77;
  est.seed = 424242;
  const EstimatorConfig est_back = estimator_config_from_json(to_json(est));
  CHECK(est_back.n1 == 32);
  CHECK(est_back.n2 == 500);
  CHECK(est_back.n3 == 77);
  CHECK(est_back.seed == 424242);
  const EstimatorConfig est_partial = estimator_config_from_json(R"({"n2": 128})");
  CHECK(est_partial.n2 == 128);
  CHECK(est_partial.n1 == EstimatorConfig{}.n1);
}

TEST_CASE("compile configs round-trip every field") {
  CompileConfig cfg;
  cfg.hamiltonian.family = "heisenberg_afm";
  cfg.hamiltonian.boundary = Boundary::Open;
  cfg.hamiltonian.size = 16;
  cfg.hamiltonian.custom = build_heisenberg_afm(4, Boundary::Periodic);
  cfg.tau = 0.25;
  cfg.depth = 5;
  cfg.protocol = Protocol::Windowed;
  cfg.alpha = 0.125;
  cfg.Ltilde = 8;
  CompilationPlan plan;
  plan.l0 = 2;
  plan.Ltilde = 8;
  cfg.plan = plan;
  LRBoundModel model;
  model.v = 4.0;
  cfg.lr_model = model;
  cfg.plan_tolerance = 1e-3;
  cfg.plan_target = PlanTarget::Kind::Global;
  cfg.Lp = 4;
  cfg.backend = BackendKind::Mps;
  cfg.chi_max = 48;
  cfg.svd_cutoff = 1e-12;
  cfg.dense_limit = 10;
  cfg.reference = ReferenceKind::Trotter;
  cfg.reference_depth = 64;
  cfg.optimizer.max_iterations = 9;
  cfg.evaluation_sizes = {8, 12, 16};

  const CompileConfig back = compile_config_from_json(to_json(cfg));
  CHECK(back.hamiltonian.family == "heisenberg_afm");
  CHECK(back.hamiltonian.boundary == Boundary::Open);
  CHECK(back.hamiltonian.size == 16);
  REQUIRE(back.hamiltonian.custom.has_value());
  CHECK(back.hamiltonian.custom->lattice.size == 4);
  CHECK(back.tau == 0.25);
  CHECK(back.depth == 5);
  CHECK(back.protocol == Protocol::Windowed);
  CHECK(back.alpha == 0.125);
  CHECK(back.Ltilde == 8);
  REQUIRE(back.plan.has_value());
  CHECK(back.plan->l0 == 2);
  CHECK(back.plan->Ltilde == 8);
  REQUIRE(back.lr_model.has_value());
  CHECK(back.lr_model->v == 4.0);
  CHECK(back.plan_tolerance == 1e-3);
  CHECK(back.plan_target == PlanTarget::Kind::Global);
  CHECK(back.Lp == 4);
  CHECK(back.backend == BackendKind::Mps);
  CHECK(back.chi_max == 48);
  CHECK(back.svd_cutoff == 1e-12);
  CHECK(back.dense_limit == 10);
  CHECK(back.reference == ReferenceKind::Trotter);
  CHECK(back.reference_depth == 64);
  CHECK(back.optimizer.max_iterations == 9);
  CHECK(back.evaluation_sizes == std::vector<int>{8, 12, 16});

  const CompileConfig defaults = compile_config_from_json("{}");
  CHECK(defaults.protocol == Protocol::TranslationInvariant);
  CHECK(defaults.backend == BackendKind::Dense);
  CHECK(defaults.reference == ReferenceKind::Exact);
  CHECK(defaults.tau == 0.5);
  CHECK(defaults.depth == 3);
  CHECK(defaults.Ltilde == 0);
  CHECK_FALSE(defaults.plan.has_value());
  CHECK_FALSE(defaults.lr_model.has_value());
  CHECK_FALSE(defaults.hamiltonian.custom.has_value());

  CHECK_THROWS_AS(compile_config_from_json(R"({"protocol": "psychic"})"), std::invalid_argument);
  CHECK_THROWS_AS(compile_config_from_json(R"({"backend": "abacus"})"), std::invalid_argument);
  CHECK_THROWS_AS(compile_config_from_json(R"({"reference": "vibes"})"), std::invalid_argument);
}

TEST_CASE("dynamics configs round-trip and accept the short state names") {
  DynamicsConfig cfg;
  cfg.L = 40;
  cfg.Ltilde = 20;
  cfg.initial = InitialState::DomainWall;
  cfg.steps = 10;
  cfg.tau = 0.5;
  cfg.backend = BackendKind::Mps;
  cfg.chi_max = 60;
  cfg.svd_cutoff = 1e-11;
  cfg.reference_depth = 100;
  cfg.boundary = Boundary::Open;

  const DynamicsConfig back = dynamics_config_from_json(to_json(cfg));
  CHECK(back.L == 40);
  CHECK(back.Ltilde == 20);
  CHECK(back.initial == InitialState::DomainWall);
  CHECK(back.steps == 10);
  CHECK(back.tau == 0.5);
  CHECK(back.backend == BackendKind::Mps);
  CHECK(back.chi_max == 60);
  CHECK(back.svd_cutoff == 1e-11);
  CHECK(back.reference_depth == 100);
  CHECK(back.boundary == Boundary::Open);

  CHECK(dynamics_config_from_json(R"({"initial": "le"})").initial ==
        InitialState::LocalExcitation);
  CHECK(dynamics_config_from_json(R"({"initial": "dw"})").initial == InitialState::DomainWall);
  CHECK_THROWS_AS(dynamics_config_from_json(R"({"initial": "cat"})"), std::invalid_argument);
}

TEST_CASE("result emitters produce the documented JSON shapes") {
  EstimateResult res;
  res.estimate = 0.875;
  res.std_error = 0.015625;
  EstimatorConfig cfg;
  cfg.n1 = 64;
  cfg.n2 = 4096;
  cfg.n3 = 256;
  cfg.seed = 7;
  const json je = json::parse(to_json(res, cfg));
  CHECK(je.at("estimate").get<double>() == 0.875);
  CHECK(je.at("stderr").get<double>() == 0.015625);
  CHECK(je.at("N1").get<int>() == 64);
  CHECK(je.at("N2").get<int>() == 4096);
  CHECK(je.at("N3").get<int>() == 256);
  CHECK(je.at("seed").get<long long>() == 7);

  CostReport report;
  report.c_hst = 0.5;
  report.c_lhst = 0.25;
  report.c_lhst_per_site = {0.25, 0.25};
  report.fidelity_lower_bound_hst = 0.5;
  report.fidelity_lower_bound_lhst = 0.75;
  report.backend = CostBackend::Mps;
  const json jr0 = json::parse(to_json(report));
  CHECK(jr0.at("backend") == "mps");
  CHECK(jr0.at("epsilon_budget").is_null());
  report.epsilon_budget = EpsilonBudget{0.001, 0.016, 0.0005};
  const json jr1 = json::parse(to_json(report));
  CHECK(jr1.at("epsilon_budget").at("epsilon_lhst").get<double>() == 0.001);
  CHECK(jr1.at("epsilon_budget").at("epsilon_hst").get<double>() == 0.016);
  CHECK(jr1.at("epsilon_budget").at("epsilon_lr").get<double>() == 0.0005);

  DynamicsResult dyn;
  dyn.times = {0.0, 0.5};
  dyn.z_circuit = {1.0, -0.25};
  dyn.z_reference = {1.0, 0.5};
  dyn.mse = 0.5625;
  const json jd = json::parse(to_json(dyn));
  CHECK(jd.at("times").size() == 2);
  CHECK(jd.at("z_circuit")[1].get<double>() == -0.25);
  CHECK(jd.at("mse").get<double>() == 0.5625);
}

namespace {

RunReport tiny_report() {
  RunReport report;
  report.Ltilde = 8;
  report.depth = 3;
  report.tau = 0.5;
  report.alpha = 0.0;
  report.initial_cost = 0.5;
  report.final_cost = 0.25;
  report.theta_opt.mode = ParamMode::Shared;
  report.theta_opt.depth = 3;
  report.theta_opt.angles = {0.5};
  report.theta_baseline = report.theta_opt;
  IterationRecord rec0{0, 0.5, 2.0, 0.0, 0.25};
  IterationRecord rec1{1, 0.25, 1.0, 0.5, 0.5};
  report.trace.history = {rec0, rec1};
  report.trace.initial_cost = 0.5;
  report.trace.final_cost = 0.25;
  report.trace.reason = TerminationReason::IterationBudget;
  report.trace.evaluations = 5;

  SizeEvaluation eval;
  eval.L = 8;
  eval.optimized.c_lhst = 0.25;
  eval.optimized.c_hst = 0.5;
  eval.optimized.fidelity_lower_bound_hst = 0.5;
  eval.optimized.fidelity_lower_bound_lhst = 0.75;
  eval.baseline.c_lhst = 0.5;
  eval.baseline.c_hst = 1.0;
  eval.baseline.fidelity_lower_bound_hst = 0.0;
  eval.baseline.fidelity_lower_bound_lhst = 0.5;
  report.evaluations = {eval};
  return report;
}

}  // namespace

TEST_CASE("run reports serialize with plan, trace, and per-size evaluations") {
  const RunReport report = tiny_report();
  const json j = json::parse(to_json(report));
  CHECK(j.at("Ltilde") == 8);
  CHECK(j.at("plan").is_null());
  CHECK(j.at("trace").at("reason") == "iteration_budget");
  CHECK(j.at("trace").at("history").size() == 2);
  CHECK(j.at("theta_opt").at("mode") == "shared");
  REQUIRE(j.at("evaluations").size() == 1);
  CHECK(j.at("evaluations")[0].at("L") == 8);
  CHECK(j.at("evaluations")[0].at("optimized").at("c_lhst").get<double>() == 0.25);
  CHECK(j.at("evaluations")[0].at("baseline").at("c_hst").get<double>() == 1.0);
}

TEST_CASE("CSV writers emit the documented headers and rows") {
  const RunReport report = tiny_report();

  std::ostringstream trace_csv;
  write_trace_csv(trace_csv, report.trace);
  CHECK(trace_csv.str() ==
        "iter,cost,grad_norm,step,seconds\n"
        "0,0.5,2,0,0.25\n"
        "1,0.25,1,0.5,0.5\n");

  DynamicsResult dyn;
  dyn.times = {0.0, 0.5};
  dyn.z_circuit = {1.0, -0.25};
  dyn.z_reference = {1.0, 0.5};
  std::ostringstream dyn_csv;
  write_dynamics_csv(dyn_csv, dyn, 4);
  CHECK(dyn_csv.str() ==
        "step,t,site,z_circuit,z_reference\n"
        "0,0,4,1,1\n"
        "1,0.5,4,-0.25,0.5\n");

  std::ostringstream cost_csv;
  write_cost_table_csv(cost_csv, report);
  CHECK(cost_csv.str() ==
        "L,parameters,c_lhst,c_hst,fidelity_lower_bound_hst,fidelity_lower_bound_lhst\n"
        "8,optimized,0.25,0.5,0.5,0.75\n"
        "8,baseline,0.5,1,0,0.5\n");
}

TEST_CASE("text file helpers round-trip and surface I/O failures") {
  const std::string path = "serialization_roundtrip.tmp";
  const std::string payload = "line one\nline two\n";
  write_text_file(path, payload);
  CHECK(read_text_file(path) == payload);
  std::remove(path.c_str());

  CHECK_THROWS_AS(read_text_file("no/such/file/anywhere.json"), std::runtime_error);
  CHECK_THROWS_AS(write_text_file("no/such/dir/out.json", "x"), std::runtime_error);
}
