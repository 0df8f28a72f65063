// lvqc: command-line front end for the local variational quantum compiler.
//
// Subcommands: plan, compile, evaluate, dynamics, mc-estimate. Every
// subcommand takes --config <json> plus flag overrides; flags win. Exit codes:
// 0 success, 2 planner infeasible, 3 capacity exceeded, 4 optimizer failure,
// 1 anything else.

#include <cstdio>
#include <exception>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lvqc/driver.hpp"
#include "lvqc/errors.hpp"
#include "lvqc/mc_estimator.hpp"
#include "lvqc/serialization.hpp"
#include "lvqc/statevector.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitPlannerInfeasible = 2;
constexpr int kExitCapacity = 3;
constexpr int kExitOptimizerFailure = 4;

// Runs the subcommand body, mapping the library's exception taxonomy onto the
// documented exit codes. Nonzero codes surface through CLI::RuntimeError so
// the stack unwinds normally.
int guarded(const std::function<void()>& body) {
  try {
    body();
    return kExitOk;
  } catch (const lvqc::PlannerInfeasibleError& e) {
    std::cerr << "planner infeasible: " << e.what() << "\n";
    return kExitPlannerInfeasible;
  } catch (const lvqc::CapacityError& e) {
    std::cerr << "capacity exceeded: " << e.what() << "\n";
    return kExitCapacity;
  } catch (const lvqc::OptimizerError& e) {
    std::cerr << "optimizer failure: " << e.what() << "\n";
    return kExitOptimizerFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
}

// CLI11 string->enum maps.
const std::map<std::string, lvqc::LRBoundModel::Variant> kVariants{
    {"finite_range", lvqc::LRBoundModel::Variant::FiniteRange},
    {"short_range", lvqc::LRBoundModel::Variant::ShortRange},
    {"long_range", lvqc::LRBoundModel::Variant::LongRange}};
const std::map<std::string, lvqc::Boundary> kBoundaries{{"open", lvqc::Boundary::Open},
                                                        {"periodic", lvqc::Boundary::Periodic}};
const std::map<std::string, lvqc::Protocol> kProtocols{
    {"translation_invariant", lvqc::Protocol::TranslationInvariant},
    {"windowed", lvqc::Protocol::Windowed}};
const std::map<std::string, lvqc::BackendKind> kBackends{{"dense", lvqc::BackendKind::Dense},
                                                         {"mps", lvqc::BackendKind::Mps}};
const std::map<std::string, lvqc::ReferenceKind> kReferences{
    {"exact", lvqc::ReferenceKind::Exact}, {"trotter", lvqc::ReferenceKind::Trotter}};
const std::map<std::string, lvqc::InitialState> kInitials{
    {"local_excitation", lvqc::InitialState::LocalExcitation},
    {"domain_wall", lvqc::InitialState::DomainWall}};
const std::map<std::string, lvqc::PlanTarget::Kind> kTargets{
    {"local", lvqc::PlanTarget::Kind::Local}, {"global", lvqc::PlanTarget::Kind::Global}};

std::string format_plan_table(const lvqc::CompilationPlan& plan) {
  std::ostringstream os;
  os << "plan:\n"
     << "  buffer l0        = " << plan.l0 << "\n"
     << "  tail cut r_H     = " << plan.r_H << "\n"
     << "  window L'        = " << plan.Lp << "\n"
     << "  depth d          = " << plan.d << "  (effective d' = " << plan.d_prime << ")\n"
     << "  subsystem Ltilde = " << plan.Ltilde << "\n"
     << "  epsilon_LR       = " << plan.epsilon_lr
     << (plan.heuristic_constants ? "  (model estimate, heuristic constants)" : "") << "\n"
     << "  target           = "
     << (plan.target.kind == lvqc::PlanTarget::Kind::Local ? "local" : "global");
  if (plan.target.kind == lvqc::PlanTarget::Kind::Global) os << " L=" << plan.target.L;
  os << "\n";
  return os.str();
}

void print_size_table(const lvqc::RunReport& report) {
  std::printf("%6s  %10s  %12s  %12s  %12s  %14s\n", "L", "params", "C_LHST", "C_HST",
              "F_bound(HST)", "F_bound(LHST)");
  for (const auto& e : report.evaluations) {
    std::printf("%6d  %10s  %12.4e  %12.4e  %12.6f  %14.6f\n", e.L, "optimized",
                e.optimized.c_lhst, e.optimized.c_hst, e.optimized.fidelity_lower_bound_hst,
                e.optimized.fidelity_lower_bound_lhst);
    std::printf("%6d  %10s  %12.4e  %12.4e  %12.6f  %14.6f\n", e.L, "baseline", e.baseline.c_lhst,
                e.baseline.c_hst, e.baseline.fidelity_lower_bound_hst,
                e.baseline.fidelity_lower_bound_lhst);
  }
}

struct PlanArgs {
  std::string config;
  lvqc::LRBoundModel model;
  double tau = 0.5;
  int depth = 3;
  std::string target = "local";
  long long L = 0;
  double tol = 1e-2;
  double g = 0.0;
  int k = 0;
  int d_H = 0;
  double sigma = 0.0;
  std::string out;
};

void add_plan(CLI::App& app) {
  auto args = std::make_shared<PlanArgs>();
  CLI::App* sub = app.add_subcommand(
      "plan", "Pick the compilation subsystem size from a Lieb-Robinson error model");
  sub->add_option("--config", args->config, "LRBoundModel JSON file (flags override fields)");
  sub->add_option("--variant", args->model.variant, "Interaction class")
      ->transform(CLI::CheckedTransformer(kVariants, CLI::ignore_case));
  sub->add_option("--dim,-D", args->model.D, "Lattice dimension");
  sub->add_option("--C", args->model.C_lr, "Lieb-Robinson prefactor");
  sub->add_option("--v", args->model.v, "Lieb-Robinson velocity (0 = heuristic 2 g k d_H)");
  sub->add_option("--xi", args->model.xi, "Decay length (0 = heuristic d_H)");
  sub->add_option("--h-strength", args->model.h_strength, "Tail interaction strength");
  sub->add_option("--zeta", args->model.zeta, "Short-range tail decay length");
  sub->add_option("--alpha", args->model.alpha, "Long-range power-law exponent");
  CLI::Option* sigma_opt = sub->add_option("--sigma", args->sigma,
                                           "Long-range interpolation exponent (default: midpoint)");
  sub->add_option("--f-sigma", args->model.f_sigma_vtau, "Prefactor f(sigma, v tau)");
  sub->add_option("--tau", args->tau, "Evolution time per application");
  sub->add_option("--depth,-d", args->depth, "Circuit depth");
  sub->add_option("--target", args->target, "Error target: 'local' or 'global[:L]'");
  sub->add_option("--size,-L", args->L, "Full lattice size for the global target");
  sub->add_option("--tol", args->tol, "Error tolerance for epsilon_LR");
  sub->add_option("--g", args->g, "Hamiltonian coupling strength (default: Heisenberg)");
  sub->add_option("--k", args->k, "Sites per interaction term (default: Heisenberg)");
  sub->add_option("--dH", args->d_H, "Interaction diameter (default: Heisenberg)");
  sub->add_option("--out,-o", args->out, "Write the plan JSON to this file");

  sub->callback([sub, args, sigma_opt]() {
    const int rc = guarded([&]() {
      lvqc::LRBoundModel model;
      if (!args->config.empty()) model = lvqc::lr_model_from_json(lvqc::read_text_file(args->config));
      // Flag overrides on top of the config file.
      if (sub->count("--variant")) model.variant = args->model.variant;
      if (sub->count("--dim")) model.D = args->model.D;
      if (sub->count("--C")) model.C_lr = args->model.C_lr;
      if (sub->count("--v")) model.v = args->model.v;
      if (sub->count("--xi")) model.xi = args->model.xi;
      if (sub->count("--h-strength")) model.h_strength = args->model.h_strength;
      if (sub->count("--zeta")) model.zeta = args->model.zeta;
      if (sub->count("--alpha")) model.alpha = args->model.alpha;
      if (sigma_opt->count()) model.sigma = args->sigma;
      if (sub->count("--f-sigma")) model.f_sigma_vtau = args->model.f_sigma_vtau;

      lvqc::LocalHamiltonian::Metadata md =
          lvqc::build_heisenberg_afm(4, lvqc::Boundary::Periodic).metadata();
      if (sub->count("--g")) md.g = args->g;
      if (sub->count("--k")) md.k = args->k;
      if (sub->count("--dH")) md.d_H = args->d_H;

      lvqc::PlanTarget target;
      std::string kind = args->target;
      if (const auto colon = kind.find(':'); colon != std::string::npos) {
        target.L = std::stoll(kind.substr(colon + 1));
        kind = kind.substr(0, colon);
      }
      if (kind == "local") {
        target.kind = lvqc::PlanTarget::Kind::Local;
      } else if (kind == "global") {
        target.kind = lvqc::PlanTarget::Kind::Global;
      } else {
        throw std::invalid_argument("plan: --target must be 'local' or 'global[:L]'");
      }
      if (sub->count("--size")) target.L = args->L;

      const lvqc::CompilationPlan plan =
          lvqc::plan_size(model, args->tau, args->depth, md, target, args->tol);
      std::cout << format_plan_table(plan);
      const std::string json = lvqc::to_json(plan);
      if (!args->out.empty()) {
        lvqc::write_text_file(args->out, json);
        std::cout << "wrote " << args->out << "\n";
      } else {
        std::cout << json;
      }
    });
    if (rc != kExitOk) throw CLI::RuntimeError(rc);
  });
}

struct CompileArgs {
  std::string config;
  int size = 0;
  std::string family;
  lvqc::Boundary boundary = lvqc::Boundary::Periodic;
  double tau = 0.5;
  int depth = 3;
  lvqc::Protocol protocol = lvqc::Protocol::TranslationInvariant;
  double alpha = 0.0;
  int Ltilde = 0;
  double plan_tolerance = 1e-2;
  int Lp = 0;
  lvqc::BackendKind backend = lvqc::BackendKind::Dense;
  int chi = 30;
  double svd_cutoff = 1e-10;
  int dense_limit = 12;
  lvqc::ReferenceKind reference = lvqc::ReferenceKind::Exact;
  int reference_depth = 100;
  int max_iterations = 0;
  std::vector<int> eval_sizes;
  std::string out = "lvqc_run";
};

void apply_compile_overrides(const CLI::App* sub, const CompileArgs& args,
                             lvqc::CompileConfig& cfg) {
  if (sub->count("--size")) cfg.hamiltonian.size = args.size;
  if (sub->count("--family")) cfg.hamiltonian.family = args.family;
  if (sub->count("--boundary")) cfg.hamiltonian.boundary = args.boundary;
  if (sub->count("--tau")) cfg.tau = args.tau;
  if (sub->count("--depth")) cfg.depth = args.depth;
  if (sub->count("--protocol")) cfg.protocol = args.protocol;
  if (sub->count("--alpha")) cfg.alpha = args.alpha;
  if (sub->count("--Ltilde")) cfg.Ltilde = args.Ltilde;
  if (sub->count("--plan-tol")) cfg.plan_tolerance = args.plan_tolerance;
  if (sub->count("--Lp")) cfg.Lp = args.Lp;
  if (sub->count("--backend")) cfg.backend = args.backend;
  if (sub->count("--chi")) cfg.chi_max = args.chi;
  if (sub->count("--svd-cutoff")) cfg.svd_cutoff = args.svd_cutoff;
  if (sub->count("--dense-limit")) cfg.dense_limit = args.dense_limit;
  if (sub->count("--reference")) cfg.reference = args.reference;
  if (sub->count("--reference-depth")) cfg.reference_depth = args.reference_depth;
  if (sub->count("--max-iterations")) cfg.optimizer.max_iterations = args.max_iterations;
  if (sub->count("--eval-sizes")) cfg.evaluation_sizes = args.eval_sizes;
}

void add_compile_options(CLI::App* sub, CompileArgs& args) {
  sub->add_option("--config", args.config, "CompileConfig JSON file (flags override fields)");
  sub->add_option("--size,-L", args.size, "Base lattice size");
  sub->add_option("--family", args.family, "Hamiltonian family");
  sub->add_option("--boundary", args.boundary, "Lattice boundary")
      ->transform(CLI::CheckedTransformer(kBoundaries, CLI::ignore_case));
  sub->add_option("--tau", args.tau, "Evolution time to compile");
  sub->add_option("--depth,-d", args.depth, "Brickwork circuit depth");
  sub->add_option("--protocol", args.protocol, "Compilation protocol")
      ->transform(CLI::CheckedTransformer(kProtocols, CLI::ignore_case));
  sub->add_option("--alpha", args.alpha, "Global-cost weight in the optimization target");
  sub->add_option("--Ltilde", args.Ltilde, "Compilation subsystem size (0 = use plan/planner)");
  sub->add_option("--plan-tol", args.plan_tolerance, "Planner tolerance when sizing from a model");
  sub->add_option("--Lp", args.Lp, "Propagator window for the generic protocol");
  sub->add_option("--backend", args.backend, "Numerical backend")
      ->transform(CLI::CheckedTransformer(kBackends, CLI::ignore_case));
  sub->add_option("--chi", args.chi, "MPS bond dimension cap");
  sub->add_option("--svd-cutoff", args.svd_cutoff, "Relative truncation cutoff");
  sub->add_option("--dense-limit", args.dense_limit, "Max sites for dense evaluation");
  sub->add_option("--reference", args.reference, "Reference propagator kind")
      ->transform(CLI::CheckedTransformer(kReferences, CLI::ignore_case));
  sub->add_option("--reference-depth", args.reference_depth, "Trotter depth of the reference");
  sub->add_option("--max-iterations", args.max_iterations, "Optimizer iteration budget");
  sub->add_option("--eval-sizes", args.eval_sizes, "Sizes to score the extended circuit at")
      ->delimiter(',');
}

void add_compile(CLI::App& app) {
  auto args = std::make_shared<CompileArgs>();
  CLI::App* sub = app.add_subcommand(
      "compile", "Optimize a brickwork circuit against the subsystem propagator");
  add_compile_options(sub, *args);
  sub->add_option("--out,-o", args->out, "Output file prefix");

  sub->callback([sub, args]() {
    const int rc = guarded([&]() {
      lvqc::CompileConfig cfg;
      if (!args->config.empty()) {
        cfg = lvqc::compile_config_from_json(lvqc::read_text_file(args->config));
      }
      apply_compile_overrides(sub, *args, cfg);
      if (cfg.hamiltonian.size == 0) cfg.hamiltonian.size = cfg.Ltilde;

      const lvqc::RunReport report = lvqc::run_lvqc(cfg);

      std::printf("compiled Ltilde=%d depth=%d tau=%g: cost %.6e -> %.6e (%s, %d evaluations)\n",
                  report.Ltilde, report.depth, report.tau, report.initial_cost, report.final_cost,
                  lvqc::to_string(report.trace.reason), report.trace.evaluations);
      print_size_table(report);

      const std::string report_path = args->out + "_report.json";
      const std::string trace_path = args->out + "_trace.csv";
      const std::string costs_path = args->out + "_costs.csv";
      lvqc::write_text_file(report_path, lvqc::to_json(report));
      std::ostringstream trace_csv;
      lvqc::write_trace_csv(trace_csv, report.trace);
      lvqc::write_text_file(trace_path, trace_csv.str());
      std::ostringstream costs_csv;
      lvqc::write_cost_table_csv(costs_csv, report);
      lvqc::write_text_file(costs_path, costs_csv.str());
      std::cout << "wrote " << report_path << ", " << trace_path << ", " << costs_path << "\n";
    });
    if (rc != kExitOk) throw CLI::RuntimeError(rc);
  });
}

void add_evaluate(CLI::App& app) {
  auto args = std::make_shared<CompileArgs>();
  auto theta_path = std::make_shared<std::string>();
  CLI::App* sub = app.add_subcommand(
      "evaluate", "Score a saved parameter set (and its Trotter baseline) at given sizes");
  add_compile_options(sub, *args);
  sub->add_option("--theta", *theta_path, "ParameterVector JSON file")->required();
  sub->add_option("--out,-o", args->out, "Output file prefix");

  sub->callback([sub, args, theta_path]() {
    const int rc = guarded([&]() {
      lvqc::CompileConfig cfg;
      if (!args->config.empty()) {
        cfg = lvqc::compile_config_from_json(lvqc::read_text_file(args->config));
      }
      apply_compile_overrides(sub, *args, cfg);
      const lvqc::ParameterVector theta =
          lvqc::parameters_from_json(lvqc::read_text_file(*theta_path));

      std::vector<int> sizes = cfg.evaluation_sizes;
      if (sizes.empty() && cfg.hamiltonian.size > 0) sizes.push_back(cfg.hamiltonian.size);
      if (sizes.empty()) throw std::invalid_argument("evaluate: no sizes given (--eval-sizes)");

      lvqc::EvaluationOptions opts;
      opts.backend = cfg.backend;
      opts.chi_max = cfg.chi_max;
      opts.svd_cutoff = cfg.svd_cutoff;
      opts.dense_limit = cfg.dense_limit;
      opts.reference = cfg.reference;
      opts.reference_depth = cfg.reference_depth;

      lvqc::RunReport report;  // reuse the report/CSV plumbing for the table
      report.Ltilde = cfg.Ltilde;
      report.depth = theta.depth;
      report.tau = cfg.tau;
      report.theta_opt = theta;
      report.theta_baseline = lvqc::trotter_params(cfg.tau, theta.depth);
      for (int L : sizes) {
        const lvqc::LocalHamiltonian h = lvqc::instantiate(cfg.hamiltonian, L);
        const lvqc::BrickworkCircuit v_opt = lvqc::build_brickwork(
            L, theta.depth, lvqc::extend_parameters(theta, std::min(cfg.Ltilde > 0 ? cfg.Ltilde : L, L), L),
            cfg.hamiltonian.boundary);
        const lvqc::BrickworkCircuit v_base = lvqc::build_brickwork(
            L, theta.depth, report.theta_baseline, cfg.hamiltonian.boundary);
        auto reports = lvqc::evaluate_circuits(h, {v_opt, v_base}, cfg.tau, opts);
        lvqc::SizeEvaluation eval;
        eval.L = L;
        eval.optimized = std::move(reports[0]);
        eval.baseline = std::move(reports[1]);
        report.evaluations.push_back(std::move(eval));
      }

      print_size_table(report);
      const std::string costs_path = args->out + "_costs.csv";
      std::ostringstream costs_csv;
      lvqc::write_cost_table_csv(costs_csv, report);
      lvqc::write_text_file(costs_path, costs_csv.str());
      std::cout << "wrote " << costs_path << "\n";
    });
    if (rc != kExitOk) throw CLI::RuntimeError(rc);
  });
}

struct DynamicsArgs {
  std::string config;
  std::string theta_path;
  lvqc::DynamicsConfig cfg;
  std::string out = "dynamics.csv";
};

void add_dynamics(CLI::App& app) {
  auto args = std::make_shared<DynamicsArgs>();
  CLI::App* sub = app.add_subcommand(
      "dynamics", "Stroboscopic quench evolution of the compiled circuit vs a reference");
  sub->add_option("--config", args->config, "DynamicsConfig JSON file (flags override fields)");
  sub->add_option("--theta", args->theta_path, "ParameterVector JSON file")->required();
  sub->add_option("--size,-L", args->cfg.L, "Lattice size");
  sub->add_option("--Ltilde", args->cfg.Ltilde, "Excitation separation of the initial state");
  sub->add_option("--initial", args->cfg.initial, "Initial product state")
      ->transform(CLI::CheckedTransformer(kInitials, CLI::ignore_case));
  sub->add_option("--steps", args->cfg.steps, "Number of circuit applications");
  sub->add_option("--tau", args->cfg.tau, "Evolution time per application");
  sub->add_option("--backend", args->cfg.backend, "Numerical backend")
      ->transform(CLI::CheckedTransformer(kBackends, CLI::ignore_case));
  sub->add_option("--chi", args->cfg.chi_max, "MPS bond dimension cap");
  sub->add_option("--svd-cutoff", args->cfg.svd_cutoff, "Relative truncation cutoff");
  sub->add_option("--reference-depth", args->cfg.reference_depth,
                  "Trotter substeps per tau of the MPS reference");
  sub->add_option("--boundary", args->cfg.boundary, "Lattice boundary")
      ->transform(CLI::CheckedTransformer(kBoundaries, CLI::ignore_case));
  sub->add_option("--out,-o", args->out, "Output CSV path");

  sub->callback([sub, args]() {
    const int rc = guarded([&]() {
      lvqc::DynamicsConfig cfg;
      if (!args->config.empty()) {
        cfg = lvqc::dynamics_config_from_json(lvqc::read_text_file(args->config));
      }
      if (sub->count("--size")) cfg.L = args->cfg.L;
      if (sub->count("--Ltilde")) cfg.Ltilde = args->cfg.Ltilde;
      if (sub->count("--initial")) cfg.initial = args->cfg.initial;
      if (sub->count("--steps")) cfg.steps = args->cfg.steps;
      if (sub->count("--tau")) cfg.tau = args->cfg.tau;
      if (sub->count("--backend")) cfg.backend = args->cfg.backend;
      if (sub->count("--chi")) cfg.chi_max = args->cfg.chi_max;
      if (sub->count("--svd-cutoff")) cfg.svd_cutoff = args->cfg.svd_cutoff;
      if (sub->count("--reference-depth")) cfg.reference_depth = args->cfg.reference_depth;
      if (sub->count("--boundary")) cfg.boundary = args->cfg.boundary;

      const lvqc::ParameterVector theta =
          lvqc::parameters_from_json(lvqc::read_text_file(args->theta_path));
      lvqc::HamiltonianSpec spec;
      spec.boundary = cfg.boundary;
      spec.size = cfg.L;

      const lvqc::DynamicsResult result = lvqc::run_stroboscopic(spec, theta, cfg);

      std::printf("stroboscopic run: L=%d steps=%d tau=%g MSE=%.6e\n", cfg.L, cfg.steps, cfg.tau,
                  result.mse);
      std::ostringstream csv;
      lvqc::write_dynamics_csv(csv, result, cfg.L / 2);
      lvqc::write_text_file(args->out, csv.str());
      std::cout << "wrote " << args->out << "\n";
    });
    if (rc != kExitOk) throw CLI::RuntimeError(rc);
  });
}

struct McArgs {
  int L = 2;
  double tau = 0.5;
  int depth = 1;
  int j = 0;  // 0 = center
  std::string kind = "lhst";
  lvqc::Boundary boundary = lvqc::Boundary::Open;
  std::string theta_path;
  lvqc::EstimatorConfig cfg;
};

void add_mc_estimate(CLI::App& app) {
  auto args = std::make_shared<McArgs>();
  CLI::App* sub = app.add_subcommand(
      "mc-estimate", "Monte-Carlo estimate of a compilation cost from sampled measurements");
  sub->add_option("--size,-L", args->L, "Lattice size (dense-capable)");
  sub->add_option("--tau", args->tau, "Evolution time");
  sub->add_option("--depth,-d", args->depth, "Circuit depth (Trotter circuit if no --theta)");
  sub->add_option("--site,-j", args->j, "Bell pair index for the local cost (0 = center)");
  sub->add_option("--kind", args->kind, "Cost to estimate: lhst or hst")
      ->check(CLI::IsMember({"lhst", "hst"}));
  sub->add_option("--boundary", args->boundary, "Lattice boundary")
      ->transform(CLI::CheckedTransformer(kBoundaries, CLI::ignore_case));
  sub->add_option("--theta", args->theta_path, "ParameterVector JSON for the trial circuit");
  sub->add_option("--n1", args->cfg.n1, "Shots per expectation value");
  sub->add_option("--n2", args->cfg.n2, "Outer basis-state samples");
  sub->add_option("--n3", args->cfg.n3, "Pauli-string samples (hst only)");
  sub->add_option("--seed", args->cfg.seed, "RNG seed");

  sub->callback([args]() {
    const int rc = guarded([&]() {
      const lvqc::LocalHamiltonian h = lvqc::build_heisenberg_afm(args->L, args->boundary);
      const lvqc::DenseUnitary u = lvqc::exact_evolution(h, args->tau);
      lvqc::ParameterVector theta = lvqc::trotter_params(args->tau, args->depth);
      if (!args->theta_path.empty()) {
        theta = lvqc::parameters_from_json(lvqc::read_text_file(args->theta_path));
      }
      const lvqc::DenseUnitary v = lvqc::circuit_to_unitary(
          lvqc::build_brickwork(args->L, theta.depth, theta, args->boundary));

      lvqc::EstimateResult result;
      if (args->kind == "hst") {
        result = lvqc::estimate_hst(u, v, args->cfg);
      } else {
        const int j = args->j > 0 ? args->j : (args->L + 1) / 2;
        result = lvqc::estimate_lhst_j(u, v, j, args->cfg);
      }
      std::cout << lvqc::to_json(result, args->cfg);
    });
    if (rc != kExitOk) throw CLI::RuntimeError(rc);
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lvqc: local variational compilation of Hamiltonian dynamics"};
  app.require_subcommand(1);
  add_plan(app);
  add_compile(app);
  add_evaluate(app);
  add_dynamics(app);
  add_mc_estimate(app);
  CLI11_PARSE(app, argc, argv);
  return 0;
}
