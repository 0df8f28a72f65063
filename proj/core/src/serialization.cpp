#include "lvqc/serialization.hpp"

#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace lvqc {

namespace {

using nlohmann::json;

// Runs a converter on parsed text, translating both syntax errors and
// key/type lookup failures into std::invalid_argument per the header
// contract.
template <typename Fn>
auto parse_with(const std::string& text, Fn&& fn) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("invalid JSON: ") + e.what());
  }
  try {
    return fn(j);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed document: ") + e.what());
  }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

// --- enum <-> string maps ---------------------------------------------------

std::string boundary_name(Boundary b) { return b == Boundary::Open ? "open" : "periodic"; }
Boundary boundary_from(const std::string& s) {
  if (s == "open") return Boundary::Open;
  if (s == "periodic") return Boundary::Periodic;
  throw std::invalid_argument("unknown boundary '" + s + "'");
}

std::string mode_name(ParamMode m) { return m == ParamMode::Shared ? "shared" : "per_gate"; }
ParamMode mode_from(const std::string& s) {
  if (s == "shared") return ParamMode::Shared;
  if (s == "per_gate") return ParamMode::PerGate;
  throw std::invalid_argument("unknown parameter mode '" + s + "'");
}

std::string variant_name(LRBoundModel::Variant v) {
  switch (v) {
    case LRBoundModel::Variant::FiniteRange:
      return "finite_range";
    case LRBoundModel::Variant::ShortRange:
      return "short_range";
    case LRBoundModel::Variant::LongRange:
      return "long_range";
  }
  return "finite_range";
}
LRBoundModel::Variant variant_from(const std::string& s) {
  if (s == "finite_range") return LRBoundModel::Variant::FiniteRange;
  if (s == "short_range") return LRBoundModel::Variant::ShortRange;
  if (s == "long_range") return LRBoundModel::Variant::LongRange;
  throw std::invalid_argument("unknown interaction variant '" + s + "'");
}

std::string target_name(PlanTarget::Kind k) {
  return k == PlanTarget::Kind::Local ? "local" : "global";
}
PlanTarget::Kind target_from(const std::string& s) {
  if (s == "local") return PlanTarget::Kind::Local;
  if (s == "global") return PlanTarget::Kind::Global;
  throw std::invalid_argument("unknown plan target '" + s + "'");
}

std::string protocol_name(Protocol p) {
  return p == Protocol::TranslationInvariant ? "translation_invariant" : "windowed";
}
Protocol protocol_from(const std::string& s) {
  if (s == "translation_invariant") return Protocol::TranslationInvariant;
  if (s == "windowed") return Protocol::Windowed;
  throw std::invalid_argument("unknown protocol '" + s + "'");
}

std::string backend_name(BackendKind b) { return b == BackendKind::Dense ? "dense" : "mps"; }
BackendKind backend_from(const std::string& s) {
  if (s == "dense") return BackendKind::Dense;
  if (s == "mps") return BackendKind::Mps;
  throw std::invalid_argument("unknown backend '" + s + "'");
}

std::string reference_name(ReferenceKind r) {
  return r == ReferenceKind::Exact ? "exact" : "trotter";
}
ReferenceKind reference_from(const std::string& s) {
  if (s == "exact") return ReferenceKind::Exact;
  if (s == "trotter") return ReferenceKind::Trotter;
  throw std::invalid_argument("unknown reference kind '" + s + "'");
}

std::string initial_name(InitialState s) {
  return s == InitialState::LocalExcitation ? "local_excitation" : "domain_wall";
}
InitialState initial_from(const std::string& s) {
  if (s == "local_excitation" || s == "le") return InitialState::LocalExcitation;
  if (s == "domain_wall" || s == "dw") return InitialState::DomainWall;
  throw std::invalid_argument("unknown initial state '" + s + "'");
}

// --- object converters ------------------------------------------------------

json theta_json(const ParameterVector& theta) {
  return json{{"mode", mode_name(theta.mode)}, {"depth", theta.depth}, {"angles", theta.angles}};
}

ParameterVector theta_from(const json& j) {
  ParameterVector theta;
  theta.mode = mode_from(j.value("mode", "shared"));
  theta.depth = j.value("depth", 0);
  theta.angles = j.value("angles", std::vector<double>{});
  return theta;
}

json hamiltonian_json(const LocalHamiltonian& h) {
  json terms = json::array();
  for (const auto& t : h.terms) {
    terms.push_back(json{{"sites", t.sites}, {"paulis", t.paulis}, {"coeff", t.coeff}});
  }
  return json{{"size", h.lattice.size},
              {"boundary", boundary_name(h.lattice.boundary)},
              {"terms", std::move(terms)}};
}

LocalHamiltonian hamiltonian_from(const json& j) {
  LocalHamiltonian h;
  h.lattice.size = j.at("size").get<int>();
  h.lattice.boundary = boundary_from(j.value("boundary", "open"));
  for (const auto& tj : j.value("terms", json::array())) {
    PauliTerm t;
    t.sites = tj.at("sites").get<std::vector<int>>();
    t.paulis = tj.at("paulis").get<std::string>();
    t.coeff = tj.at("coeff").get<double>();
    h.terms.push_back(std::move(t));
  }
  h.validate();
  return h;
}

json plan_json(const CompilationPlan& plan) {
  return json{{"l0", plan.l0},
              {"r_H", plan.r_H},
              {"Lp", plan.Lp},
              {"d", plan.d},
              {"d_prime", plan.d_prime},
              {"Ltilde", plan.Ltilde},
              {"epsilon_lr", plan.epsilon_lr},
              {"target", json{{"kind", target_name(plan.target.kind)}, {"L", plan.target.L}}},
              {"heuristic_constants", plan.heuristic_constants}};
}

CompilationPlan plan_from(const json& j) {
  CompilationPlan plan;
  plan.l0 = j.value("l0", 0);
  plan.r_H = j.value("r_H", 0);
  plan.Lp = j.value("Lp", 0);
  plan.d = j.value("d", 0);
  plan.d_prime = j.value("d_prime", 0.0);
  plan.Ltilde = j.value("Ltilde", 0);
  plan.epsilon_lr = j.value("epsilon_lr", 0.0);
  if (j.contains("target")) {
    plan.target.kind = target_from(j["target"].value("kind", "local"));
    plan.target.L = j["target"].value("L", 0LL);
  }
  plan.heuristic_constants = j.value("heuristic_constants", true);
  return plan;
}

json model_json(const LRBoundModel& m) {
  json j{{"variant", variant_name(m.variant)},
         {"D", m.D},
         {"C_lr", m.C_lr},
         {"v", m.v},
         {"xi", m.xi},
         {"h_strength", m.h_strength},
         {"zeta", m.zeta},
         {"alpha", m.alpha},
         {"f_sigma_vtau", m.f_sigma_vtau},
         {"C9", m.C9},
         {"C10", m.C10},
         {"C11", m.C11}};
  if (m.sigma) {
    j["sigma"] = *m.sigma;
  } else {
    j["sigma"] = nullptr;
  }
  return j;
}

LRBoundModel model_from(const json& j) {
  LRBoundModel m;
  m.variant = variant_from(j.value("variant", "finite_range"));
  m.D = j.value("D", 1);
  m.C_lr = j.value("C_lr", 1.0);
  m.v = j.value("v", 0.0);
  m.xi = j.value("xi", 0.0);
  m.h_strength = j.value("h_strength", 1.0);
  m.zeta = j.value("zeta", 1.0);
  m.alpha = j.value("alpha", 0.0);
  if (j.contains("sigma") && !j["sigma"].is_null()) m.sigma = j["sigma"].get<double>();
  m.f_sigma_vtau = j.value("f_sigma_vtau", 1.0);
  m.C9 = j.value("C9", 1.0);
  m.C10 = j.value("C10", 1.0);
  m.C11 = j.value("C11", 1.0);
  return m;
}

json optimizer_json(const OptimizerConfig& cfg) {
  return json{{"max_iterations", cfg.max_iterations},
              {"fd_step", cfg.fd_step},
              {"grad_tolerance", cfg.grad_tolerance},
              {"cost_tolerance", cfg.cost_tolerance},
              {"armijo_c", cfg.armijo_c},
              {"backtrack_factor", cfg.backtrack_factor},
              {"max_line_search_steps", cfg.max_line_search_steps}};
}

OptimizerConfig optimizer_from(const json& j) {
  OptimizerConfig cfg;
  cfg.max_iterations = j.value("max_iterations", cfg.max_iterations);
  cfg.fd_step = j.value("fd_step", cfg.fd_step);
  cfg.grad_tolerance = j.value("grad_tolerance", cfg.grad_tolerance);
  cfg.cost_tolerance = j.value("cost_tolerance", cfg.cost_tolerance);
  cfg.armijo_c = j.value("armijo_c", cfg.armijo_c);
  cfg.backtrack_factor = j.value("backtrack_factor", cfg.backtrack_factor);
  cfg.max_line_search_steps = j.value("max_line_search_steps", cfg.max_line_search_steps);
  return cfg;
}

json estimator_json(const EstimatorConfig& cfg) {
  return json{{"n1", cfg.n1}, {"n2", cfg.n2}, {"n3", cfg.n3}, {"seed", cfg.seed}};
}

EstimatorConfig estimator_from(const json& j) {
  EstimatorConfig cfg;
  cfg.n1 = j.value("n1", cfg.n1);
  cfg.n2 = j.value("n2", cfg.n2);
  cfg.n3 = j.value("n3", cfg.n3);
  cfg.seed = j.value("seed", cfg.seed);
  return cfg;
}

json cost_report_json(const CostReport& r) {
  json j{{"backend", r.backend == CostBackend::Dense ? "dense" : "mps"},
         {"c_hst", r.c_hst},
         {"c_lhst", r.c_lhst},
         {"c_lhst_per_site", r.c_lhst_per_site},
         {"fidelity_lower_bound_hst", r.fidelity_lower_bound_hst},
         {"fidelity_lower_bound_lhst", r.fidelity_lower_bound_lhst}};
  if (r.epsilon_budget) {
    j["epsilon_budget"] = json{{"epsilon_lhst", r.epsilon_budget->epsilon_lhst},
                               {"epsilon_hst", r.epsilon_budget->epsilon_hst},
                               {"epsilon_lr", r.epsilon_budget->epsilon_lr}};
  } else {
    j["epsilon_budget"] = nullptr;
  }
  return j;
}

json trace_json(const OptimizationTrace& trace) {
  json history = json::array();
  for (const auto& rec : trace.history) {
    history.push_back(json{{"iteration", rec.iteration},
                           {"cost", rec.cost},
                           {"grad_norm", rec.grad_norm},
                           {"step_size", rec.step_size},
                           {"seconds", rec.seconds}});
  }
  return json{{"history", std::move(history)},
              {"initial_cost", trace.initial_cost},
              {"final_cost", trace.final_cost},
              {"reason", to_string(trace.reason)},
              {"message", trace.message},
              {"evaluations", trace.evaluations}};
}

json hamiltonian_spec_json(const HamiltonianSpec& spec) {
  json j{{"family", spec.family},
         {"boundary", boundary_name(spec.boundary)},
         {"size", spec.size}};
  if (spec.custom) {
    j["custom"] = hamiltonian_json(*spec.custom);
  } else {
    j["custom"] = nullptr;
  }
  return j;
}

HamiltonianSpec hamiltonian_spec_from(const json& j) {
  HamiltonianSpec spec;
  spec.family = j.value("family", spec.family);
  spec.boundary = boundary_from(j.value("boundary", "periodic"));
  spec.size = j.value("size", 0);
  if (j.contains("custom") && !j["custom"].is_null()) {
    spec.custom = hamiltonian_from(j["custom"]);
  }
  return spec;
}

}  // namespace

std::string to_json(const ParameterVector& theta) { return dump(theta_json(theta)); }
ParameterVector parameters_from_json(const std::string& text) {
  return parse_with(text, [](const json& j) { return theta_from(j); });
}

std::string to_json(const LocalHamiltonian& h) { return dump(hamiltonian_json(h)); }
LocalHamiltonian hamiltonian_from_json(const std::string& text) {
  return parse_with(text, [](const json& j) { return hamiltonian_from(j); });
}

std::string to_json(const CompilationPlan& plan) { return dump(plan_json(plan)); }
CompilationPlan plan_from_json(const std::string& text) {
  return parse_with(text, [](const json& j) { return plan_from(j); });
}

std::string to_json(const LRBoundModel& model) { return dump(model_json(model)); }
LRBoundModel lr_model_from_json(const std::string& text) {
  return parse_with(text, [](const json& j) { return model_from(j); });
}

std::string to_json(const OptimizerConfig& cfg) { return dump(optimizer_json(cfg)); }
OptimizerConfig optimizer_config_from_json(const std::string& text) {
  return parse_with(text, [](const json& j) { return optimizer_from(j); });
}

std::string to_json(const EstimatorConfig& cfg) { return dump(estimator_json(cfg)); }
EstimatorConfig estimator_config_from_json(const std::string& text) {
  return parse_with(text, [](const json& j) { return estimator_from(j); });
}

std::string to_json(const CompileConfig& cfg) {
  json j{{"hamiltonian", hamiltonian_spec_json(cfg.hamiltonian)},
         {"tau", cfg.tau},
         {"depth", cfg.depth},
         {"protocol", protocol_name(cfg.protocol)},
         {"alpha", cfg.alpha},
         {"Ltilde", cfg.Ltilde},
         {"plan_tolerance", cfg.plan_tolerance},
         {"plan_target", target_name(cfg.plan_target)},
         {"Lp", cfg.Lp},
         {"backend", backend_name(cfg.backend)},
         {"chi_max", cfg.chi_max},
         {"svd_cutoff", cfg.svd_cutoff},
         {"dense_limit", cfg.dense_limit},
         {"reference", reference_name(cfg.reference)},
         {"reference_depth", cfg.reference_depth},
         {"optimizer", optimizer_json(cfg.optimizer)},
         {"evaluation_sizes", cfg.evaluation_sizes}};
  j["plan"] = cfg.plan ? plan_json(*cfg.plan) : json(nullptr);
  j["lr_model"] = cfg.lr_model ? model_json(*cfg.lr_model) : json(nullptr);
  return dump(j);
}

CompileConfig compile_config_from_json(const std::string& text) {
  return parse_with(text, [](const json& j) {
    CompileConfig cfg;
    if (j.contains("hamiltonian")) cfg.hamiltonian = hamiltonian_spec_from(j["hamiltonian"]);
    cfg.tau = j.value("tau", cfg.tau);
    cfg.depth = j.value("depth", cfg.depth);
    cfg.protocol = protocol_from(j.value("protocol", "translation_invariant"));
    cfg.alpha = j.value("alpha", cfg.alpha);
    cfg.Ltilde = j.value("Ltilde", cfg.Ltilde);
    if (j.contains("plan") && !j["plan"].is_null()) cfg.plan = plan_from(j["plan"]);
    if (j.contains("lr_model") && !j["lr_model"].is_null()) {
      cfg.lr_model = model_from(j["lr_model"]);
    }
    cfg.plan_tolerance = j.value("plan_tolerance", cfg.plan_tolerance);
    cfg.plan_target = target_from(j.value("plan_target", "local"));
    cfg.Lp = j.value("Lp", cfg.Lp);
    cfg.backend = backend_from(j.value("backend", "dense"));
    cfg.chi_max = j.value("chi_max", cfg.chi_max);
    cfg.svd_cutoff = j.value("svd_cutoff", cfg.svd_cutoff);
    cfg.dense_limit = j.value("dense_limit", cfg.dense_limit);
    cfg.reference = reference_from(j.value("reference", "exact"));
    cfg.reference_depth = j.value("reference_depth", cfg.reference_depth);
    if (j.contains("optimizer")) cfg.optimizer = optimizer_from(j["optimizer"]);
    cfg.evaluation_sizes = j.value("evaluation_sizes", cfg.evaluation_sizes);
    return cfg;
  });
}

std::string to_json(const DynamicsConfig& cfg) {
  return dump(json{{"L", cfg.L},
                   {"Ltilde", cfg.Ltilde},
                   {"initial", initial_name(cfg.initial)},
                   {"steps", cfg.steps},
                   {"tau", cfg.tau},
                   {"backend", backend_name(cfg.backend)},
                   {"chi_max", cfg.chi_max},
                   {"svd_cutoff", cfg.svd_cutoff},
                   {"reference_depth", cfg.reference_depth},
                   {"boundary", boundary_name(cfg.boundary)}});
}

DynamicsConfig dynamics_config_from_json(const std::string& text) {
  return parse_with(text, [](const json& j) {
    DynamicsConfig cfg;
    cfg.L = j.value("L", cfg.L);
    cfg.Ltilde = j.value("Ltilde", cfg.Ltilde);
    cfg.initial = initial_from(j.value("initial", "local_excitation"));
    cfg.steps = j.value("steps", cfg.steps);
    cfg.tau = j.value("tau", cfg.tau);
    cfg.backend = backend_from(j.value("backend", "dense"));
    cfg.chi_max = j.value("chi_max", cfg.chi_max);
    cfg.svd_cutoff = j.value("svd_cutoff", cfg.svd_cutoff);
    cfg.reference_depth = j.value("reference_depth", cfg.reference_depth);
    cfg.boundary = boundary_from(j.value("boundary", "periodic"));
    return cfg;
  });
}

std::string to_json(const CostReport& report) { return dump(cost_report_json(report)); }

std::string to_json(const RunReport& report) {
  json evals = json::array();
  for (const auto& e : report.evaluations) {
    evals.push_back(json{{"L", e.L},
                         {"optimized", cost_report_json(e.optimized)},
                         {"baseline", cost_report_json(e.baseline)}});
  }
  json j{{"Ltilde", report.Ltilde},
         {"depth", report.depth},
         {"tau", report.tau},
         {"alpha", report.alpha},
         {"initial_cost", report.initial_cost},
         {"final_cost", report.final_cost},
         {"theta_opt", theta_json(report.theta_opt)},
         {"theta_baseline", theta_json(report.theta_baseline)},
         {"trace", trace_json(report.trace)},
         {"evaluations", std::move(evals)}};
  j["plan"] = report.plan ? plan_json(*report.plan) : json(nullptr);
  return dump(j);
}

std::string to_json(const DynamicsResult& result) {
  return dump(json{{"times", result.times},
                   {"z_circuit", result.z_circuit},
                   {"z_reference", result.z_reference},
                   {"mse", result.mse}});
}

std::string to_json(const EstimateResult& result, const EstimatorConfig& cfg) {
  return dump(json{{"estimate", result.estimate},
                   {"stderr", result.std_error},
                   {"N1", cfg.n1},
                   {"N2", cfg.n2},
                   {"N3", cfg.n3},
                   {"seed", cfg.seed}});
}

void write_trace_csv(std::ostream& os, const OptimizationTrace& trace) {
  os << "iter,cost,grad_norm,step,seconds\n";
  os << std::setprecision(16);
  for (const auto& rec : trace.history) {
    os << rec.iteration << ',' << rec.cost << ',' << rec.grad_norm << ',' << rec.step_size << ','
       << rec.seconds << '\n';
  }
}

void write_dynamics_csv(std::ostream& os, const DynamicsResult& result, int site) {
  os << "step,t,site,z_circuit,z_reference\n";
  os << std::setprecision(16);
  for (std::size_t n = 0; n < result.times.size(); ++n) {
    os << n << ',' << result.times[n] << ',' << site << ',' << result.z_circuit[n] << ','
       << result.z_reference[n] << '\n';
  }
}

void write_cost_table_csv(std::ostream& os, const RunReport& report) {
  os << "L,parameters,c_lhst,c_hst,fidelity_lower_bound_hst,fidelity_lower_bound_lhst\n";
  os << std::setprecision(16);
  for (const auto& e : report.evaluations) {
    os << e.L << ",optimized," << e.optimized.c_lhst << ',' << e.optimized.c_hst << ','
       << e.optimized.fidelity_lower_bound_hst << ',' << e.optimized.fidelity_lower_bound_lhst
       << '\n';
    os << e.L << ",baseline," << e.baseline.c_lhst << ',' << e.baseline.c_hst << ','
       << e.baseline.fidelity_lower_bound_hst << ',' << e.baseline.fidelity_lower_bound_lhst
       << '\n';
  }
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file for reading: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open file for writing: " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace lvqc
