#pragma once

#include <iosfwd>
#include <string>

#include "lvqc/driver.hpp"
#include "lvqc/mc_estimator.hpp"

namespace lvqc {

// JSON round-trips (pretty-printed, snake_case keys). Parsers accept partial
// objects, filling the documented defaults, and throw std::invalid_argument
// on malformed input.
std::string to_json(const ParameterVector& theta);
ParameterVector parameters_from_json(const std::string& text);

std::string to_json(const LocalHamiltonian& h);
LocalHamiltonian hamiltonian_from_json(const std::string& text);

std::string to_json(const CompilationPlan& plan);
CompilationPlan plan_from_json(const std::string& text);

std::string to_json(const LRBoundModel& model);
LRBoundModel lr_model_from_json(const std::string& text);

std::string to_json(const OptimizerConfig& cfg);
OptimizerConfig optimizer_config_from_json(const std::string& text);

std::string to_json(const EstimatorConfig& cfg);
EstimatorConfig estimator_config_from_json(const std::string& text);

std::string to_json(const CompileConfig& cfg);
CompileConfig compile_config_from_json(const std::string& text);

std::string to_json(const DynamicsConfig& cfg);
DynamicsConfig dynamics_config_from_json(const std::string& text);

// One-way emitters for results.
std::string to_json(const CostReport& report);
std::string to_json(const RunReport& report);
std::string to_json(const DynamicsResult& result);
std::string to_json(const EstimateResult& result, const EstimatorConfig& cfg);

// CSV writers.
void write_trace_csv(std::ostream& os, const OptimizationTrace& trace);
void write_dynamics_csv(std::ostream& os, const DynamicsResult& result, int site);
void write_cost_table_csv(std::ostream& os, const RunReport& report);

// Small file helpers (throw std::runtime_error on I/O failure).
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace lvqc
