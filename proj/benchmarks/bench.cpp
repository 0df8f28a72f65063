// Microbenchmarks for the kernels the optimization loop lives in: the dense
// two-qubit gate, the MPS gate (bond growth + SVD truncation), full cost
// evaluations on both backends, and one TEBD reference step.

#include <benchmark/benchmark.h>

#include <random>

#include "lvqc/circuit.hpp"
#include "lvqc/cost.hpp"
#include "lvqc/lattice.hpp"
#include "lvqc/mps.hpp"
#include "lvqc/statevector.hpp"

namespace {

lvqc::TwoQubitGateParams random_params(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dist(-1.5, 1.5);
  return {dist(rng), dist(rng), dist(rng), dist(rng), dist(rng)};
}

lvqc::StateVector random_state(int size, std::mt19937_64& rng) {
  lvqc::StateVector psi = lvqc::StateVector::zero_state(size);
  std::normal_distribution<double> dist;
  for (Eigen::Index i = 0; i < psi.amps.size(); ++i) {
    psi.amps[i] = std::complex<double>(dist(rng), dist(rng));
  }
  psi.amps /= psi.amps.norm();
  return psi;
}

void BM_DenseGateKernel(benchmark::State& state) {
  const int size = static_cast<int>(state.range(0));
  std::mt19937_64 rng(7);
  lvqc::StateVector psi = random_state(size, rng);
  const Eigen::Matrix4cd g = lvqc::gate_matrix(random_params(rng));
  int a = 1;
  for (auto _ : state) {
    lvqc::apply_two_qubit_gate(psi, g, a, a + 1);
    a = a % (size - 1) + 1;
    benchmark::DoNotOptimize(psi.amps.data());
  }
  state.SetItemsProcessed(state.iterations() << size);
}
BENCHMARK(BM_DenseGateKernel)->Arg(10)->Arg(14);

void BM_DenseCircuit(benchmark::State& state) {
  const int size = static_cast<int>(state.range(0));
  std::mt19937_64 rng(11);
  lvqc::StateVector psi = random_state(size, rng);
  const lvqc::BrickworkCircuit v =
      lvqc::build_brickwork(size, 5, lvqc::trotter_params(0.5, 5), lvqc::Boundary::Periodic);
  for (auto _ : state) {
    lvqc::apply_circuit_inplace(psi, v);
    benchmark::DoNotOptimize(psi.amps.data());
  }
}
BENCHMARK(BM_DenseCircuit)->Arg(12);

void BM_MpsGate(benchmark::State& state) {
  const int chi = static_cast<int>(state.range(0));
  std::mt19937_64 rng(13);
  // Warm a random state up to bond dimension chi with a few brickwork sweeps.
  lvqc::MatrixProductState psi = lvqc::product_state(std::vector<int>(24, 0), {chi, 1e-12});
  for (int sweep = 0; sweep < 8; ++sweep) {
    for (int j = 1; j < 24; ++j) {
      lvqc::apply_gate_mps(psi, lvqc::gate_matrix(random_params(rng)), j);
    }
  }
  const Eigen::Matrix4cd g = lvqc::gate_matrix(random_params(rng));
  int j = 11;
  for (auto _ : state) {
    lvqc::apply_gate_mps(psi, g, j);
    j = j % 23 + 1;
    benchmark::DoNotOptimize(psi.discarded_weight);
  }
}
BENCHMARK(BM_MpsGate)->Arg(16)->Arg(30)->Arg(60);

void BM_DenseCostEvaluation(benchmark::State& state) {
  const int size = static_cast<int>(state.range(0));
  const lvqc::LocalHamiltonian h = lvqc::build_heisenberg_afm(size, lvqc::Boundary::Periodic);
  const lvqc::DenseBellEvaluator eval(lvqc::exact_evolution(h, 0.5));
  const lvqc::BrickworkCircuit v =
      lvqc::build_brickwork(size, 3, lvqc::trotter_params(0.5, 3), lvqc::Boundary::Periodic);
  for (auto _ : state) {
    benchmark::DoNotOptimize(eval.cost_lhst_j(v, size / 2));
  }
}
BENCHMARK(BM_DenseCostEvaluation)->Arg(6)->Arg(8)->Arg(10);

void BM_MpsCostEvaluation(benchmark::State& state) {
  const int size = static_cast<int>(state.range(0));
  const int chi = 30;
  const lvqc::LocalHamiltonian h = lvqc::build_heisenberg_afm(size, lvqc::Boundary::Periodic);
  const lvqc::BellCostEvaluator eval(h, 0.5, 20, chi, 1e-10);
  const lvqc::BrickworkCircuit v =
      lvqc::build_brickwork(size, 5, lvqc::trotter_params(0.5, 5), lvqc::Boundary::Periodic);
  for (auto _ : state) {
    benchmark::DoNotOptimize(eval.cost_lhst_j(v, size / 2));
  }
}
BENCHMARK(BM_MpsCostEvaluation)->Arg(12)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_TebdStep(benchmark::State& state) {
  const int size = static_cast<int>(state.range(0));
  const lvqc::LocalHamiltonian h = lvqc::build_heisenberg_afm(size, lvqc::Boundary::Open);
  lvqc::MatrixProductState psi =
      lvqc::product_state(lvqc::local_excitation_bits(size, size / 2), {60, 1e-10});
  // A few steps of pre-evolution so the benchmark sees realistic bonds.
  psi = lvqc::tebd_evolve(psi, h, 2.0, 20);
  for (auto _ : state) {
    benchmark::DoNotOptimize(lvqc::tebd_evolve(psi, h, 0.05, 1));
  }
}
BENCHMARK(BM_TebdStep)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);

void BM_ExactEvolution(benchmark::State& state) {
  const int size = static_cast<int>(state.range(0));
  const lvqc::LocalHamiltonian h = lvqc::build_heisenberg_afm(size, lvqc::Boundary::Periodic);
  for (auto _ : state) {
    benchmark::DoNotOptimize(lvqc::exact_evolution(h, 0.5));
  }
}
BENCHMARK(BM_ExactEvolution)->Arg(6)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
