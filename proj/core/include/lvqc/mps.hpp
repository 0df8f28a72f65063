#pragma once

#include <array>
#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "lvqc/circuit.hpp"
#include "lvqc/lattice.hpp"
#include "lvqc/statevector.hpp"

namespace lvqc {

struct MpsLimits {
  int chi_max = 0;            // largest kept bond dimension; 0 = unbounded
  double svd_cutoff = 1e-10;  // drop singular values below cutoff * largest
};

// Tensor-train state. Site tensors are stored as one matrix per physical
// basis value: sites[i][s] is the (left bond) x (right bond) matrix of MPS
// position i+1. Tensors left of `center` are left-orthonormal, tensors right
// of it right-orthonormal; gate application truncates to `limits` and
// renormalizes, accumulating the relative discarded weight.
struct MatrixProductState {
  using SiteTensor = std::array<Eigen::MatrixXcd, 2>;

  std::vector<SiteTensor> sites;
  MpsLimits limits;
  int center = 1;
  double discarded_weight = 0.0;

  int size() const { return static_cast<int>(sites.size()); }
  // Bond dimension between positions i and i+1 (1-indexed).
  int bond_dim(int i) const { return static_cast<int>(sites[static_cast<std::size_t>(i - 1)][0].cols()); }
  int max_bond_dim() const;
  double norm() const;
};

// Bond-dimension-1 MPS of a computational basis state; bits[i] is site i+1.
MatrixProductState product_state(const std::vector<int>& bits, MpsLimits limits = {});

// Initial states of the dynamics study on an L-site chain with compilation
// size Ltilde: two local excitations at sites (L-Ltilde)/2 and (L+Ltilde)/2,
// and two domain walls (every site between them flipped, inclusive).
std::vector<int> local_excitation_bits(int L, int Ltilde);
std::vector<int> domain_wall_bits(int L, int Ltilde);

// 2*Ltilde-site doubled register in interleaved order (A1,B1,A2,B2,...) with
// every (A_j,B_j) pair in the Bell state (|00> + |11>)/sqrt(2).
MatrixProductState bell_register(int Ltilde, MpsLimits limits = {});

enum class GateRegister { Plain, ASide, BSide };

// Moves the canonical center by QR sweeps (no truncation).
void canonicalize_to(MatrixProductState& psi, int center);

// Two-qubit gate on MPS positions (a, b); gate index bit 0 addresses the
// qubit at position a. Non-adjacent positions are brought together by swap
// contractions (transiently allowing twice the bond cap) and restored.
void apply_two_qubit_gate_mps(MatrixProductState& psi, const Eigen::Matrix4cd& gate, int a,
                              int b);

// Gate on the logical pair (j, j+1) of the addressed register. Plain acts on
// MPS positions (j, j+1); A-side on (2j-1, 2j+1); B-side on (2j, 2j+2) with
// the entrywise conjugate of the gate (the V* register).
void apply_gate_mps(MatrixProductState& psi, const Eigen::Matrix4cd& gate, int j,
                    GateRegister reg = GateRegister::Plain);

// Applies a brickwork circuit to a plain register (odd sublayer before even;
// periodic wrap gates are swap-routed).
void apply_circuit_mps(MatrixProductState& psi, const BrickworkCircuit& v,
                       GateRegister reg = GateRegister::Plain);

// d steps of (e^{-i H_even tau/d} e^{-i H_odd tau/d}) as bond gates.
MatrixProductState tebd_evolve(const MatrixProductState& psi, const LocalHamiltonian& h,
                               double tau, int steps);

// <psi| P_j |psi> for a single-site Pauli P in {I,X,Y,Z} at MPS position j.
// Moves the canonical center to j (the state itself is unchanged).
double local_expectation(MatrixProductState& psi, char pauli, int j);

// <Pi_j> of the Bell projector on pair (A_j, B_j) of a doubled register.
// Moves the canonical center onto the pair.
double bell_pair_expectation(MatrixProductState& psi, int j);

std::complex<double> overlap(const MatrixProductState& bra, const MatrixProductState& ket);

// Dense amplitudes (capacity-limited; intended for oracles and debugging).
StateVector to_statevector(const MatrixProductState& psi);

// Doubled Bell-register cost evaluator: prepares (U_A x I)|Phi+> once, with
// U the deep-Trotter reference of H at the evaluator's size, then scores
// circuits by applying only their conjugated gates on the B register.
class BellCostEvaluator {
 public:
  BellCostEvaluator(const LocalHamiltonian& h, double tau, int reference_depth, int chi_max,
                    double svd_cutoff);

  int size() const { return size_; }

  double cost_lhst_j(const BrickworkCircuit& v, int j) const;
  std::vector<double> cost_lhst_per_site(const BrickworkCircuit& v) const;
  double cost_hst(const BrickworkCircuit& v) const;
  double cost_alpha_single_site(const BrickworkCircuit& v, double alpha, int j) const;

  // Relative discarded singular-value weight: of the cached reference build,
  // and of the most recent circuit evaluation.
  double reference_truncation_weight() const { return reference_weight_; }
  double last_truncation_weight() const { return last_weight_; }

 private:
  MatrixProductState apply_b_side(const BrickworkCircuit& v) const;

  int size_ = 0;
  MatrixProductState ref_;
  double reference_weight_ = 0.0;
  mutable double last_weight_ = 0.0;
};

// One-shot local cost via the MPS backend: Bell register of size Ltilde,
// depth-d_ref Trotter reference of H on the A side, circuit built from theta
// on the B side, 1 - <Pi_j>. H is tiled to Ltilde when sizes differ.
double cost_lhst_j_mps(const LocalHamiltonian& h, const ParameterVector& theta, double tau,
                       int j, int Ltilde, int d_ref, int chi);

}  // namespace lvqc
