#pragma once

#include <Eigen/Core>
#include <vector>

#include "lvqc/lattice.hpp"

namespace lvqc {

// Angles of the total-Z-conserving two-qubit gate. In the ordered basis
// {|00>,|01>,|10>,|11>} of the two addressed qubits the matrix is
// block-diagonal:
//   [1]                                              on |00>,
//   [[e^{-i(g+z)} cos e,  -i e^{-i(g-c)} sin e],
//    [-i e^{-i(g+c)} sin e,  e^{-i(g-z)} cos e]]     on {|01>,|10>},
//   [e^{-i(2g+f)}]                                   on |11>,
// with (e, z, c, g, f) = (eta, zeta, chi, gamma, phi).
struct TwoQubitGateParams {
  double eta = 0.0;
  double zeta = 0.0;
  double chi = 0.0;
  double gamma = 0.0;
  double phi = 0.0;
};

Eigen::Matrix4cd gate_matrix(const TwoQubitGateParams& p);

enum class ParamMode { Shared, PerGate };

// Flat list of gate angles. Shared (translation-invariant) mode carries 10
// angles per layer: the odd sublayer's 5 then the even sublayer's 5, layers
// in application order. Per-gate mode carries 5 angles per gate in the
// circuit's application order.
struct ParameterVector {
  ParamMode mode = ParamMode::Shared;
  int depth = 0;
  std::vector<double> angles;

  static ParameterVector zeros(int depth);  // shared mode, all angles 0
};

// One placed gate: acts on sites (a, b) with a the first tensor factor of the
// 4x4 matrix. Angles are resolved at construction so restricted circuits are
// self-contained.
struct BrickGate {
  int a = 0;
  int b = 0;
  TwoQubitGateParams params;
};

// One brickwork layer: the odd sublayer (bonds (2k-1, 2k)) acts first, then
// the even sublayer (bonds (2k, 2k+1), plus the (L, 1) wrap gate when
// periodic). Gates within a sublayer have disjoint supports and commute.
struct CircuitLayer {
  std::vector<BrickGate> odd;
  std::vector<BrickGate> even;
};

struct BrickworkCircuit {
  int size = 0;
  Boundary boundary = Boundary::Open;
  ParamMode mode = ParamMode::Shared;
  std::vector<CircuitLayer> layers;
  // Parent-site labels for restricted circuits: window[i] is the parent site
  // of local site i+1. Identity mapping for freshly built circuits.
  std::vector<int> window;

  int depth() const { return static_cast<int>(layers.size()); }
  int gate_count() const;
};

// Canonical brickwork circuit on L sites. Shared mode binds each sublayer of
// layer i to the same angle set; per-gate mode consumes 5 angles per gate in
// application order. Periodic boundary requires even L.
BrickworkCircuit build_brickwork(int size, int depth, const ParameterVector& theta,
                                 Boundary boundary = Boundary::Open);

// Keeps exactly the gates whose support lies inside the j-centered domain
// {j' : dist(j, j') <= diameter/2} and relabels them to local sites
// 1..|domain| (window mapping recorded). Sublayer identity is inherited from
// the parent circuit, not recomputed from local parities.
BrickworkCircuit restrict_circuit(const BrickworkCircuit& v, int center, int diameter);

// Re-tags shared-mode parameters optimized at size Ltilde for use at size L.
// The angles are size-independent; this validates the mode and sizes and
// returns the same angle list.
ParameterVector extend_parameters(const ParameterVector& theta, int Ltilde, int L);

// Shared-mode parameters that make the depth-d brickwork circuit equal (up to
// a global phase) to one first-order Trotter step per layer of the Heisenberg
// chain: every sublayer set is (2t, 0, 0, -2t, 4t) with t = tau/d.
ParameterVector trotter_params(double tau, int depth);

// Brickwork circuit implementing (e^{-iH_even tau/d} e^{-iH_odd tau/d})^d up
// to a global phase, for uniform nearest-neighbor Hamiltonians of XXZ type
// (bond terms J(XX+YY) + K ZZ, which exponentiate to Z-conserving gates).
BrickworkCircuit trotter_circuit(const LocalHamiltonian& h, double tau, int depth);

}  // namespace lvqc
