#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "lvqc/circuit.hpp"
#include "lvqc/lattice.hpp"
#include "lvqc/statevector.hpp"

namespace lvqc {

enum class CostBackend { Dense, Mps };

// Error contributions tracked alongside a compilation: the local-cost term,
// the resulting global-cost term, and the Lieb-Robinson truncation term.
struct EpsilonBudget {
  double epsilon_lhst = 0.0;
  double epsilon_hst = 0.0;
  double epsilon_lr = 0.0;
};

struct CostReport {
  double c_hst = 0.0;
  double c_lhst = 0.0;
  std::vector<double> c_lhst_per_site;
  double fidelity_lower_bound_hst = 0.0;
  double fidelity_lower_bound_lhst = 0.0;
  CostBackend backend = CostBackend::Dense;
  std::optional<EpsilonBudget> epsilon_budget;
};

// Global Hilbert-Schmidt-test cost 1 - |Tr(U^dag V)|^2 / 4^L.
double cost_hst(const DenseUnitary& u, const DenseUnitary& v);

// Local HST cost of Bell pair j: 1 - Tr[Pi_j rho_AB(U, V)], evaluated through
// the Pauli trace identity over W = U V^dag (the sign pattern is pinned by a
// fixture test against the explicit doubled-register construction).
double cost_lhst_j(const DenseUnitary& u, const DenseUnitary& v, int j);

// Mean of cost_lhst_j over j = 1..L.
double cost_lhst(const DenseUnitary& u, const DenseUnitary& v);

// Interpolated cost alpha*C_HST + (1-alpha)*C_LHST, alpha in [0,1].
double cost_alpha(const DenseUnitary& u, const DenseUnitary& v, double alpha);

// Average-gate-fidelity bounds from the two costs:
//   (1 - 2^L/(2^L+1) * c_hst, 1 - 2^L/(2^L+1) * L * c_lhst).
// The first is an exact identity, the second a lower bound.
std::pair<double, double> fidelity_bounds(double c_hst, double c_lhst, int L);

// Full dense evaluation of one (U, V) pair.
CostReport dense_cost_report(const DenseUnitary& u, const DenseUnitary& v);

// Embeds u (acting on the 1-indexed register sites `positions`, with u's bit
// k addressing positions[k]) into the identity on an L-site register.
DenseUnitary embed_unitary(const DenseUnitary& u, const std::vector<int>& positions, int L);

// Doubled-register evaluator: caches psi_ref = (U_A x I_B)|Phi+> once (block
// ordering, A = low qubits), then evaluates circuits by applying only the
// conjugated B-side gates. This is the dense workhorse during optimization,
// where the target U is fixed and V changes every evaluation.
class DenseBellEvaluator {
 public:
  explicit DenseBellEvaluator(const DenseUnitary& target);

  int size() const { return size_; }

  double cost_lhst_j(const BrickworkCircuit& v, int j) const;
  std::vector<double> cost_lhst_per_site(const BrickworkCircuit& v) const;
  double cost_hst(const BrickworkCircuit& v) const;
  // alpha*C_HST + (1-alpha)*C_LHST^{(j)} in a single B-side pass.
  double cost_alpha_single_site(const BrickworkCircuit& v, double alpha, int j) const;

 private:
  StateVector apply_b_side(const BrickworkCircuit& v) const;

  int size_ = 0;
  StateVector ref_;
};

// Subsystem cost for generic (non-translation-invariant) compilation:
// (1/L) sum_j C_LHST^{(j)}(U~^{(Lp,j)}, V^{(Ltilde,j)}(theta)), each summand
// on the j-centered Ltilde-window register, with the restricted-Hamiltonian
// propagator padded by identity. Requires 4d >= Lp and
// Ltilde >= Lp + 2 d' + 1 with d' = d - Lp/4.
double subsystem_cost_generic(const LocalHamiltonian& h, const ParameterVector& theta,
                              double tau, int Lp, int Ltilde, int d);

struct PbcCostOptions {
  int dense_limit = 12;        // largest Ltilde evaluated densely
  int reference_depth = 100;   // deep-Trotter depth for the MPS reference
  int chi_max = 30;
  double svd_cutoff = 1e-10;
};

// Local-compilation cost for a translation-invariant periodic Hamiltonian:
// alpha*C_HST + (1-alpha)*C_LHST evaluated at size Ltilde with shared-mode
// theta. Translation invariance lets C_LHST collapse to the single site
// Ltilde/2. Dense below opts.dense_limit, doubled Bell-register MPS above.
double local_compilation_cost_pbc(const LocalHamiltonian& h_pbc, const ParameterVector& theta,
                                  double tau, double alpha, int Ltilde,
                                  const PbcCostOptions& opts = {});

}  // namespace lvqc
