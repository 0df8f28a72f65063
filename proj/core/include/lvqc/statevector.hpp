#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "lvqc/circuit.hpp"
#include "lvqc/lattice.hpp"

namespace lvqc {

// Practical ceiling for building full 2^n objects on one desk machine.
inline constexpr int kDenseQubitLimit = 14;

// Dense unitaries are plain Eigen matrices; builders guarantee U^dag U = I
// to ~1e-10 and consumers treat them as immutable.
using DenseUnitary = Eigen::MatrixXcd;

// Amplitude ordering: site 1 is the lowest-order bit of the basis index.
struct StateVector {
  int size = 0;  // qubit count
  Eigen::VectorXcd amps;

  static StateVector zero_state(int size);
  static StateVector basis_state(int size, std::uint64_t bits);

  double norm() const { return amps.norm(); }
};

// Action of a full-register Pauli string (paulis[j] acts on site j+1,
// letters I/X/Y/Z) on computational basis state |x>:
//   P|x> = phase * |x ^ flip_mask>.
struct PauliAction {
  std::uint64_t flip_mask = 0;
  std::complex<double> phase{1.0, 0.0};
};
PauliAction pauli_action(const std::string& paulis, std::uint64_t x);

// In-place two-qubit gate on sites (a, b), both 1-indexed and distinct. The
// gate basis is |q_a q_b> = {|00>,|01>,|10>,|11>} with q_a the first label.
void apply_two_qubit_gate(StateVector& psi, const Eigen::Matrix4cd& g, int a, int b);

// Applies the circuit layer by layer, odd sublayer before even.
void apply_circuit_inplace(StateVector& psi, const BrickworkCircuit& v);
StateVector apply_circuit(const StateVector& psi, const BrickworkCircuit& v);

// Full 2^L x 2^L matrix of the circuit (capacity-limited).
DenseUnitary circuit_to_unitary(const BrickworkCircuit& v);

// Dense matrix of a LocalHamiltonian in the computational basis.
Eigen::MatrixXcd hamiltonian_matrix(const LocalHamiltonian& h);

// e^{-iH tau} via Hermitian eigendecomposition of the assembled matrix.
DenseUnitary exact_evolution(const LocalHamiltonian& h, double tau);

// Reusable exact propagator for repeated e^{-iH t} applications on one state.
// When H conserves total Z (the Heisenberg case), the eigendecomposition is
// performed per magnetization sector and only for sectors the state actually
// occupies, which reaches register sizes a full dense treatment cannot.
// Decompositions are cached lazily; instances are not safe to share across
// threads.
class ExactPropagator {
 public:
  explicit ExactPropagator(const LocalHamiltonian& h);

  int size() const { return size_; }

  StateVector evolve(const StateVector& psi, double tau) const;

 private:
  struct Sector {
    std::vector<std::uint64_t> basis;
    Eigen::VectorXd evals;
    Eigen::MatrixXd evecs_real;  // used when H is real in the z-basis
    Eigen::MatrixXcd evecs;      // used otherwise
    bool real = false;
  };

  const Sector& sector_for(int popcount) const;

  LocalHamiltonian hamiltonian_;
  int size_ = 0;
  mutable bool sectored_ = true;   // false => single whole-space block (lazily discovered)
  bool real_matrix_ = false;       // every term has an even number of Ys
  mutable std::map<int, Sector> sectors_;  // keyed by popcount (-1 = whole space)
};

// Debug dump: uint32 qubit count, then 2^n (re, im) little-endian doubles.
void dump_statevector(std::ostream& os, const StateVector& psi);
StateVector load_statevector(std::istream& is);

}  // namespace lvqc
