#include "lvqc/statevector.hpp"

#include <bit>
#include <cmath>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <unordered_map>
#include <utility>

#include "lvqc/errors.hpp"
#include "lapack_support.hpp"

namespace lvqc {

using std::complex;
using cd = std::complex<double>;

StateVector StateVector::zero_state(int size) { return basis_state(size, 0); }

StateVector StateVector::basis_state(int size, std::uint64_t bits) {
  if (size < 1 || size > 62) throw std::invalid_argument("StateVector: bad qubit count");
  if (bits >> size) throw std::invalid_argument("StateVector: basis label out of range");
  StateVector psi;
  psi.size = size;
  psi.amps = Eigen::VectorXcd::Zero(std::int64_t(1) << size);
  psi.amps[static_cast<std::int64_t>(bits)] = 1.0;
  return psi;
}

PauliAction pauli_action(const std::string& paulis, std::uint64_t x) {
  PauliAction act;
  for (std::size_t j = 0; j < paulis.size(); ++j) {
    const bool bit = (x >> j) & 1u;
    switch (paulis[j]) {
      case 'I':
        break;
      case 'X':
        act.flip_mask |= std::uint64_t(1) << j;
        break;
      case 'Y':
        act.flip_mask |= std::uint64_t(1) << j;
        act.phase *= bit ? cd(0.0, -1.0) : cd(0.0, 1.0);
        break;
      case 'Z':
        if (bit) act.phase = -act.phase;
        break;
      default:
        throw std::invalid_argument("pauli_action: letters must be I/X/Y/Z");
    }
  }
  return act;
}

namespace {

// Action of one Hamiltonian term on basis state |x>: returns (y, amplitude)
// with term|x> = amplitude |y>.
std::pair<std::uint64_t, cd> apply_term(const PauliTerm& term, std::uint64_t x) {
  std::uint64_t y = x;
  cd amp = term.coeff;
  for (std::size_t i = 0; i < term.sites.size(); ++i) {
    const std::uint64_t mask = std::uint64_t(1) << (term.sites[i] - 1);
    const bool bit = (x & mask) != 0;
    switch (term.paulis[i]) {
      case 'X':
        y ^= mask;
        break;
      case 'Y':
        y ^= mask;
        amp *= bit ? cd(0.0, -1.0) : cd(0.0, 1.0);
        break;
      case 'Z':
        if (bit) amp = -amp;
        break;
      default:
        throw std::invalid_argument("hamiltonian term letters must be X/Y/Z");
    }
  }
  return {y, amp};
}

bool real_in_z_basis(const LocalHamiltonian& h) {
  for (const auto& term : h.terms) {
    if (std::count(term.paulis.begin(), term.paulis.end(), 'Y') % 2 != 0) return false;
  }
  return true;
}

// Inserts a zero bit at the position singled out by `mask` (a power of two).
inline std::uint64_t insert_zero_bit(std::uint64_t i, std::uint64_t mask) {
  return ((i & ~(mask - 1)) << 1) | (i & (mask - 1));
}

}  // namespace

void apply_two_qubit_gate(StateVector& psi, const Eigen::Matrix4cd& g, int a, int b) {
  const int n = psi.size;
  if (a < 1 || b < 1 || a > n || b > n || a == b) {
    throw std::invalid_argument("apply_two_qubit_gate: bad site pair");
  }
  const std::uint64_t ma = std::uint64_t(1) << (a - 1);
  const std::uint64_t mb = std::uint64_t(1) << (b - 1);
  const std::uint64_t lo = std::min(ma, mb);
  const std::uint64_t hi = std::max(ma, mb);
  const std::uint64_t blocks = std::uint64_t(1) << (n - 2);

  // Gate index convention: bit 0 of the 4x4 index is the first site (a).
  const cd g00 = g(0, 0), g01 = g(0, 1), g02 = g(0, 2), g03 = g(0, 3);
  const cd g10 = g(1, 0), g11 = g(1, 1), g12 = g(1, 2), g13 = g(1, 3);
  const cd g20 = g(2, 0), g21 = g(2, 1), g22 = g(2, 2), g23 = g(2, 3);
  const cd g30 = g(3, 0), g31 = g(3, 1), g32 = g(3, 2), g33 = g(3, 3);

  cd* p = psi.amps.data();
  for (std::uint64_t k = 0; k < blocks; ++k) {
    const std::uint64_t base = insert_zero_bit(insert_zero_bit(k, lo), hi);
    const std::uint64_t i0 = base;
    const std::uint64_t i1 = base | ma;
    const std::uint64_t i2 = base | mb;
    const std::uint64_t i3 = base | ma | mb;
    const cd v0 = p[i0], v1 = p[i1], v2 = p[i2], v3 = p[i3];
    p[i0] = g00 * v0 + g01 * v1 + g02 * v2 + g03 * v3;
    p[i1] = g10 * v0 + g11 * v1 + g12 * v2 + g13 * v3;
    p[i2] = g20 * v0 + g21 * v1 + g22 * v2 + g23 * v3;
    p[i3] = g30 * v0 + g31 * v1 + g32 * v2 + g33 * v3;
  }
}

void apply_circuit_inplace(StateVector& psi, const BrickworkCircuit& v) {
  if (psi.size != v.size) throw std::invalid_argument("apply_circuit: size mismatch");
  for (const auto& layer : v.layers) {
    for (const auto& gate : layer.odd) {
      apply_two_qubit_gate(psi, gate_matrix(gate.params), gate.a, gate.b);
    }
    for (const auto& gate : layer.even) {
      apply_two_qubit_gate(psi, gate_matrix(gate.params), gate.a, gate.b);
    }
  }
}

StateVector apply_circuit(const StateVector& psi, const BrickworkCircuit& v) {
  StateVector out = psi;
  apply_circuit_inplace(out, v);
  return out;
}

DenseUnitary circuit_to_unitary(const BrickworkCircuit& v) {
  if (v.size > kDenseQubitLimit) {
    throw CapacityError("circuit_to_unitary: register too large for a dense matrix");
  }
  const std::int64_t dim = std::int64_t(1) << v.size;
  DenseUnitary u(dim, dim);
  for (std::int64_t col = 0; col < dim; ++col) {
    StateVector psi = StateVector::basis_state(v.size, static_cast<std::uint64_t>(col));
    apply_circuit_inplace(psi, v);
    u.col(col) = psi.amps;
  }
  return u;
}

Eigen::MatrixXcd hamiltonian_matrix(const LocalHamiltonian& h) {
  h.validate();
  const int n = h.lattice.size;
  if (n > kDenseQubitLimit) {
    throw CapacityError("hamiltonian_matrix: register too large for a dense matrix");
  }
  const std::int64_t dim = std::int64_t(1) << n;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (std::int64_t x = 0; x < dim; ++x) {
    for (const auto& term : h.terms) {
      const auto [y, amp] = apply_term(term, static_cast<std::uint64_t>(x));
      m(static_cast<std::int64_t>(y), x) += amp;
    }
  }
  return m;
}

DenseUnitary exact_evolution(const LocalHamiltonian& h, double tau) {
  h.validate();
  const int n = h.lattice.size;
  if (n > kDenseQubitLimit) {
    throw CapacityError(
        "exact_evolution: register exceeds the dense threshold; use the MPS backend");
  }
  const std::int64_t dim = std::int64_t(1) << n;
  const cd minus_i(0.0, -1.0);
  if (real_in_z_basis(h)) {
    Eigen::MatrixXd a = hamiltonian_matrix(h).real();
    const Eigen::VectorXd w = detail::symmetric_eigen_inplace(a);
    Eigen::MatrixXcd v = a.cast<cd>();
    for (std::int64_t j = 0; j < dim; ++j) v.col(j) *= std::exp(minus_i * w[j] * tau);
    DenseUnitary u(dim, dim);
    u.noalias() = v * a.transpose().cast<cd>();
    return u;
  }
  Eigen::MatrixXcd a = hamiltonian_matrix(h);
  const Eigen::VectorXd w = detail::hermitian_eigen_inplace(a);
  Eigen::MatrixXcd v = a;
  for (std::int64_t j = 0; j < dim; ++j) v.col(j) *= std::exp(minus_i * w[j] * tau);
  DenseUnitary u(dim, dim);
  u.noalias() = v * a.adjoint();
  return u;
}

// --- ExactPropagator ---------------------------------------------------------

namespace {

// Raised internally when a supposedly Z-conserving Hamiltonian leaks between
// magnetization sectors; triggers the whole-space fallback.
struct NotSectored {};

constexpr std::int64_t kMaxBlockDim = 16384;

}  // namespace

ExactPropagator::ExactPropagator(const LocalHamiltonian& h) : hamiltonian_(h) {
  hamiltonian_.validate();
  size_ = hamiltonian_.lattice.size;
  real_matrix_ = real_in_z_basis(hamiltonian_);
}

const ExactPropagator::Sector& ExactPropagator::sector_for(int popcount) const {
  auto it = sectors_.find(popcount);
  if (it != sectors_.end()) return it->second;

  Sector s;
  const std::uint64_t dim_full = std::uint64_t(1) << size_;
  if (popcount < 0) {
    s.basis.resize(dim_full);
    for (std::uint64_t x = 0; x < dim_full; ++x) s.basis[x] = x;
  } else {
    for (std::uint64_t x = 0; x < dim_full; ++x) {
      if (std::popcount(x) == popcount) s.basis.push_back(x);
    }
  }
  const std::int64_t dim = static_cast<std::int64_t>(s.basis.size());
  if (dim > kMaxBlockDim) {
    throw CapacityError(
        "ExactPropagator: occupied magnetization sector too large for dense "
        "eigendecomposition; use the MPS backend");
  }

  std::unordered_map<std::uint64_t, std::int64_t> index_of;
  index_of.reserve(s.basis.size() * 2);
  for (std::int64_t i = 0; i < dim; ++i) index_of.emplace(s.basis[i], i);

  s.real = real_matrix_;
  Eigen::MatrixXd a_real;
  Eigen::MatrixXcd a_cplx;
  if (s.real) {
    a_real = Eigen::MatrixXd::Zero(dim, dim);
  } else {
    a_cplx = Eigen::MatrixXcd::Zero(dim, dim);
  }
  std::unordered_map<std::uint64_t, cd> leak;
  for (std::int64_t c = 0; c < dim; ++c) {
    leak.clear();
    for (const auto& term : hamiltonian_.terms) {
      const auto [y, amp] = apply_term(term, s.basis[c]);
      const auto hit = index_of.find(y);
      if (hit != index_of.end()) {
        if (s.real) {
          a_real(hit->second, c) += amp.real();
        } else {
          a_cplx(hit->second, c) += amp;
        }
      } else {
        leak[y] += amp;
      }
    }
    for (const auto& [y, amp] : leak) {
      if (std::abs(amp) > 1e-12) throw NotSectored{};
    }
  }

  if (s.real) {
    s.evals = detail::symmetric_eigen_inplace(a_real);
    s.evecs_real = std::move(a_real);
  } else {
    s.evals = detail::hermitian_eigen_inplace(a_cplx);
    s.evecs = std::move(a_cplx);
  }
  return sectors_.emplace(popcount, std::move(s)).first->second;
}

StateVector ExactPropagator::evolve(const StateVector& psi, double tau) const {
  if (psi.size != size_) throw std::invalid_argument("ExactPropagator: size mismatch");

  // Group occupied basis states by magnetization sector.
  std::map<int, std::vector<std::int64_t>> occupied;
  const std::int64_t dim_full = std::int64_t(1) << size_;
  for (std::int64_t x = 0; x < dim_full; ++x) {
    if (std::abs(psi.amps[x]) > 0.0) {
      const int key = sectored_ ? std::popcount(static_cast<std::uint64_t>(x)) : -1;
      occupied[key].push_back(x);
    }
  }

  StateVector out;
  out.size = size_;
  out.amps = Eigen::VectorXcd::Zero(dim_full);
  const cd minus_i(0.0, -1.0);
  for (const auto& [key, _] : occupied) {
    const Sector* sector = nullptr;
    try {
      sector = &sector_for(key);
    } catch (const NotSectored&) {
      if (size_ > kDenseQubitLimit) {
        throw CapacityError(
            "ExactPropagator: Hamiltonian does not conserve total Z and the register "
            "exceeds the dense threshold");
      }
      sectored_ = false;
      sectors_.clear();
      return evolve(psi, tau);
    }
    const std::int64_t dim = static_cast<std::int64_t>(sector->basis.size());
    Eigen::VectorXcd a(dim);
    for (std::int64_t i = 0; i < dim; ++i) {
      a[i] = psi.amps[static_cast<std::int64_t>(sector->basis[i])];
    }
    Eigen::VectorXcd coeff;
    if (sector->real) {
      coeff = (sector->evecs_real.transpose() * a.real()).cast<cd>() +
              cd(0.0, 1.0) * (sector->evecs_real.transpose() * a.imag()).cast<cd>();
    } else {
      coeff = sector->evecs.adjoint() * a;
    }
    for (std::int64_t i = 0; i < dim; ++i) coeff[i] *= std::exp(minus_i * sector->evals[i] * tau);
    Eigen::VectorXcd b;
    if (sector->real) {
      b = (sector->evecs_real * coeff.real()).cast<cd>() +
          cd(0.0, 1.0) * (sector->evecs_real * coeff.imag()).cast<cd>();
    } else {
      b = sector->evecs * coeff;
    }
    for (std::int64_t i = 0; i < dim; ++i) {
      out.amps[static_cast<std::int64_t>(sector->basis[i])] += b[i];
    }
  }
  return out;
}

// --- Binary statevector dump (little-endian host assumed) --------------------

void dump_statevector(std::ostream& os, const StateVector& psi) {
  const std::uint32_t n = static_cast<std::uint32_t>(psi.size);
  os.write(reinterpret_cast<const char*>(&n), sizeof(n));
  os.write(reinterpret_cast<const char*>(psi.amps.data()),
           static_cast<std::streamsize>(sizeof(cd) * psi.amps.size()));
}

StateVector load_statevector(std::istream& is) {
  std::uint32_t n = 0;
  is.read(reinterpret_cast<char*>(&n), sizeof(n));
  if (!is || n < 1 || n > 62) throw std::runtime_error("load_statevector: bad header");
  StateVector psi;
  psi.size = static_cast<int>(n);
  psi.amps.resize(std::int64_t(1) << n);
  is.read(reinterpret_cast<char*>(psi.amps.data()),
          static_cast<std::streamsize>(sizeof(cd) * psi.amps.size()));
  if (!is) throw std::runtime_error("load_statevector: truncated payload");
  return psi;
}

}  // namespace lvqc
