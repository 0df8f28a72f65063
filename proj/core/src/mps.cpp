#include "lvqc/mps.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <utility>

#include "lvqc/errors.hpp"
#include "lapack_support.hpp"

namespace lvqc {

namespace {

using cd = std::complex<double>;

Eigen::Matrix2cd pauli_matrix(char p) {
  Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
  switch (p) {
    case 'I':
      m.setIdentity();
      break;
    case 'X':
      m(0, 1) = m(1, 0) = 1.0;
      break;
    case 'Y':
      m(0, 1) = cd(0.0, -1.0);
      m(1, 0) = cd(0.0, 1.0);
      break;
    case 'Z':
      m(0, 0) = 1.0;
      m(1, 1) = -1.0;
      break;
    default:
      throw std::invalid_argument("pauli letter must be one of I/X/Y/Z");
  }
  return m;
}

const Eigen::Matrix4cd& swap_gate() {
  static const Eigen::Matrix4cd s = [] {
    Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
    m(0, 0) = m(3, 3) = 1.0;
    m(1, 2) = m(2, 1) = 1.0;
    return m;
  }();
  return s;
}

// Exchanges the roles of the two qubits inside a 4x4 gate (index bit swap).
Eigen::Matrix4cd swap_qubits(const Eigen::Matrix4cd& g) {
  const auto sw = [](int i) { return ((i & 1) << 1) | ((i >> 1) & 1); };
  Eigen::Matrix4cd out;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) out(sw(i), sw(j)) = g(i, j);
  }
  return out;
}

// Left-orthonormalizes position i (1-indexed), pushing the remainder right.
void push_right(MatrixProductState& psi, int i) {
  auto& a = psi.sites[static_cast<std::size_t>(i - 1)];
  auto& b = psi.sites[static_cast<std::size_t>(i)];
  const Eigen::Index l = a[0].rows();
  const Eigen::Index r = a[0].cols();
  Eigen::MatrixXcd m(2 * l, r);
  m.topRows(l) = a[0];
  m.bottomRows(l) = a[1];
  const Eigen::Index k = std::min(2 * l, r);
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(m);
  const Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(2 * l, k);
  const Eigen::MatrixXcd rr = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
  a[0] = q.topRows(l);
  a[1] = q.bottomRows(l);
  b[0] = rr * b[0];
  b[1] = rr * b[1];
}

// Right-orthonormalizes position i, pushing the remainder left.
void push_left(MatrixProductState& psi, int i) {
  auto& a = psi.sites[static_cast<std::size_t>(i - 1)];
  auto& b = psi.sites[static_cast<std::size_t>(i - 2)];
  const Eigen::Index l = a[0].rows();
  const Eigen::Index r = a[0].cols();
  Eigen::MatrixXcd m(l, 2 * r);
  m.leftCols(r) = a[0];
  m.rightCols(r) = a[1];
  const Eigen::Index k = std::min(l, 2 * r);
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(m.adjoint());
  const Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(2 * r, k);
  const Eigen::MatrixXcd rr = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
  const Eigen::MatrixXcd qh = q.adjoint();  // k x 2r, orthonormal rows
  a[0] = qh.leftCols(r);
  a[1] = qh.rightCols(r);
  const Eigen::MatrixXcd lh = rr.adjoint();  // l x k
  b[0] = b[0] * lh;
  b[1] = b[1] * lh;
}

void move_center(MatrixProductState& psi, int target) {
  if (target < 1 || target > psi.size()) {
    throw std::invalid_argument("move_center: target out of range");
  }
  while (psi.center < target) {
    push_right(psi, psi.center);
    ++psi.center;
  }
  while (psi.center > target) {
    push_left(psi, psi.center);
    --psi.center;
  }
}

// Contracts the pair (i, i+1), applies the gate (index bit 0 = position i),
// and splits back with truncation. Leaves the center at i+1.
void apply_adjacent(MatrixProductState& psi, const Eigen::Matrix4cd& g, int i) {
  if (i < 1 || i + 1 > psi.size()) {
    throw std::invalid_argument("apply_adjacent: gate position out of range");
  }
  if (psi.center < i) {
    move_center(psi, i);
  } else if (psi.center > i + 1) {
    move_center(psi, i + 1);
  }
  auto& a = psi.sites[static_cast<std::size_t>(i - 1)];
  auto& b = psi.sites[static_cast<std::size_t>(i)];
  const Eigen::Index l = a[0].rows();
  const Eigen::Index r = b[0].cols();

  Eigen::MatrixXcd theta[2][2];
  for (int s1 = 0; s1 < 2; ++s1) {
    for (int s2 = 0; s2 < 2; ++s2) theta[s1][s2] = a[s1] * b[s2];
  }
  Eigen::MatrixXcd m(2 * l, 2 * r);
  for (int s1 = 0; s1 < 2; ++s1) {
    for (int s2 = 0; s2 < 2; ++s2) {
      Eigen::MatrixXcd block = Eigen::MatrixXcd::Zero(l, r);
      for (int t1 = 0; t1 < 2; ++t1) {
        for (int t2 = 0; t2 < 2; ++t2) {
          const cd coef = g(s1 + 2 * s2, t1 + 2 * t2);
          if (coef != 0.0) block += coef * theta[t1][t2];
        }
      }
      m.block(s1 * l, s2 * r, l, r) = block;
    }
  }

  auto svd = detail::thin_svd_inplace(m);
  const Eigen::Index rank = svd.s.size();
  Eigen::Index k = rank;
  const double smax = svd.s(0);
  while (k > 1 && svd.s(k - 1) < psi.limits.svd_cutoff * smax) --k;
  if (psi.limits.chi_max > 0) k = std::min<Eigen::Index>(k, psi.limits.chi_max);
  const double total = svd.s.squaredNorm();
  const double kept = svd.s.head(k).squaredNorm();
  if (total > 0.0) psi.discarded_weight += (total - kept) / total;
  const Eigen::VectorXd sk = svd.s.head(k) / (kept > 0.0 ? std::sqrt(kept) : 1.0);

  a[0] = svd.u.topRows(l).leftCols(k);
  a[1] = svd.u.bottomRows(l).leftCols(k);
  Eigen::MatrixXcd svh = svd.vh.topRows(k);
  svh.array().colwise() *= sk.array().cast<cd>();
  b[0] = svh.leftCols(r);
  b[1] = svh.rightCols(r);
  psi.center = i + 1;
}

// Re-enforces the bond cap over [lo, hi] after a transiently enlarged route.
void sweep_truncate(MatrixProductState& psi, int lo, int hi) {
  static const Eigen::Matrix4cd id4 = Eigen::Matrix4cd::Identity();
  move_center(psi, lo);
  for (int i = lo; i < hi; ++i) apply_adjacent(psi, id4, i);
}

// Shared by tebd_evolve and the Bell evaluator: e^{-i delta h_bond} for every
// bond, grouped into the odd/even sublayers (odd applied first).
struct BondGates {
  std::vector<std::pair<std::pair<int, int>, Eigen::Matrix4cd>> odd, even;
};

// Two-site operator in the gate index convention (first site = low bit).
Eigen::Matrix4cd two_site_op(const Eigen::Matrix2cd& on_a, const Eigen::Matrix2cd& on_b) {
  Eigen::Matrix4cd out;
  for (int qa1 = 0; qa1 < 2; ++qa1) {
    for (int qb1 = 0; qb1 < 2; ++qb1) {
      for (int qa2 = 0; qa2 < 2; ++qa2) {
        for (int qb2 = 0; qb2 < 2; ++qb2) {
          out(qa1 + 2 * qb1, qa2 + 2 * qb2) = on_a(qa1, qa2) * on_b(qb1, qb2);
        }
      }
    }
  }
  return out;
}

BondGates bond_exponentials(const LocalHamiltonian& h, double delta) {
  const auto [h_even, h_odd] = even_odd_split(h);
  const auto collect = [delta](const LocalHamiltonian& part) {
    std::map<std::pair<int, int>, Eigen::Matrix4cd> bonds;
    for (const auto& term : part.terms) {
      const auto key = std::make_pair(term.sites[0], term.sites[1]);
      auto it = bonds.find(key);
      if (it == bonds.end()) it = bonds.emplace(key, Eigen::Matrix4cd::Zero()).first;
      it->second +=
          term.coeff * two_site_op(pauli_matrix(term.paulis[0]), pauli_matrix(term.paulis[1]));
    }
    std::vector<std::pair<std::pair<int, int>, Eigen::Matrix4cd>> out;
    for (const auto& [key, h4] : bonds) {
      Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(h4);
      Eigen::Vector4cd phases;
      for (int i = 0; i < 4; ++i) {
        phases(i) = std::exp(cd(0.0, -delta * es.eigenvalues()(i)));
      }
      out.emplace_back(key, Eigen::Matrix4cd(es.eigenvectors() * phases.asDiagonal() *
                                             es.eigenvectors().adjoint()));
    }
    return out;
  };
  return BondGates{collect(h_odd), collect(h_even)};
}

// <theta| op |theta> over the contracted pair starting at position i; the
// center must already lie on the pair.
double pair_expectation(MatrixProductState& psi, const Eigen::Matrix4cd& op, int i) {
  if (psi.center < i) {
    move_center(psi, i);
  } else if (psi.center > i + 1) {
    move_center(psi, i + 1);
  }
  const auto& a = psi.sites[static_cast<std::size_t>(i - 1)];
  const auto& b = psi.sites[static_cast<std::size_t>(i)];
  Eigen::MatrixXcd theta[2][2];
  for (int s1 = 0; s1 < 2; ++s1) {
    for (int s2 = 0; s2 < 2; ++s2) theta[s1][s2] = a[s1] * b[s2];
  }
  cd val = 0.0;
  for (int p = 0; p < 4; ++p) {
    for (int q = 0; q < 4; ++q) {
      const cd coef = op(p, q);
      if (coef == 0.0) continue;
      val += coef * theta[p & 1][p >> 1].conjugate().cwiseProduct(theta[q & 1][q >> 1]).sum();
    }
  }
  if (std::abs(val.imag()) > 1e-10) {
    throw IntegrityError("pair expectation picked up a nonreal value");
  }
  return val.real();
}

const Eigen::Matrix4cd& bell_projector() {
  static const Eigen::Matrix4cd pi = [] {
    Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
    // |Phi+><Phi+| on the pair, basis index s_first + 2*s_second.
    m(0, 0) = m(0, 3) = m(3, 0) = m(3, 3) = 0.5;
    return m;
  }();
  return pi;
}

}  // namespace

int MatrixProductState::max_bond_dim() const {
  int chi = 1;
  for (const auto& t : sites) chi = std::max(chi, static_cast<int>(t[0].cols()));
  return chi;
}

double MatrixProductState::norm() const { return std::sqrt(std::abs(overlap(*this, *this))); }

MatrixProductState product_state(const std::vector<int>& bits, MpsLimits limits) {
  if (bits.empty()) throw std::invalid_argument("product_state: empty bit list");
  MatrixProductState psi;
  psi.limits = limits;
  for (const int bit : bits) {
    if (bit != 0 && bit != 1) throw std::invalid_argument("product_state: bits must be 0 or 1");
    MatrixProductState::SiteTensor t;
    t[0] = Eigen::MatrixXcd::Zero(1, 1);
    t[1] = Eigen::MatrixXcd::Zero(1, 1);
    t[static_cast<std::size_t>(bit)](0, 0) = 1.0;
    psi.sites.push_back(std::move(t));
  }
  psi.center = 1;
  return psi;
}

std::vector<int> local_excitation_bits(int L, int Ltilde) {
  const int lo = (L - Ltilde) / 2;
  const int hi = (L + Ltilde) / 2;
  if ((L - Ltilde) % 2 != 0 || lo < 1 || hi > L || lo >= hi) {
    throw std::invalid_argument("local_excitation_bits: (L +- Ltilde)/2 must be valid sites");
  }
  std::vector<int> bits(static_cast<std::size_t>(L), 0);
  bits[static_cast<std::size_t>(lo - 1)] = 1;
  bits[static_cast<std::size_t>(hi - 1)] = 1;
  return bits;
}

std::vector<int> domain_wall_bits(int L, int Ltilde) {
  const int lo = (L - Ltilde) / 2;
  const int hi = (L + Ltilde) / 2;
  if ((L - Ltilde) % 2 != 0 || lo < 1 || hi > L || lo >= hi) {
    throw std::invalid_argument("domain_wall_bits: (L +- Ltilde)/2 must be valid sites");
  }
  std::vector<int> bits(static_cast<std::size_t>(L), 0);
  for (int s = lo; s <= hi; ++s) bits[static_cast<std::size_t>(s - 1)] = 1;
  return bits;
}

MatrixProductState bell_register(int Ltilde, MpsLimits limits) {
  if (Ltilde < 1) throw std::invalid_argument("bell_register: size must be positive");
  MatrixProductState psi;
  psi.limits = limits;
  const double s = 1.0 / std::sqrt(2.0);
  for (int j = 0; j < Ltilde; ++j) {
    MatrixProductState::SiteTensor a, b;
    a[0] = Eigen::MatrixXcd::Zero(1, 2);
    a[1] = Eigen::MatrixXcd::Zero(1, 2);
    a[0](0, 0) = s;
    a[1](0, 1) = s;
    b[0] = Eigen::MatrixXcd::Zero(2, 1);
    b[1] = Eigen::MatrixXcd::Zero(2, 1);
    b[0](0, 0) = 1.0;
    b[1](1, 0) = 1.0;
    psi.sites.push_back(std::move(a));
    psi.sites.push_back(std::move(b));
  }
  // Every tensor is right-orthonormal by construction: center 1 is canonical.
  psi.center = 1;
  return psi;
}

void canonicalize_to(MatrixProductState& psi, int center) {
  if (center < 1 || center > psi.size()) {
    throw std::invalid_argument("canonicalize_to: center out of range");
  }
  for (int i = 1; i < center; ++i) push_right(psi, i);
  for (int i = psi.size(); i > center; --i) push_left(psi, i);
  psi.center = center;
}

void apply_two_qubit_gate_mps(MatrixProductState& psi, const Eigen::Matrix4cd& gate, int a,
                              int b) {
  const int n = psi.size();
  if (a < 1 || b < 1 || a > n || b > n || a == b) {
    throw std::invalid_argument("apply_two_qubit_gate_mps: bad site pair");
  }
  if (b == a + 1) {
    apply_adjacent(psi, gate, a);
    return;
  }
  if (a == b + 1) {
    apply_adjacent(psi, swap_qubits(gate), b);
    return;
  }
  // Swap-route the b qubit next to a. The transit cuts genuinely carry up to
  // twice the resident entanglement, so the cap is doubled for the duration
  // and re-enforced afterwards.
  const MpsLimits saved = psi.limits;
  if (saved.chi_max > 0) psi.limits.chi_max = 2 * saved.chi_max;
  if (b > a) {
    for (int i = b - 1; i >= a + 1; --i) apply_adjacent(psi, swap_gate(), i);
    apply_adjacent(psi, gate, a);
    for (int i = a + 1; i <= b - 1; ++i) apply_adjacent(psi, swap_gate(), i);
  } else {
    for (int i = b; i <= a - 2; ++i) apply_adjacent(psi, swap_gate(), i);
    apply_adjacent(psi, swap_qubits(gate), a - 1);
    for (int i = a - 2; i >= b; --i) apply_adjacent(psi, swap_gate(), i);
  }
  psi.limits = saved;
  if (saved.chi_max > 0) sweep_truncate(psi, std::min(a, b), std::max(a, b));
}

void apply_gate_mps(MatrixProductState& psi, const Eigen::Matrix4cd& gate, int j,
                    GateRegister reg) {
  switch (reg) {
    case GateRegister::Plain:
      apply_two_qubit_gate_mps(psi, gate, j, j + 1);
      break;
    case GateRegister::ASide:
      apply_two_qubit_gate_mps(psi, gate, 2 * j - 1, 2 * j + 1);
      break;
    case GateRegister::BSide:
      apply_two_qubit_gate_mps(psi, gate.conjugate(), 2 * j, 2 * j + 2);
      break;
  }
}

void apply_circuit_mps(MatrixProductState& psi, const BrickworkCircuit& v, GateRegister reg) {
  const auto apply_one = [&psi, reg](const BrickGate& g) {
    const Eigen::Matrix4cd mat = gate_matrix(g.params);
    switch (reg) {
      case GateRegister::Plain:
        apply_two_qubit_gate_mps(psi, mat, g.a, g.b);
        break;
      case GateRegister::ASide:
        apply_two_qubit_gate_mps(psi, mat, 2 * g.a - 1, 2 * g.b - 1);
        break;
      case GateRegister::BSide:
        apply_two_qubit_gate_mps(psi, mat.conjugate(), 2 * g.a, 2 * g.b);
        break;
    }
  };
  const int expect = reg == GateRegister::Plain ? v.size : 2 * v.size;
  if (psi.size() != expect) throw std::invalid_argument("apply_circuit_mps: size mismatch");
  for (const auto& layer : v.layers) {
    for (const auto& g : layer.odd) apply_one(g);
    for (const auto& g : layer.even) apply_one(g);
  }
}

MatrixProductState tebd_evolve(const MatrixProductState& psi, const LocalHamiltonian& h,
                               double tau, int steps) {
  h.validate();
  if (steps < 1) throw std::invalid_argument("tebd_evolve: steps must be >= 1");
  if (h.lattice.size != psi.size()) throw std::invalid_argument("tebd_evolve: size mismatch");
  MatrixProductState out = psi;
  if (tau == 0.0) return out;
  const BondGates gates = bond_exponentials(h, tau / steps);
  for (int step = 0; step < steps; ++step) {
    for (const auto& [bond, g] : gates.odd) apply_two_qubit_gate_mps(out, g, bond.first, bond.second);
    for (const auto& [bond, g] : gates.even) apply_two_qubit_gate_mps(out, g, bond.first, bond.second);
  }
  return out;
}

double local_expectation(MatrixProductState& psi, char pauli, int j) {
  if (j < 1 || j > psi.size()) throw std::invalid_argument("local_expectation: site out of range");
  const Eigen::Matrix2cd p = pauli_matrix(pauli);
  move_center(psi, j);
  const auto& c = psi.sites[static_cast<std::size_t>(j - 1)];
  cd val = 0.0;
  for (int sp = 0; sp < 2; ++sp) {
    for (int s = 0; s < 2; ++s) {
      const cd coef = p(sp, s);
      if (coef == 0.0) continue;
      val += coef * c[sp].conjugate().cwiseProduct(c[s]).sum();
    }
  }
  if (std::abs(val.imag()) > 1e-10) {
    throw IntegrityError("local_expectation: nonreal expectation value");
  }
  return val.real();
}

double bell_pair_expectation(MatrixProductState& psi, int j) {
  if (psi.size() % 2 != 0 || j < 1 || 2 * j > psi.size()) {
    throw std::invalid_argument("bell_pair_expectation: bad pair index");
  }
  return pair_expectation(psi, bell_projector(), 2 * j - 1);
}

std::complex<double> overlap(const MatrixProductState& bra, const MatrixProductState& ket) {
  if (bra.size() != ket.size()) throw std::invalid_argument("overlap: size mismatch");
  Eigen::MatrixXcd e = Eigen::MatrixXcd::Ones(1, 1);
  for (std::size_t i = 0; i < bra.sites.size(); ++i) {
    const Eigen::MatrixXcd next = bra.sites[i][0].adjoint() * e * ket.sites[i][0] +
                                  bra.sites[i][1].adjoint() * e * ket.sites[i][1];
    e = next;
  }
  return e(0, 0);
}

StateVector to_statevector(const MatrixProductState& psi) {
  const int n = psi.size();
  if (n > 24) throw CapacityError("to_statevector: register too large for dense amplitudes");
  Eigen::MatrixXcd r = Eigen::MatrixXcd::Ones(1, 1);
  for (int i = 0; i < n; ++i) {
    const auto& t = psi.sites[static_cast<std::size_t>(i)];
    Eigen::MatrixXcd next(2 * r.rows(), t[0].cols());
    next.topRows(r.rows()) = r * t[0];
    next.bottomRows(r.rows()) = r * t[1];
    r = std::move(next);
  }
  StateVector out;
  out.size = n;
  out.amps = r.col(0);
  return out;
}

BellCostEvaluator::BellCostEvaluator(const LocalHamiltonian& h, double tau, int reference_depth,
                                     int chi_max, double svd_cutoff) {
  h.validate();
  if (reference_depth < 1) {
    throw std::invalid_argument("BellCostEvaluator: reference depth must be >= 1");
  }
  size_ = h.lattice.size;
  ref_ = bell_register(size_, MpsLimits{chi_max, svd_cutoff});
  if (tau != 0.0) {
    const BondGates gates = bond_exponentials(h, tau / reference_depth);
    for (int step = 0; step < reference_depth; ++step) {
      for (const auto& [bond, g] : gates.odd) {
        apply_two_qubit_gate_mps(ref_, g, 2 * bond.first - 1, 2 * bond.second - 1);
      }
      for (const auto& [bond, g] : gates.even) {
        apply_two_qubit_gate_mps(ref_, g, 2 * bond.first - 1, 2 * bond.second - 1);
      }
    }
  }
  reference_weight_ = ref_.discarded_weight;
  ref_.discarded_weight = 0.0;
}

MatrixProductState BellCostEvaluator::apply_b_side(const BrickworkCircuit& v) const {
  if (v.size != size_) throw std::invalid_argument("BellCostEvaluator: circuit size mismatch");
  MatrixProductState psi = ref_;
  for (const auto& layer : v.layers) {
    for (const auto& g : layer.odd) {
      apply_two_qubit_gate_mps(psi, gate_matrix(g.params).conjugate(), 2 * g.a, 2 * g.b);
    }
    for (const auto& g : layer.even) {
      apply_two_qubit_gate_mps(psi, gate_matrix(g.params).conjugate(), 2 * g.a, 2 * g.b);
    }
  }
  last_weight_ = psi.discarded_weight;
  return psi;
}

double BellCostEvaluator::cost_lhst_j(const BrickworkCircuit& v, int j) const {
  if (j < 1 || j > size_) throw std::invalid_argument("cost_lhst_j: bad pair index");
  MatrixProductState psi = apply_b_side(v);
  return detail::clamp_unit_interval(1.0 - bell_pair_expectation(psi, j), "cost_lhst_j (mps)");
}

std::vector<double> BellCostEvaluator::cost_lhst_per_site(const BrickworkCircuit& v) const {
  MatrixProductState psi = apply_b_side(v);
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(size_));
  for (int j = 1; j <= size_; ++j) {
    out.push_back(
        detail::clamp_unit_interval(1.0 - bell_pair_expectation(psi, j), "cost_lhst_j (mps)"));
  }
  return out;
}

double BellCostEvaluator::cost_hst(const BrickworkCircuit& v) const {
  MatrixProductState psi = apply_b_side(v);
  const MatrixProductState plain = bell_register(size_);
  const double fid = std::norm(overlap(plain, psi));
  return detail::clamp_unit_interval(1.0 - fid, "cost_hst (mps)");
}

double BellCostEvaluator::cost_alpha_single_site(const BrickworkCircuit& v, double alpha,
                                                 int j) const {
  if (alpha < 0.0 || alpha > 1.0) {
    throw std::invalid_argument("cost_alpha_single_site: alpha must lie in [0,1]");
  }
  MatrixProductState psi = apply_b_side(v);
  double cost = 0.0;
  if (alpha < 1.0) {
    cost += (1.0 - alpha) * detail::clamp_unit_interval(1.0 - bell_pair_expectation(psi, j),
                                                        "cost_lhst_j (mps)");
  }
  if (alpha > 0.0) {
    const MatrixProductState plain = bell_register(size_);
    cost += alpha * detail::clamp_unit_interval(1.0 - std::norm(overlap(plain, psi)),
                                                "cost_hst (mps)");
  }
  return cost;
}

double cost_lhst_j_mps(const LocalHamiltonian& h, const ParameterVector& theta, double tau,
                       int j, int Ltilde, int d_ref, int chi) {
  const LocalHamiltonian h_sub =
      h.lattice.size == Ltilde ? h : tile_translation_invariant(h, Ltilde);
  const BellCostEvaluator eval(h_sub, tau, d_ref, chi, 1e-10);
  const BrickworkCircuit v = build_brickwork(Ltilde, theta.depth, theta, h_sub.lattice.boundary);
  const double cost = eval.cost_lhst_j(v, j);
  const double weight = eval.reference_truncation_weight() + eval.last_truncation_weight();
  if (weight > 1e-2) {
    throw CapacityError("cost_lhst_j_mps: bond dimension " + std::to_string(chi) +
                        " too small; discarded truncation weight " + std::to_string(weight));
  }
  return cost;
}

}  // namespace lvqc
