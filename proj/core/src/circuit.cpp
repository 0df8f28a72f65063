#include "lvqc/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <stdexcept>

namespace lvqc {

using std::complex;

Eigen::Matrix4cd gate_matrix(const TwoQubitGateParams& p) {
  const complex<double> I(0.0, 1.0);
  const auto phase = [&I](double t) { return std::exp(-I * t); };
  Eigen::Matrix4cd g = Eigen::Matrix4cd::Zero();
  g(0, 0) = 1.0;
  g(1, 1) = phase(p.gamma + p.zeta) * std::cos(p.eta);
  g(1, 2) = -I * phase(p.gamma - p.chi) * std::sin(p.eta);
  g(2, 1) = -I * phase(p.gamma + p.chi) * std::sin(p.eta);
  g(2, 2) = phase(p.gamma - p.zeta) * std::cos(p.eta);
  g(3, 3) = phase(2.0 * p.gamma + p.phi);
  return g;
}

ParameterVector ParameterVector::zeros(int depth) {
  if (depth < 1) throw std::invalid_argument("ParameterVector::zeros: depth must be >= 1");
  return ParameterVector{ParamMode::Shared, depth, std::vector<double>(10 * depth, 0.0)};
}

int BrickworkCircuit::gate_count() const {
  int n = 0;
  for (const auto& layer : layers) {
    n += static_cast<int>(layer.odd.size() + layer.even.size());
  }
  return n;
}

namespace {

TwoQubitGateParams angles_at(const std::vector<double>& a, std::size_t offset) {
  return TwoQubitGateParams{a[offset], a[offset + 1], a[offset + 2], a[offset + 3],
                            a[offset + 4]};
}

}  // namespace

BrickworkCircuit build_brickwork(int size, int depth, const ParameterVector& theta,
                                 Boundary boundary) {
  if (size < 2) throw std::invalid_argument("build_brickwork: need at least 2 sites");
  if (depth < 1) throw std::invalid_argument("build_brickwork: depth must be >= 1");
  if (theta.depth != depth) {
    throw std::invalid_argument("build_brickwork: parameter depth does not match circuit depth");
  }
  if (boundary == Boundary::Periodic && size % 2 != 0) {
    throw std::invalid_argument("build_brickwork: periodic boundary requires even size");
  }

  // Enumerate bond placements once; they repeat identically in every layer.
  std::vector<std::pair<int, int>> odd_bonds, even_bonds;
  for (int k = 1; 2 * k <= size; ++k) odd_bonds.emplace_back(2 * k - 1, 2 * k);
  for (int k = 1; 2 * k + 1 <= size; ++k) even_bonds.emplace_back(2 * k, 2 * k + 1);
  if (boundary == Boundary::Periodic) even_bonds.emplace_back(size, 1);

  const std::size_t gates_per_layer = odd_bonds.size() + even_bonds.size();
  const std::size_t expected =
      theta.mode == ParamMode::Shared
          ? static_cast<std::size_t>(10 * depth)
          : 5 * gates_per_layer * static_cast<std::size_t>(depth);
  if (theta.angles.size() != expected) {
    throw std::invalid_argument("build_brickwork: parameter length does not match circuit mode");
  }

  BrickworkCircuit c;
  c.size = size;
  c.boundary = boundary;
  c.mode = theta.mode;
  c.window.resize(static_cast<std::size_t>(size));
  for (int s = 1; s <= size; ++s) c.window[static_cast<std::size_t>(s - 1)] = s;

  std::size_t cursor = 0;
  for (int i = 0; i < depth; ++i) {
    CircuitLayer layer;
    const std::size_t layer_base = static_cast<std::size_t>(10 * i);
    for (const auto& [a, b] : odd_bonds) {
      const std::size_t off = theta.mode == ParamMode::Shared ? layer_base : cursor;
      layer.odd.push_back(BrickGate{a, b, angles_at(theta.angles, off)});
      if (theta.mode == ParamMode::PerGate) cursor += 5;
    }
    for (const auto& [a, b] : even_bonds) {
      const std::size_t off = theta.mode == ParamMode::Shared ? layer_base + 5 : cursor;
      layer.even.push_back(BrickGate{a, b, angles_at(theta.angles, off)});
      if (theta.mode == ParamMode::PerGate) cursor += 5;
    }
    c.layers.push_back(std::move(layer));
  }
  return c;
}

BrickworkCircuit restrict_circuit(const BrickworkCircuit& v, int center, int diameter) {
  const Lattice lattice{v.size, v.boundary};
  if (!lattice.contains(center)) {
    throw std::invalid_argument("restrict_circuit: center site out of range");
  }
  const int radius = diameter / 2;

  // Collect the domain in chain order (cyclically contiguous when periodic).
  std::vector<int> window;
  if (v.boundary == Boundary::Open) {
    for (int s = std::max(1, center - radius); s <= std::min(v.size, center + radius); ++s) {
      window.push_back(s);
    }
  } else if (2 * radius + 1 >= v.size) {
    for (int s = 1; s <= v.size; ++s) window.push_back(s);
  } else {
    for (int off = -radius; off <= radius; ++off) {
      int s = (center - 1 + off) % v.size;
      if (s < 0) s += v.size;
      window.push_back(s + 1);
    }
  }

  if (static_cast<int>(window.size()) == v.size && std::is_sorted(window.begin(), window.end())) {
    return v;  // domain covers the circuit: nothing dropped, labels unchanged
  }

  std::map<int, int> local_of;
  for (std::size_t i = 0; i < window.size(); ++i) {
    local_of[window[i]] = static_cast<int>(i) + 1;
  }

  BrickworkCircuit out;
  out.size = static_cast<int>(window.size());
  out.boundary = Boundary::Open;
  out.mode = ParamMode::PerGate;  // the canonical shared pattern no longer applies
  out.window = window;
  for (const auto& layer : v.layers) {
    CircuitLayer kept;
    auto keep = [&local_of](const std::vector<BrickGate>& gates, std::vector<BrickGate>& into) {
      for (const auto& g : gates) {
        auto ia = local_of.find(g.a);
        auto ib = local_of.find(g.b);
        if (ia != local_of.end() && ib != local_of.end()) {
          into.push_back(BrickGate{ia->second, ib->second, g.params});
        }
      }
    };
    keep(layer.odd, kept.odd);
    keep(layer.even, kept.even);
    out.layers.push_back(std::move(kept));
  }
  return out;
}

ParameterVector extend_parameters(const ParameterVector& theta, int Ltilde, int L) {
  if (theta.mode != ParamMode::Shared) {
    throw std::invalid_argument(
        "extend_parameters: only shared (translation-invariant) parameters extend");
  }
  if (L < Ltilde) {
    throw std::invalid_argument("extend_parameters: target size smaller than source size");
  }
  if (theta.angles.size() != static_cast<std::size_t>(10 * theta.depth)) {
    throw std::invalid_argument("extend_parameters: malformed shared parameter vector");
  }
  return theta;  // shared angles are size-independent; the retag is a validation
}

ParameterVector trotter_params(double tau, int depth) {
  if (depth < 1) throw std::invalid_argument("trotter_params: depth must be >= 1");
  const double t = tau / depth;
  ParameterVector theta{ParamMode::Shared, depth, {}};
  theta.angles.reserve(static_cast<std::size_t>(10 * depth));
  for (int i = 0; i < depth; ++i) {
    for (int sublayer = 0; sublayer < 2; ++sublayer) {
      theta.angles.insert(theta.angles.end(), {2.0 * t, 0.0, 0.0, -2.0 * t, 4.0 * t});
    }
  }
  return theta;
}

namespace {

// Collects the (J, K) couplings of a uniform XXZ-type bond Hamiltonian
// (J(XX+YY) + K ZZ on every bond); throws if H has any other shape.
struct BondCouplings {
  double j_xy = 0.0;
  double k_z = 0.0;
};

BondCouplings uniform_xxz_couplings(const LocalHamiltonian& h) {
  struct Accum {
    double xx = 0.0, yy = 0.0, zz = 0.0;
  };
  std::map<std::pair<int, int>, Accum> bonds;
  for (const auto& term : h.terms) {
    if (term.sites.size() != 2 || h.lattice.distance(term.sites[0], term.sites[1]) != 1) {
      throw std::invalid_argument(
          "trotter_circuit: Hamiltonian must contain nearest-neighbor two-site terms only");
    }
    auto& acc = bonds[{term.sites[0], term.sites[1]}];
    if (term.paulis == "XX") {
      acc.xx += term.coeff;
    } else if (term.paulis == "YY") {
      acc.yy += term.coeff;
    } else if (term.paulis == "ZZ") {
      acc.zz += term.coeff;
    } else {
      throw std::invalid_argument("trotter_circuit: bond terms must be XX, YY or ZZ");
    }
  }
  const int expected_bonds =
      h.lattice.boundary == Boundary::Periodic ? h.lattice.size : h.lattice.size - 1;
  if (static_cast<int>(bonds.size()) != expected_bonds) {
    throw std::invalid_argument("trotter_circuit: every nearest-neighbor bond must appear");
  }
  BondCouplings c;
  bool first = true;
  for (const auto& [bond, acc] : bonds) {
    if (std::abs(acc.xx - acc.yy) > 1e-14) {
      throw std::invalid_argument(
          "trotter_circuit: XX and YY couplings must match (Z-conserving gate family)");
    }
    if (first) {
      c.j_xy = acc.xx;
      c.k_z = acc.zz;
      first = false;
    } else if (std::abs(acc.xx - c.j_xy) > 1e-14 || std::abs(acc.zz - c.k_z) > 1e-14) {
      throw std::invalid_argument("trotter_circuit: couplings must be uniform across bonds");
    }
  }
  return c;
}

}  // namespace

BrickworkCircuit trotter_circuit(const LocalHamiltonian& h, double tau, int depth) {
  if (depth < 1) throw std::invalid_argument("trotter_circuit: depth must be >= 1");
  const BondCouplings c = uniform_xxz_couplings(h);
  const double t = tau / depth;
  // e^{-it(J(XX+YY) + K ZZ)} equals the gate (2Jt, 0, 0, -2Kt, 4Kt) up to the
  // global phase e^{iKt} (fixed by the unit |00> matrix element).
  ParameterVector theta{ParamMode::Shared, depth, {}};
  for (int i = 0; i < 2 * depth; ++i) {
    theta.angles.insert(theta.angles.end(),
                        {2.0 * c.j_xy * t, 0.0, 0.0, -2.0 * c.k_z * t, 4.0 * c.k_z * t});
  }
  return build_brickwork(h.lattice.size, depth, theta, h.lattice.boundary);
}

}  // namespace lvqc
