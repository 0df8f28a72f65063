#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>

#include "lvqc/circuit.hpp"
#include "lvqc/lattice.hpp"
#include "lvqc/statevector.hpp"
#include "test_support.hpp"

using namespace lvqc;
using lvqc_test::cd;

namespace {

bool same_params(const TwoQubitGateParams& a, const TwoQubitGateParams& b) {
  return a.eta == b.eta && a.zeta == b.zeta && a.chi == b.chi && a.gamma == b.gamma &&
         a.phi == b.phi;
}

}  // namespace

TEST_CASE("gate matrix: zero angles give the identity") {
  CHECK(lvqc_test::max_abs_diff(gate_matrix(TwoQubitGateParams{}), Eigen::Matrix4cd::Identity()) ==
        doctest::Approx(0.0));
}

TEST_CASE("gate matrix: pinned entries") {
  const TwoQubitGateParams p{0.3, -0.7, 0.45, 0.2, 1.1};
  const Eigen::Matrix4cd g = gate_matrix(p);
  const cd mi(0.0, -1.0);
  const auto ph = [&](double t) { return std::exp(mi * t); };

  CHECK(std::abs(g(0, 0) - cd(1.0)) < 1e-15);
  CHECK(std::abs(g(1, 1) - ph(p.gamma + p.zeta) * std::cos(p.eta)) < 1e-15);
  CHECK(std::abs(g(1, 2) - mi * ph(p.gamma - p.chi) * std::sin(p.eta)) < 1e-15);
  CHECK(std::abs(g(2, 1) - mi * ph(p.gamma + p.chi) * std::sin(p.eta)) < 1e-15);
  CHECK(std::abs(g(2, 2) - ph(p.gamma - p.zeta) * std::cos(p.eta)) < 1e-15);
  CHECK(std::abs(g(3, 3) - ph(2.0 * p.gamma + p.phi)) < 1e-15);

  // Everything off the total-Z blocks is structurally zero.
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      const bool in_block = (r == c) || (r == 1 && c == 2) || (r == 2 && c == 1);
      if (!in_block) CHECK(std::abs(g(r, c)) == 0.0);
    }
  }
}

TEST_CASE("gate matrix: unitary and Z-conserving for random angles") {
  auto gen = lvqc_test::rng(11);
  const Eigen::Vector4d number(0.0, 1.0, 1.0, 2.0);  // total-Z quantum number per basis state
  for (int trial = 0; trial < 50; ++trial) {
    const Eigen::Matrix4cd g = gate_matrix(lvqc_test::random_gate_params(gen, 3.0));
    CHECK(lvqc_test::max_abs_diff(g.adjoint() * g, Eigen::Matrix4cd::Identity()) < 1e-12);
    const Eigen::Matrix4cd commutator =
        g * number.asDiagonal().toDenseMatrix().cast<cd>() -
        number.asDiagonal().toDenseMatrix().cast<cd>() * g;
    CHECK(commutator.cwiseAbs().maxCoeff() < 1e-15);
  }
}

TEST_CASE("trotter gate equals the exact bond propagator up to a global phase") {
  const auto h2 = build_heisenberg_afm(2, Boundary::Open);
  for (const double t : {0.07, 0.31}) {
    const Eigen::Matrix4cd g =
        gate_matrix(TwoQubitGateParams{2.0 * t, 0.0, 0.0, -2.0 * t, 4.0 * t});
    const DenseUnitary u = exact_evolution(h2, t);
    CHECK(lvqc_test::phase_distance(g, u) < 1e-12);
    // The phase is fixed by the unit |00> element: g = e^{it} u.
    CHECK(lvqc_test::max_abs_diff(std::exp(cd(0.0, t)) * u, g) < 1e-12);
  }
}

TEST_CASE("brickwork layout: open and periodic bond placement") {
  const ParameterVector theta = ParameterVector::zeros(2);

  const auto open = build_brickwork(6, 2, theta, Boundary::Open);
  CHECK(open.depth() == 2);
  CHECK(open.gate_count() == 10);
  CHECK(open.window == std::vector<int>{1, 2, 3, 4, 5, 6});
  for (const auto& layer : open.layers) {
    REQUIRE(layer.odd.size() == 3);
    REQUIRE(layer.even.size() == 2);
    CHECK(layer.odd[0].a == 1);
    CHECK(layer.odd[0].b == 2);
    CHECK(layer.odd[2].a == 5);
    CHECK(layer.odd[2].b == 6);
    CHECK(layer.even[0].a == 2);
    CHECK(layer.even[1].b == 5);
  }

  const auto ring = build_brickwork(6, 2, theta, Boundary::Periodic);
  CHECK(ring.gate_count() == 12);
  REQUIRE(ring.layers[0].even.size() == 3);
  CHECK(ring.layers[0].even.back().a == 6);  // the wrap gate (L, 1)
  CHECK(ring.layers[0].even.back().b == 1);

  CHECK(build_brickwork(5, 2, theta, Boundary::Open).gate_count() == 8);  // 2 odd + 2 even
}

TEST_CASE("brickwork: shared mode binds sublayers, per-gate mode consumes in order") {
  auto gen = lvqc_test::rng(12);
  const ParameterVector shared = lvqc_test::random_shared_theta(2, gen);
  const auto v = build_brickwork(6, 2, shared, Boundary::Open);
  for (int i = 0; i < 2; ++i) {
    const TwoQubitGateParams odd{shared.angles[10 * i + 0], shared.angles[10 * i + 1],
                                 shared.angles[10 * i + 2], shared.angles[10 * i + 3],
                                 shared.angles[10 * i + 4]};
    const TwoQubitGateParams even{shared.angles[10 * i + 5], shared.angles[10 * i + 6],
                                  shared.angles[10 * i + 7], shared.angles[10 * i + 8],
                                  shared.angles[10 * i + 9]};
    for (const auto& g : v.layers[static_cast<std::size_t>(i)].odd) {
      CHECK(same_params(g.params, odd));
    }
    for (const auto& g : v.layers[static_cast<std::size_t>(i)].even) {
      CHECK(same_params(g.params, even));
    }
  }

  ParameterVector per_gate;
  per_gate.mode = ParamMode::PerGate;
  per_gate.depth = 2;
  per_gate.angles.resize(5 * 10);  // 5 gates per layer on 6 open sites
  for (std::size_t i = 0; i < per_gate.angles.size(); ++i) per_gate.angles[i] = double(i);
  const auto w = build_brickwork(6, 2, per_gate, Boundary::Open);
  double expected = 0.0;
  for (const auto& layer : w.layers) {
    for (const auto* sublayer : {&layer.odd, &layer.even}) {
      for (const auto& g : *sublayer) {
        CHECK(g.params.eta == expected);
        CHECK(g.params.phi == expected + 4.0);
        expected += 5.0;
      }
    }
  }
}

TEST_CASE("brickwork: argument validation") {
  CHECK_THROWS_AS(build_brickwork(1, 1, ParameterVector::zeros(1)), std::invalid_argument);
  CHECK_THROWS_AS(build_brickwork(4, 0, ParameterVector::zeros(1)), std::invalid_argument);
  CHECK_THROWS_AS(build_brickwork(4, 2, ParameterVector::zeros(1)), std::invalid_argument);
  CHECK_THROWS_AS(build_brickwork(5, 1, ParameterVector::zeros(1), Boundary::Periodic),
                  std::invalid_argument);

  ParameterVector short_theta = ParameterVector::zeros(2);
  short_theta.angles.pop_back();
  CHECK_THROWS_AS(build_brickwork(4, 2, short_theta), std::invalid_argument);
}

TEST_CASE("zero angles give the identity circuit") {
  auto gen = lvqc_test::rng(13);
  const auto v = build_brickwork(5, 3, ParameterVector::zeros(3), Boundary::Open);
  const StateVector psi = lvqc_test::random_state(5, gen);
  const StateVector out = apply_circuit(psi, v);
  CHECK((out.amps - psi.amps).norm() < 1e-14);
}

TEST_CASE("restriction keeps exactly the window-supported gates") {
  auto gen = lvqc_test::rng(14);
  const ParameterVector theta = lvqc_test::random_shared_theta(2, gen);
  const auto v = build_brickwork(10, 2, theta, Boundary::Open);

  const auto r = restrict_circuit(v, 5, 4);
  CHECK(r.size == 5);
  CHECK(r.window == std::vector<int>{3, 4, 5, 6, 7});
  CHECK(r.mode == ParamMode::PerGate);
  CHECK(r.boundary == Boundary::Open);
  for (const auto& layer : r.layers) {
    REQUIRE(layer.odd.size() == 2);  // parent bonds (3,4), (5,6)
    CHECK(layer.odd[0].a == 1);
    CHECK(layer.odd[0].b == 2);
    CHECK(layer.odd[1].a == 3);
    CHECK(layer.odd[1].b == 4);
    REQUIRE(layer.even.size() == 2);  // parent bonds (4,5), (6,7)
    CHECK(layer.even[0].a == 2);
    CHECK(layer.even[1].a == 4);
  }
  // Angles travel with the gates.
  CHECK(same_params(r.layers[1].odd[0].params, v.layers[1].odd[0].params));
  CHECK(same_params(r.layers[0].even[1].params, v.layers[0].even[1].params));

  // Full-diameter restriction is the identity (shared mode survives).
  const auto full = restrict_circuit(v, 3, 2 * v.size);
  CHECK(full.mode == ParamMode::Shared);
  CHECK(full.window == v.window);
  CHECK(full.gate_count() == v.gate_count());
}

TEST_CASE("restriction: wrap-around window on a ring") {
  auto gen = lvqc_test::rng(15);
  const ParameterVector theta = lvqc_test::random_shared_theta(1, gen);
  const auto v = build_brickwork(10, 1, theta, Boundary::Periodic);
  const auto r = restrict_circuit(v, 1, 4);
  CHECK(r.window == std::vector<int>{9, 10, 1, 2, 3});
  REQUIRE(r.layers.size() == 1);
  // Parent odd bonds inside the window: (9,10), (1,2) -> local (1,2), (3,4).
  // Sublayer gates commute, so only the set of bonds is pinned.
  REQUIRE(r.layers[0].odd.size() == 2);
  std::vector<int> odd_a = {r.layers[0].odd[0].a, r.layers[0].odd[1].a};
  std::sort(odd_a.begin(), odd_a.end());
  CHECK(odd_a == std::vector<int>{1, 3});
  // Parent even bonds inside: (2,3) -> (4,5) and the wrap (10,1) -> (2,3).
  REQUIRE(r.layers[0].even.size() == 2);
  CHECK(r.layers[0].even[0].a == 4);
  CHECK(r.layers[0].even[1].a == 2);
  CHECK(r.layers[0].even[1].b == 3);

  CHECK_THROWS_AS(restrict_circuit(v, 11, 4), std::invalid_argument);
}

TEST_CASE("parameter extension validates and preserves the angles") {
  auto gen = lvqc_test::rng(16);
  const ParameterVector theta = lvqc_test::random_shared_theta(3, gen);
  const ParameterVector out = extend_parameters(theta, 8, 20);
  CHECK(out.mode == ParamMode::Shared);
  CHECK(out.depth == 3);
  CHECK(out.angles == theta.angles);

  CHECK_THROWS_AS(extend_parameters(theta, 20, 8), std::invalid_argument);
  ParameterVector per_gate = theta;
  per_gate.mode = ParamMode::PerGate;
  CHECK_THROWS_AS(extend_parameters(per_gate, 8, 20), std::invalid_argument);
  ParameterVector malformed = theta;
  malformed.angles.pop_back();
  CHECK_THROWS_AS(extend_parameters(malformed, 8, 20), std::invalid_argument);
}

TEST_CASE("trotter parameters: layout (2t, 0, 0, -2t, 4t) per sublayer") {
  const double tau = 0.5;
  const ParameterVector theta = trotter_params(tau, 4);
  const double t = tau / 4.0;
  CHECK(theta.mode == ParamMode::Shared);
  CHECK(theta.depth == 4);
  REQUIRE(theta.angles.size() == 40);
  for (int block = 0; block < 8; ++block) {
    CHECK(theta.angles[5 * block + 0] == doctest::Approx(2.0 * t));
    CHECK(theta.angles[5 * block + 1] == 0.0);
    CHECK(theta.angles[5 * block + 2] == 0.0);
    CHECK(theta.angles[5 * block + 3] == doctest::Approx(-2.0 * t));
    CHECK(theta.angles[5 * block + 4] == doctest::Approx(4.0 * t));
  }
}

TEST_CASE("trotter circuit implements the even/odd split product") {
  const double tau = 0.3;
  for (const auto boundary : {Boundary::Open, Boundary::Periodic}) {
    const auto h = build_heisenberg_afm(4, boundary);
    const auto [h_even, h_odd] = even_odd_split(h);
    for (const int d : {1, 3}) {
      const DenseUnitary u_circ = circuit_to_unitary(trotter_circuit(h, tau, d));
      const double t = tau / d;
      DenseUnitary u_ref = DenseUnitary::Identity(16, 16);
      const DenseUnitary step = exact_evolution(h_even, t) * exact_evolution(h_odd, t);
      for (int i = 0; i < d; ++i) u_ref = step * u_ref;
      CHECK(lvqc_test::phase_distance(u_circ, u_ref) < 1e-12);
    }
  }
}

TEST_CASE("trotter error roughly halves when the depth doubles") {
  const auto h = build_heisenberg_afm(4, Boundary::Open);
  const double tau = 0.4;
  const DenseUnitary exact = exact_evolution(h, tau);
  const double err4 = lvqc_test::aligned_distance(circuit_to_unitary(trotter_circuit(h, tau, 4)),
                                                  exact);
  const double err8 = lvqc_test::aligned_distance(circuit_to_unitary(trotter_circuit(h, tau, 8)),
                                                  exact);
  CHECK(err8 < err4);
  CHECK(err8 / err4 > 0.4);
  CHECK(err8 / err4 < 0.6);
}

TEST_CASE("trotter circuit rejects non-uniform or non-XXZ Hamiltonians") {
  auto lopsided = build_heisenberg_afm(4, Boundary::Open);
  lopsided.terms[0].coeff = 2.0;  // XX != YY on bond (1,2)
  CHECK_THROWS_AS(trotter_circuit(lopsided, 0.5, 2), std::invalid_argument);

  auto long_bond = build_heisenberg_afm(4, Boundary::Open);
  long_bond.terms.push_back(PauliTerm{{1, 3}, "ZZ", 1.0});
  CHECK_THROWS_AS(trotter_circuit(long_bond, 0.5, 2), std::invalid_argument);

  auto mixed = build_heisenberg_afm(4, Boundary::Open);
  for (auto& term : mixed.terms) {
    if (term.paulis == "ZZ") term.coeff = 0.25;  // uniform XXZ is fine
  }
  CHECK_NOTHROW(trotter_circuit(mixed, 0.5, 2));
}

TEST_CASE("brickwork circuits conserve total Z") {
  auto gen = lvqc_test::rng(17);
  const auto v = build_brickwork(5, 2, lvqc_test::random_shared_theta(2, gen), Boundary::Open);
  const StateVector psi = StateVector::basis_state(5, 0b00101);  // two up spins
  const StateVector out = apply_circuit(psi, v);
  for (Eigen::Index x = 0; x < out.amps.size(); ++x) {
    if (__builtin_popcountll(static_cast<unsigned long long>(x)) != 2) {
      CHECK(std::abs(out.amps[x]) == 0.0);
    }
  }
  CHECK(out.amps.norm() == doctest::Approx(1.0));
}
