#pragma once

#include <string>
#include <utility>
#include <vector>

namespace lvqc {

enum class Boundary { Open, Periodic };

// One-dimensional chain of spin-1/2 sites. Sites are 1-indexed in the public
// API (internal storage maps them to 0-based positions where convenient).
struct Lattice {
  int size = 0;
  Boundary boundary = Boundary::Open;

  // Graph distance between two sites (wraps around for periodic chains).
  int distance(int a, int b) const;
  bool contains(int site) const { return site >= 1 && site <= size; }
};

// A single Pauli string acting on `sites` with the matching letter of
// `paulis` (characters from {X,Y,Z}) on each, scaled by `coeff`.
// Sites are strictly increasing; the operator norm of the string is |coeff|.
struct PauliTerm {
  std::vector<int> sites;
  std::string paulis;
  double coeff = 0.0;
};

// Sum of Pauli terms on a lattice, with the locality metadata used by the
// Lieb-Robinson machinery:
//   g   — max over sites of the summed term norms touching that site,
//   k   — max number of sites any single term acts on,
//   d_H — max pairwise site distance within a term (interaction range).
struct LocalHamiltonian {
  Lattice lattice;
  std::vector<PauliTerm> terms;

  struct Metadata {
    double g = 0.0;
    int k = 0;
    int d_H = 0;
  };
  Metadata metadata() const;

  // Throws std::invalid_argument on malformed terms (out-of-range or
  // duplicated sites, Pauli letters outside {X,Y,Z}, length mismatch).
  void validate() const;
};

// Result of restricting a Hamiltonian to a centered window: the restricted
// Hamiltonian is relabelled to local sites 1..window.size() with open
// boundary, and `window[i]` records the parent site of local site i+1 so the
// caller can map the center site back.
struct RestrictedHamiltonian {
  LocalHamiltonian hamiltonian;
  std::vector<int> window;
  int center_local = 0;  // local index of the center site j
};

// Antiferromagnetic Heisenberg chain: sum over bonds (j, j+1) of
// X_jX_{j+1} + Y_jY_{j+1} + Z_jZ_{j+1} with unit coefficients; periodic
// boundary adds the (L, 1) bond.
LocalHamiltonian build_heisenberg_afm(int size, Boundary boundary);

// Keeps exactly the terms whose support lies inside the j-centered domain
// {j' : dist(j, j') <= diameter/2}, clipped at open boundaries. If the domain
// covers the whole lattice the Hamiltonian is returned unchanged (identity
// window, original boundary).
RestrictedHamiltonian restrict_hamiltonian(const LocalHamiltonian& h, int center, int diameter);

// Splits a nearest-neighbor Hamiltonian into (H_even, H_odd): H_odd collects
// bonds (2k-1, 2k), H_even collects bonds (2k, 2k+1) including a periodic
// (L, 1) wrap bond. Throws for terms of range > 1 or single-site terms.
std::pair<LocalHamiltonian, LocalHamiltonian> even_odd_split(const LocalHamiltonian& h);

// Rebuilds a translation-invariant periodic Hamiltonian on a ring of a
// different size by tiling its unit-cell term pattern. Throws a constraint
// error if h is not periodic, not translation-invariant, or its terms do not
// fit on the new ring.
LocalHamiltonian tile_translation_invariant(const LocalHamiltonian& h, int new_size);

}  // namespace lvqc
