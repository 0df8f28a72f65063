#include "lvqc/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

#include "lvqc/errors.hpp"

namespace lvqc {

int Lattice::distance(int a, int b) const {
  if (!contains(a) || !contains(b)) {
    throw std::invalid_argument("Lattice::distance: site index out of range");
  }
  const int d = std::abs(a - b);
  return boundary == Boundary::Periodic ? std::min(d, size - d) : d;
}

void LocalHamiltonian::validate() const {
  if (lattice.size < 2) {
    throw std::invalid_argument("LocalHamiltonian: lattice must have at least 2 sites");
  }
  for (const auto& term : terms) {
    if (term.sites.empty()) {
      throw std::invalid_argument("PauliTerm: empty support");
    }
    if (term.sites.size() != term.paulis.size()) {
      throw std::invalid_argument("PauliTerm: sites/paulis length mismatch");
    }
    if (!std::isfinite(term.coeff)) {
      throw std::invalid_argument("PauliTerm: non-finite coefficient");
    }
    for (std::size_t i = 0; i < term.sites.size(); ++i) {
      if (!lattice.contains(term.sites[i])) {
        throw std::invalid_argument("PauliTerm: site index out of lattice bounds");
      }
      if (i > 0 && term.sites[i] <= term.sites[i - 1]) {
        throw std::invalid_argument("PauliTerm: sites must be strictly increasing");
      }
      const char p = term.paulis[i];
      if (p != 'X' && p != 'Y' && p != 'Z') {
        throw std::invalid_argument("PauliTerm: Pauli letters must be X, Y or Z");
      }
    }
  }
}

LocalHamiltonian::Metadata LocalHamiltonian::metadata() const {
  Metadata meta;
  std::vector<double> site_weight(static_cast<std::size_t>(lattice.size) + 1, 0.0);
  for (const auto& term : terms) {
    meta.k = std::max(meta.k, static_cast<int>(term.sites.size()));
    for (int s : term.sites) {
      site_weight[static_cast<std::size_t>(s)] += std::abs(term.coeff);
    }
    for (std::size_t i = 0; i < term.sites.size(); ++i) {
      for (std::size_t l = i + 1; l < term.sites.size(); ++l) {
        meta.d_H = std::max(meta.d_H, lattice.distance(term.sites[i], term.sites[l]));
      }
    }
  }
  meta.g = site_weight.empty() ? 0.0 : *std::max_element(site_weight.begin(), site_weight.end());
  return meta;
}

LocalHamiltonian build_heisenberg_afm(int size, Boundary boundary) {
  if (size < 2) {
    throw std::invalid_argument("build_heisenberg_afm: need at least 2 sites");
  }
  LocalHamiltonian h;
  h.lattice = Lattice{size, boundary};
  auto add_bond = [&h](int a, int b) {
    for (const char* p : {"XX", "YY", "ZZ"}) {
      h.terms.push_back(PauliTerm{{a, b}, p, 1.0});
    }
  };
  for (int j = 1; j < size; ++j) {
    add_bond(j, j + 1);
  }
  if (boundary == Boundary::Periodic && size > 2) {
    add_bond(1, size);  // the (L, 1) wrap bond, stored with ascending sites
  }
  return h;
}

namespace {

// Sites of the j-centered domain of the given diameter, in chain order
// (cyclically contiguous for periodic lattices). Empty result never happens
// since the center itself always qualifies.
std::vector<int> domain_sites(const Lattice& lattice, int center, int diameter) {
  const int radius = diameter / 2;  // dist(j, j') <= diameter/2 on the integer grid
  std::vector<int> sites;
  if (lattice.boundary == Boundary::Open) {
    const int lo = std::max(1, center - radius);
    const int hi = std::min(lattice.size, center + radius);
    for (int s = lo; s <= hi; ++s) sites.push_back(s);
  } else {
    if (2 * radius + 1 >= lattice.size) {
      for (int s = 1; s <= lattice.size; ++s) sites.push_back(s);
      return sites;
    }
    for (int off = -radius; off <= radius; ++off) {
      int s = (center - 1 + off) % lattice.size;
      if (s < 0) s += lattice.size;
      sites.push_back(s + 1);
    }
  }
  return sites;
}

}  // namespace

RestrictedHamiltonian restrict_hamiltonian(const LocalHamiltonian& h, int center, int diameter) {
  if (!h.lattice.contains(center)) {
    throw std::invalid_argument("restrict_hamiltonian: center site out of range");
  }
  if (diameter < 0) {
    throw std::invalid_argument("restrict_hamiltonian: negative diameter");
  }

  const std::vector<int> window = domain_sites(h.lattice, center, diameter);
  RestrictedHamiltonian out;
  out.window = window;

  if (static_cast<int>(window.size()) == h.lattice.size &&
      std::is_sorted(window.begin(), window.end())) {
    // Domain covers the lattice in its native order: return H unchanged.
    out.hamiltonian = h;
    out.center_local = center;
    return out;
  }

  std::map<int, int> local_of;  // parent site -> local site (1-based)
  for (std::size_t i = 0; i < window.size(); ++i) {
    local_of[window[i]] = static_cast<int>(i) + 1;
  }

  out.hamiltonian.lattice = Lattice{static_cast<int>(window.size()), Boundary::Open};
  for (const auto& term : h.terms) {
    std::vector<std::pair<int, char>> mapped;
    mapped.reserve(term.sites.size());
    bool inside = true;
    for (std::size_t i = 0; i < term.sites.size(); ++i) {
      auto it = local_of.find(term.sites[i]);
      if (it == local_of.end()) {
        inside = false;
        break;
      }
      mapped.emplace_back(it->second, term.paulis[i]);
    }
    if (!inside) continue;
    // Relabelling can permute site order on periodic windows; restore the
    // ascending-site invariant with the Pauli letters carried along.
    std::sort(mapped.begin(), mapped.end());
    PauliTerm local_term;
    for (const auto& [site, pauli] : mapped) {
      local_term.sites.push_back(site);
      local_term.paulis.push_back(pauli);
    }
    local_term.coeff = term.coeff;
    out.hamiltonian.terms.push_back(std::move(local_term));
  }
  out.center_local = local_of.at(center);
  return out;
}

std::pair<LocalHamiltonian, LocalHamiltonian> even_odd_split(const LocalHamiltonian& h) {
  const auto meta = h.metadata();
  if (meta.d_H > 1) {
    throw std::invalid_argument(
        "even_odd_split: Hamiltonian has interaction range > 1 (unsupported split)");
  }
  LocalHamiltonian even, odd;
  even.lattice = odd.lattice = h.lattice;
  for (const auto& term : h.terms) {
    if (term.sites.size() != 2) {
      throw std::invalid_argument("even_odd_split: only two-site bond terms are supported");
    }
    // Identify the bond's left site in chain order; the (1, L) wrap bond has
    // left site L and lands in the even class.
    const bool wrap = h.lattice.boundary == Boundary::Periodic &&
                      term.sites[0] == 1 && term.sites[1] == h.lattice.size;
    const int left = wrap ? h.lattice.size : term.sites[0];
    ((left % 2 == 1) ? odd : even).terms.push_back(term);
  }
  return {even, odd};
}

LocalHamiltonian tile_translation_invariant(const LocalHamiltonian& h, int new_size) {
  h.validate();
  if (h.lattice.boundary != Boundary::Periodic) {
    throw ConstraintError("tile_translation_invariant: Hamiltonian must be periodic");
  }
  if (new_size < 2) {
    throw ConstraintError("tile_translation_invariant: new size must be at least 2");
  }
  const int L = h.lattice.size;

  // Canonical form of a term under ring translations: anchor at each of its
  // sites in turn, relabel s -> ((s - anchor) mod L) + 1, and keep the
  // lexicographically smallest (sites, paulis) pair.
  struct Pattern {
    std::vector<int> sites;
    std::string paulis;
    bool operator<(const Pattern& o) const {
      return std::tie(sites, paulis) < std::tie(o.sites, o.paulis);
    }
  };
  const auto canonicalize = [L](const PauliTerm& term) {
    Pattern best;
    for (const int anchor : term.sites) {
      std::vector<std::pair<int, char>> mapped;
      for (std::size_t i = 0; i < term.sites.size(); ++i) {
        int s = (term.sites[i] - anchor) % L;
        if (s < 0) s += L;
        mapped.emplace_back(s + 1, term.paulis[i]);
      }
      std::sort(mapped.begin(), mapped.end());
      Pattern cand;
      for (const auto& [site, pauli] : mapped) {
        cand.sites.push_back(site);
        cand.paulis.push_back(pauli);
      }
      if (best.sites.empty() || cand < best) best = std::move(cand);
    }
    return best;
  };

  struct ClassInfo {
    double coeff = 0.0;
    int count = 0;
  };
  std::map<Pattern, ClassInfo> classes;
  for (const auto& term : h.terms) {
    auto& info = classes[canonicalize(term)];
    if (info.count == 0) {
      info.coeff = term.coeff;
    } else if (std::abs(info.coeff - term.coeff) > 1e-12) {
      throw ConstraintError(
          "tile_translation_invariant: coefficients vary across translated copies");
    }
    ++info.count;
  }
  for (const auto& [pattern, info] : classes) {
    if (info.count != L) {
      throw ConstraintError(
          "tile_translation_invariant: term pattern is not repeated at every site");
    }
    if (pattern.sites.back() - 1 >= new_size) {
      throw ConstraintError("tile_translation_invariant: term does not fit on the new ring");
    }
  }

  LocalHamiltonian out;
  out.lattice = Lattice{new_size, Boundary::Periodic};
  for (const auto& [pattern, info] : classes) {
    for (int shift = 0; shift < new_size; ++shift) {
      std::vector<std::pair<int, char>> mapped;
      for (std::size_t i = 0; i < pattern.sites.size(); ++i) {
        mapped.emplace_back((pattern.sites[i] - 1 + shift) % new_size + 1, pattern.paulis[i]);
      }
      std::sort(mapped.begin(), mapped.end());
      PauliTerm term;
      for (const auto& [site, pauli] : mapped) {
        term.sites.push_back(site);
        term.paulis.push_back(pauli);
      }
      term.coeff = info.coeff;
      out.terms.push_back(std::move(term));
    }
  }
  out.validate();
  return out;
}

}  // namespace lvqc
