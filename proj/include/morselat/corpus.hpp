#pragma once
#include <cstdint>
#include <random>
#include <vector>

#include "morselat/dyn.hpp"
#include "morselat/lattice.hpp"
#include "morselat/order.hpp"

namespace morselat {

using Rng = std::mt19937_64;

// uniform in [0, n); modulo bias is irrelevant at these sizes and keeps the
// stream identical across standard libraries
inline int pick(Rng& rng, int n) { return static_cast<int>(rng() % static_cast<std::uint64_t>(n)); }

// every next-map on n states, n^n of them, states named 0..n-1
std::vector<FiniteDynSys> all_systems(int n);
FiniteDynSys random_system(Rng& rng, int n);

// every partial order on n labelled points, by raw enumeration of the
// strict relation
std::vector<Poset> all_posets(int n);
Poset random_poset(Rng& rng, int n);

// random order-preserving g : Q -> P, giving the hom alpha -> g^-1(alpha)
// from O(P) to O(Q)
std::vector<int> random_monotone(Rng& rng, const Poset& Q, const Poset& P);
HomTable hom_from_monotone(const Poset& P, const Poset& Q, const std::vector<int>& g,
                           const SetLattice& OP, const SetLattice& OQ);

// family closed under union and intersection, generated from random subsets
SetLattice random_set_lattice(Rng& rng, int universe, int generators);

}  // namespace morselat
