#pragma once
#include <string>
#include <utility>
#include <vector>

#include "morselat/bits.hpp"

namespace morselat {

// Finite poset; below[q] holds every p with p <= q.
struct Poset {
    std::vector<std::string> labels;
    std::vector<Mask> below;

    int size() const { return static_cast<int>(labels.size()); }
    Mask carrier() const { return full_mask(size()); }
    bool leq(int p, int q) const { return has(below[q], p); }
    Mask above(int p) const;
    int index(const std::string& label) const;
    bool operator==(const Poset& o) const { return labels == o.labels && below == o.below; }
};

// MORSELAT_MAX_ENUM overrides the default of 20
int enum_bound();

Poset validate_poset(const std::vector<std::string>& labels,
                     const std::vector<std::vector<bool>>& leq);
// reflexive-transitive closure of a cover list, then validated
Poset poset_from_covers(const std::vector<std::string>& labels,
                        const std::vector<std::pair<int, int>>& covers);
Poset chain_poset(int n);
Poset antichain_poset(int n);

Mask down_set(const Poset& P, int p);
bool is_down_set(const Poset& P, Mask m);
std::vector<Mask> all_down_sets(const Poset& P, int bound = -1);
Poset dual_poset(const Poset& P);
// alpha in O(P)  ->  P \ alpha in O(P^dual)
Mask complement_map(const Poset& P, Mask alpha);

bool is_order_preserving(const Poset& P, const Poset& Q, const std::vector<int>& f);
bool is_order_embedding(const Poset& P, const Poset& Q, const std::vector<int>& f);

// minimal elements of P restricted to the subset `within`
std::vector<int> minimal_elements(const Poset& P, Mask within);
// cover pairs (p, q): p < q with nothing strictly between
std::vector<std::pair<int, int>> cover_pairs(const Poset& P);

}  // namespace morselat
