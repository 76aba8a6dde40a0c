#pragma once
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "morselat/bits.hpp"
#include "morselat/order.hpp"

namespace morselat {

// Family of subsets of `universe`, closed under union, with 0 = empty set
// and a top.  Meet of a, b is the largest member inside a & b; it equals
// a & b when the family is intersection-closed.
class SetLattice {
public:
    SetLattice() = default;
    // throws NotALattice unless the family contains the empty set, is
    // closed under union (and under intersection when required) and is
    // distributive
    SetLattice(std::vector<std::string> universe, std::vector<Mask> family,
               bool require_intersection = true);

    const std::vector<std::string>& universe() const { return universe_; }
    const std::vector<Mask>& elements() const { return elements_; }
    int size() const { return static_cast<int>(elements_.size()); }
    Mask element(int i) const { return elements_[i]; }
    Mask bottom() const { return 0; }
    Mask top() const { return elements_.back(); }
    int index_of(Mask m) const;  // -1 when absent
    bool contains(Mask m) const { return index_of(m) >= 0; }
    bool intersection_closed() const { return intersection_closed_; }

    Mask join(Mask a, Mask b) const { return a | b; }
    Mask meet(Mask a, Mask b) const;
    bool leq(Mask a, Mask b) const { return subset(a, b); }

    // cover pairs (i, j) of element indices, i below j
    std::vector<std::pair<int, int>> hasse() const;

private:
    std::vector<std::string> universe_;
    std::vector<Mask> elements_;
    std::unordered_map<Mask, int> index_;
    bool intersection_closed_ = true;
};

SetLattice down_set_lattice(const Poset& P);

struct JoinIrreducibles {
    Poset poset;             // J(L) ordered by inclusion
    std::vector<int> elems;  // element index in L for each poset element
};

JoinIrreducibles join_irreducibles(const SetLattice& L);
Mask predecessor(const SetLattice& L, Mask c);
// bitmask over the poset of join_irreducibles(L)
Mask birkhoff_down(const SetLattice& L, const JoinIrreducibles& J, Mask a);
Mask birkhoff_join(const SetLattice& L, const JoinIrreducibles& J, Mask ds);
// the join-irreducible of O(P) generated by p, verified irreducible
Mask birkhoff_up(const Poset& P, int p);

struct BooleanRep {
    std::vector<std::string> ground;  // labels of J(L)
    std::vector<Mask> j;              // j(element i) as subset of J(L)
    Mask complement(Mask a) const { return full_mask(static_cast<int>(ground.size())) & ~a; }
    Mask one() const { return full_mask(static_cast<int>(ground.size())); }
};

BooleanRep booleanize(const SetLattice& L);

// a <= b  <=>  a & b == a  <=>  a & ~b == 0 in B(L); both forms are evaluated
bool leq_boolean(const BooleanRep& B, Mask a, Mask b);

// element-index table hom
using HomTable = std::vector<int>;

struct HomReport {
    bool ok = true;
    std::string law;  // "h(0)=0", "h(1)=1", "join", "meet"
    int a = -1, b = -1;
};

HomReport check_hom(const HomTable& h, const SetLattice& src, const SetLattice& tgt);
HomReport check_anti_hom(const HomTable& h, const SetLattice& src, const SetLattice& tgt);

struct BooleanExtension {
    std::vector<Mask> atoms;  // B(f)({p}) as a subset of J(L), per p in P
    Mask operator()(Mask alpha) const {
        Mask out = 0;
        for (int p : members(alpha)) out |= atoms[p];
        return out;
    }
};

// f: O(P) -> L given on the elements of down_set_lattice(P)
BooleanExtension boolean_extension(const Poset& P, const SetLattice& OP, const HomTable& f,
                                   const SetLattice& L);

// every bounded sublattice of L (as sorted families) whose join-irreducible
// count is at most max_j; generated from subsets of size <= max_j
std::vector<std::vector<Mask>> bounded_sublattices(const SetLattice& L, int max_j);

}  // namespace morselat
