#include <doctest.h>

#include <algorithm>

#include "morselat/corpus.hpp"
#include "morselat/error.hpp"
#include "morselat/lattice.hpp"
#include "morselat/order.hpp"

using namespace morselat;

namespace {

// brute force: every subset, keep those closed downward
std::vector<Mask> downsets_oracle(const Poset& P) {
    std::vector<Mask> out;
    int n = P.size();
    for (Mask m = 0; m < bit(n); ++m) {
        bool ok = true;
        for (int q = 0; q < n && ok; ++q)
            if (has(m, q))
                for (int p = 0; p < n; ++p)
                    if (P.leq(p, q) && !has(m, p)) ok = false;
        if (ok) out.push_back(m);
    }
    std::sort(out.begin(), out.end(), canon_less);
    return out;
}

// nonzero elements that are not the union of the members strictly below
std::vector<Mask> join_irreducible_oracle(const SetLattice& L) {
    std::vector<Mask> out;
    for (Mask a : L.elements()) {
        if (a == 0) continue;
        Mask below = 0;
        for (Mask b : L.elements())
            if (b != a && subset(b, a)) below |= b;
        if (below != a) out.push_back(a);
    }
    return out;
}

Poset diamond() {
    return poset_from_covers({"1", "2", "3"}, {{0, 1}, {0, 2}});
}

}  // namespace

TEST_CASE("down-sets of the V poset") {
    Poset P = diamond();
    auto ds = all_down_sets(P);
    CHECK(ds == downsets_oracle(P));
    CHECK(ds.size() == 5);
    CHECK(ds.front() == 0);
    CHECK(ds.back() == P.carrier());
}

TEST_CASE("down-sets match the subset oracle on every poset up to 4 points") {
    for (int n = 0; n <= 4; ++n)
        for (const Poset& P : all_posets(n)) REQUIRE(all_down_sets(P) == downsets_oracle(P));
}

TEST_CASE("poset counts for labelled enumeration") {
    // labelled posets: 1, 1, 3, 19, 219
    CHECK(all_posets(0).size() == 1);
    CHECK(all_posets(1).size() == 1);
    CHECK(all_posets(2).size() == 3);
    CHECK(all_posets(3).size() == 19);
    CHECK(all_posets(4).size() == 219);
}

TEST_CASE("order validation errors") {
    using V = std::vector<std::vector<bool>>;
    auto kind = [](auto fn) {
        try {
            fn();
        } catch (const Error& e) {
            return e.kind();
        }
        return ErrorKind::Io;
    };
    CHECK(kind([] { validate_poset({"a", "b"}, V{{false, false}, {false, true}}); }) ==
          ErrorKind::NotReflexive);
    CHECK(kind([] { validate_poset({"a", "b"}, V{{true, true}, {true, true}}); }) ==
          ErrorKind::NotAntisymmetric);
    CHECK(kind([] {
              validate_poset({"a", "b", "c"},
                             V{{true, true, false}, {false, true, true}, {false, false, true}});
          }) == ErrorKind::NotTransitive);
}

TEST_CASE("dual poset and complement map") {
    Poset P = diamond();
    Poset D = dual_poset(P);
    CHECK(D.leq(1, 0));
    CHECK_FALSE(D.leq(0, 1));
    for (Mask a : all_down_sets(P)) CHECK(is_down_set(D, complement_map(P, a)));
}

TEST_CASE("chain and antichain lattices") {
    CHECK(all_down_sets(chain_poset(4)).size() == 5);
    CHECK(all_down_sets(antichain_poset(4)).size() == 16);
}

TEST_CASE("join-irreducibles of O(P) are principal down-sets") {
    Rng rng(7);
    for (int i = 0; i < 50; ++i) {
        Poset P = random_poset(rng, 1 + pick(rng, 6));
        SetLattice L = down_set_lattice(P);
        auto J = join_irreducibles(L);
        auto oracle = join_irreducible_oracle(L);
        REQUIRE(J.elems.size() == oracle.size());
        std::vector<Mask> principal;
        for (int p = 0; p < P.size(); ++p) principal.push_back(down_set(P, p));
        for (int e : J.elems) {
            Mask m = L.element(e);
            CHECK(std::find(oracle.begin(), oracle.end(), m) != oracle.end());
            CHECK(std::find(principal.begin(), principal.end(), m) != principal.end());
        }
    }
}

TEST_CASE("Birkhoff round trip on a lattice") {
    Rng rng(3);
    for (int i = 0; i < 50; ++i) {
        SetLattice L = random_set_lattice(rng, 6, 1 + pick(rng, 4));
        auto J = join_irreducibles(L);
        for (Mask a : L.elements()) {
            Mask ds = birkhoff_down(L, J, a);
            CHECK(is_down_set(J.poset, ds));
            CHECK(birkhoff_join(L, J, ds) == a);
        }
        CHECK(all_down_sets(J.poset).size() == static_cast<size_t>(L.size()));
    }
}

TEST_CASE("set lattice meet is the largest member inside the intersection") {
    // union-closed but not intersection-closed
    SetLattice L({"a", "b", "c"}, {0, 0b011, 0b101, 0b111}, false);
    CHECK_FALSE(L.intersection_closed());
    CHECK(L.meet(0b011, 0b101) == 0);
    CHECK_THROWS_AS(SetLattice({"a", "b", "c"}, {0, 0b011, 0b101, 0b111}, true), Error);
}

TEST_CASE("non-distributive family is rejected") {
    // M3: three atoms with pairwise joins equal to the top
    try {
        SetLattice({"a", "b", "c", "d"}, {0, 0b0011, 0b0101, 0b0110, 0b0111}, false);
        FAIL("M3 accepted");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NotALattice);
    }
}

TEST_CASE("booleanization is injective and order reflecting") {
    Rng rng(11);
    for (int i = 0; i < 30; ++i) {
        SetLattice L = random_set_lattice(rng, 5, 3);
        BooleanRep B = booleanize(L);
        for (int x = 0; x < L.size(); ++x)
            for (int y = 0; y < L.size(); ++y) {
                CHECK((L.leq(L.element(x), L.element(y)) == leq_boolean(B, B.j[x], B.j[y])));
                if (x != y) CHECK(B.j[x] != B.j[y]);
            }
    }
}

TEST_CASE("bounded sublattices of the four-element Boolean lattice") {
    SetLattice L = down_set_lattice(antichain_poset(2));
    auto subs = bounded_sublattices(L, 2);
    // {0,1}, {0,a,1}, {0,b,1}, whole
    CHECK(subs.size() == 4);
}
