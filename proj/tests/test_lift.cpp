#include <doctest.h>

#include <algorithm>

#include "morselat/corpus.hpp"
#include "morselat/dynlift.hpp"
#include "morselat/error.hpp"
#include "morselat/grid.hpp"
#include "morselat/lift.hpp"

using namespace morselat;

namespace {

FiniteDynSys ds1() { return FiniteDynSys({"m", "z", "a", "b"}, {1, 1, 3, 3}); }

// cells 0..4 stand for 1, t, y, 2, 3: two self-looping branches 2 and 3 both
// feed y, which drains through t into the sink 1
CellMap y_graph() {
    return CellMap(CellGrid(-1.0, 1.0, 5), {bit(0), bit(0), bit(1), bit(3) | bit(2), bit(4) | bit(2)});
}

// hom check of a lift table against plain union and intersection
bool table_is_hom(const std::vector<Mask>& D, const std::vector<Mask>& k) {
    auto at = [&](Mask m) {
        auto it = std::find(D.begin(), D.end(), m);
        return k[it - D.begin()];
    };
    for (size_t i = 0; i < D.size(); ++i)
        for (size_t j = 0; j < D.size(); ++j)
            if (at(D[i] | D[j]) != (k[i] | k[j]) || at(D[i] & D[j]) != (k[i] & k[j])) return false;
    return true;
}

}  // namespace

TEST_CASE("repeller lattice of the first example lifts through Inv+") {
    FiniteDynSys f = ds1();
    Embedding e = embedding_of(rep_lattice(f));
    LiftProblem pb = rep_lift_problem(f, e.P, e.downsets, e.s);
    LiftCertificate c = lift(pb);
    CHECK(verify_certificate(c, pb).ok);
    for (size_t i = 0; i < e.downsets.size(); ++i) {
        CHECK(is_repelling_nbhd(f, c.table[i]));
        CHECK(inv_plus(f, c.table[i]) == e.s[i]);
    }
    CHECK(table_is_hom(e.downsets, c.table));
}

TEST_CASE("attractor chain of the first example lifts by duality") {
    FiniteDynSys f = ds1();
    SetLattice sub({"m", "z", "a", "b"}, {0, 0b0010, 0b1010});
    Embedding e = embedding_of(sub);
    DualLift dl = transport_by_duality(e.P, e.downsets, e.s, exact_duality(f));
    for (size_t i = 0; i < e.downsets.size(); ++i) {
        CHECK(is_attracting_nbhd(f, dl.att.table[i]));
        CHECK(inv(f, dl.att.table[i]) == e.s[i]);
    }
    CHECK(table_is_hom(e.downsets, dl.att.table));
}

TEST_CASE("tampered certificate fails verification") {
    FiniteDynSys f = ds1();
    Embedding e = embedding_of(rep_lattice(f));
    LiftProblem pb = rep_lift_problem(f, e.P, e.downsets, e.s);
    LiftCertificate c = lift(pb);
    // swap two nontrivial entries
    REQUIRE(c.table.size() == 4);
    std::swap(c.table[1], c.table[2]);
    CHECK_FALSE(verify_certificate(c, pb).ok);
}

TEST_CASE("initial disjointness needs a trivial zero fibre") {
    // m has no preimage, so {m} is a repelling neighbourhood with empty Inv+
    // and {m,z,a} sits over {m,z} while every neighbourhood over {a,b} holds a
    ConditionIReport r = check_condition_i(invplus_on_rnbhd(ds1()), 3);
    CHECK_FALSE(r.ok);
    CHECK_FALSE(r.via_zero_fibre);
    CHECK(r.witness.find("{m,z,a}") != std::string::npos);

    FiniteDynSys rot({"0", "1", "2", "3"}, {1, 0, 2, 3});
    ConditionIReport s = check_condition_i(invplus_on_rnbhd(rot), 3);
    CHECK(s.ok);
    CHECK(s.via_zero_fibre);
}

TEST_CASE("falsifier finds nothing for Inv+ of the first example") {
    FalsifierReport r = spaciousness_falsifier(invplus_on_rnbhd(ds1()), 3);
    CHECK_FALSE(r.counterexample);
    CHECK(r.checked > 0);
}

TEST_CASE("Y graph: direct attractor route is obstructed, duality succeeds") {
    CellMap F = y_graph();
    SetLattice A = comb_att_lattice(F);
    // {}, {1}, {1,t,y,2}, {1,t,y,3}, all
    std::vector<Mask> expect{0, 0b00001, 0b01111, 0b10111, 0b11111};
    CHECK(A.elements() == expect);
    CHECK(comb_inv_plus(F, F.all() & ~forward_closure(F, 0b01111)) == 0b10000);
    CHECK(comb_inv_plus(F, F.all() & ~forward_closure(F, 0b10111)) == 0b01000);
    CHECK(comb_inv_plus(F, F.all() & ~forward_closure(F, 0b00001)) == 0b11000);

    GridLift dual = grid_attractor_lift(F, A.elements());
    for (size_t i = 0; i < dual.emb.downsets.size(); ++i) {
        CHECK(is_attracting_block(F, dual.cert.table[i]));
        CHECK(comb_inv(F, dual.cert.table[i]) == dual.emb.s[i]);
    }

    try {
        grid_attractor_lift(F, A.elements(), {}, true);
        FAIL("direct route lifted");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::ObstructionFound);
    }

    FiniteHom H = grid_att_hom(F, A);
    FalsifierReport r = spaciousness_falsifier(H, 3);
    CHECK(r.counterexample);
    MESSAGE(r.witness);
    try {
        spaciousness_falsifier(H, 3, 0);
        FAIL("no budget error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::BoundExceeded);
    }
}

TEST_CASE("random exact systems: every repeller sublattice lifts") {
    Rng rng(21);
    for (int i = 0; i < 60; ++i) {
        FiniteDynSys f = random_system(rng, 1 + pick(rng, 7));
        SetLattice R = rep_lattice(f);
        if (R.size() > 16) continue;
        Embedding e = embedding_of(R);
        LiftProblem pb = rep_lift_problem(f, e.P, e.downsets, e.s);
        LiftCertificate c = lift(pb);
        REQUIRE(verify_certificate(c, pb).ok);
        CHECK(table_is_hom(e.downsets, c.table));
    }
}
