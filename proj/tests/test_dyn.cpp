#include <doctest.h>

#include <algorithm>
#include <set>

#include "morselat/corpus.hpp"
#include "morselat/dyn.hpp"
#include "morselat/error.hpp"

using namespace morselat;

namespace {

FiniteDynSys ds1() { return FiniteDynSys({"m", "z", "a", "b"}, {1, 1, 3, 3}); }

Mask set_of(const FiniteDynSys& f, std::initializer_list<const char*> names) {
    Mask m = 0;
    for (const char* s : names)
        for (int i = 0; i < f.size(); ++i)
            if (f.states[i] == s) m |= bit(i);
    return m;
}

Mask step(const FiniteDynSys& f, Mask S) {
    Mask out = 0;
    for (int i = 0; i < f.size(); ++i)
        if (has(S, i)) out |= bit(f.next[i]);
    return out;
}

// attractors: omega of every forward invariant set, omega by n-fold iteration
std::vector<Mask> att_oracle(const FiniteDynSys& f) {
    std::set<Mask> out;
    for (Mask U = 0; U <= f.all(); ++U) {
        if (!subset(step(f, U), U)) continue;
        Mask w = U;
        for (int k = 0; k < f.size(); ++k) w = step(f, w);
        out.insert(w);
    }
    std::vector<Mask> v(out.begin(), out.end());
    std::sort(v.begin(), v.end(), canon_less);
    return v;
}

// points whose forward orbit never meets A
Mask dual_oracle(const FiniteDynSys& f, Mask A) {
    Mask out = 0;
    for (int x = 0; x < f.size(); ++x) {
        int y = x;
        bool hit = false;
        for (int k = 0; k <= 2 * f.size(); ++k) {
            if (k >= f.size() && has(A, y)) hit = true;
            y = f.next[y];
        }
        if (!hit) out |= bit(x);
    }
    return out;
}

}  // namespace

TEST_CASE("first example system values") {
    FiniteDynSys f = ds1();
    SetLattice A = att_lattice(f), R = rep_lattice(f);
    std::vector<Mask> att{0, set_of(f, {"z"}), set_of(f, {"b"}), set_of(f, {"z", "b"})};
    std::vector<Mask> rep{0, set_of(f, {"m", "z"}), set_of(f, {"a", "b"}), f.all()};
    std::sort(att.begin(), att.end(), canon_less);
    std::sort(rep.begin(), rep.end(), canon_less);
    CHECK(A.elements() == att);
    CHECK(A.elements() == att_oracle(f));
    CHECK(R.elements() == rep);
    CHECK(dual_repeller(f, set_of(f, {"z"})) == set_of(f, {"a", "b"}));
    CHECK(dual_repeller(f, set_of(f, {"z"})) == dual_oracle(f, set_of(f, {"z"})));
    CHECK(dual_minus(f, set_of(f, {"a", "b"})) == set_of(f, {"z"}));
    CHECK(alpha(f, set_of(f, {"m"})) == 0);
    CHECK(preimage(f, set_of(f, {"b"})) == set_of(f, {"a", "b"}));
    CHECK(commuting_square_check(f).ok);
}

TEST_CASE("rotation has only trivial attractors") {
    FiniteDynSys f({"0", "1", "2"}, {1, 2, 0});
    CHECK(att_lattice(f).elements() == std::vector<Mask>{0, f.all()});
    CHECK(rep_lattice(f).elements() == std::vector<Mask>{0, f.all()});
    CHECK(f.surjective());
    CHECK(cycles(f) == f.all());
}

TEST_CASE("merging system") {
    FiniteDynSys f({"p", "q", "r"}, {0, 0, 2});
    CHECK_FALSE(f.surjective());
    CHECK(att_lattice(f).elements() == att_oracle(f));
    CHECK(inv(f, f.all()) == 0b101);
    // q has no backward orbit
    CHECK(backward_orbits(f, 1).empty());
    CHECK(inv_plus(f, 0b011) == 0b011);
}

TEST_CASE("attractor lattice matches the oracle on every map of 4 states") {
    for (const FiniteDynSys& f : all_systems(4)) {
        SetLattice A = att_lattice(f);
        REQUIRE(A.elements() == att_oracle(f));
        for (Mask a : A.elements()) {
            Mask r = dual_repeller(f, a);
            REQUIRE(r == dual_oracle(f, a));
            REQUIRE(rep_lattice(f).contains(r));
            REQUIRE(dual_attractor(f, r) == a);
        }
    }
}

TEST_CASE("images and preimages agree with direct tabulation") {
    Rng rng(5);
    for (int i = 0; i < 100; ++i) {
        FiniteDynSys f = random_system(rng, 1 + pick(rng, 9));
        for (int t = 0; t < 20; ++t) {
            Mask S = rng() & f.all();
            CHECK(image(f, S) == step(f, S));
            Mask pre = 0;
            for (int x = 0; x < f.size(); ++x)
                if (has(S, f.next[x])) pre |= bit(x);
            CHECK(preimage(f, S) == pre);
        }
    }
}

TEST_CASE("invariance flags") {
    FiniteDynSys f = ds1();
    auto fl = classify_invariance(f, set_of(f, {"z", "b"}));
    CHECK(fl.invariant);
    CHECK(fl.forward);
    auto fm = classify_invariance(f, set_of(f, {"m"}));
    CHECK_FALSE(fm.forward);
}

TEST_CASE("system construction rejects out-of-range targets") {
    CHECK_THROWS_AS(FiniteDynSys({"a"}, {1}), Error);
}
