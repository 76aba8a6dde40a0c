// One line per acceptance criterion; exit status 1 if any line fails.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "morselat/corpus.hpp"
#include "morselat/dynlift.hpp"
#include "morselat/error.hpp"
#include "morselat/grid.hpp"
#include "morselat/props.hpp"

using namespace morselat;

namespace {

// pinned limits
constexpr double kLimit[9] = {0, 10, 10, 60, 1, 60, 30, 60, 120};
constexpr double kSupportTol = 1e-12;
constexpr int kRandomSystems = 500;
constexpr int kMaxStates = 10;
constexpr int kRandomPosets = 200;
constexpr int kRandomHoms = 200;

struct Outcome {
    bool ok = true;
    std::string detail;
    void fail(const std::string& why) {
        if (ok) detail = why;
        else detail += "; " + why;
        ok = false;
    }
};

bool all_ok = true;

void run(int id, const char* title, const std::function<void(Outcome&)>& body) {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    try {
        body(o);
    } catch (const std::exception& e) {
        o.fail(std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs >= kLimit[id]) o.fail("over time limit");
    all_ok = all_ok && o.ok;
    std::printf("criterion %d %s  %-34s %7.2fs / %.0fs  %s\n", id, o.ok ? "PASS" : "FAIL", title, secs,
                kLimit[id], o.detail.c_str());
    std::fflush(stdout);
}

void absorb(const PropReport& r, Outcome& o) {
    long checked = 0;
    for (auto& [tag, t] : r.tags()) {
        checked += t.checked;
        if (t.failed) o.fail(tag + " failed " + std::to_string(t.failed) + "x: " + t.counterexample);
    }
    if (o.ok) o.detail = std::to_string(r.tags().size()) + " tags, " + std::to_string(checked) + " checks";
}

std::vector<FiniteDynSys> exact_corpus() {
    std::vector<FiniteDynSys> v = all_systems(4);
    Rng rng(1);
    for (int i = 0; i < kRandomSystems; ++i) v.push_back(random_system(rng, 1 + pick(rng, kMaxStates)));
    return v;
}

// ---- brute-force oracles for the fixture ledger ----

Mask step(const FiniteDynSys& f, Mask S) {
    Mask out = 0;
    for (int x : members(S)) out |= bit(f.next[x]);
    return out;
}

Mask pre(const FiniteDynSys& f, Mask S) {
    Mask out = 0;
    for (int x = 0; x < f.size(); ++x)
        if (has(S, f.next[x])) out |= bit(x);
    return out;
}

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

// points whose forward orbit eventually avoids A
Mask dual_plus_oracle(const FiniteDynSys& f, Mask A) {
    Mask out = 0;
    for (int x = 0; x < f.size(); ++x) {
        int y = x;
        for (int k = 0; k < f.size(); ++k) y = f.next[y];
        bool hit = false;
        for (int k = 0; k < f.size(); ++k, y = f.next[y]) hit = hit || has(A, y);
        if (!hit) out |= bit(x);
    }
    return out;
}

// points fed by some cycle that misses R
Mask dual_minus_oracle(const FiniteDynSys& f, Mask R) {
    Mask out = 0;
    for (int c = 0; c < f.size(); ++c) {
        int y = c;
        Mask cyc = 0;
        bool periodic = false;
        for (int k = 0; k < f.size(); ++k) {
            y = f.next[y];
            cyc |= bit(y);
            if (y == c) periodic = true;
            if (periodic) break;
        }
        if (!periodic || (cyc & R)) continue;
        Mask reach = cyc;
        for (int k = 0; k < f.size(); ++k) reach |= step(f, reach);
        out |= reach;
    }
    return out;
}

// union of far preimages over a window longer than any period
Mask alpha_oracle(const FiniteDynSys& f, Mask U) {
    Mask P = U;
    for (int t = 0; t < 64; ++t) P = pre(f, P);
    Mask acc = 0;
    for (int t = 0; t < 64; ++t, P = pre(f, P)) acc |= P;
    return acc;
}

// ---- grid helpers ----

CellMap g1(int n) { return ingest_interval_map("(x + x^3)/2", CellGrid(-1.0, 1.0, n), 32, 1e-9); }

std::vector<Mask> g1_seeds(const CellMap& F) { return seed_cells(F.grid, {-1.0, 0.0, 1.0}); }

struct Shape {
    bool ok = false;
    Mask c0 = 0, cm = 0, cp = 0;  // join-irreducibles: centre, left, right
    std::string why;
};

// 5 elements, J = {c0 < c-, c0 < c+}, c- holds the cell of -1
Shape shape_of(const CellMap& F, const SetLattice& L) {
    Shape s;
    if (L.size() != 5) {
        s.why = "lattice has " + std::to_string(L.size()) + " elements";
        return s;
    }
    auto J = join_irreducibles(L);
    if (J.poset.size() != 3) {
        s.why = "J has " + std::to_string(J.poset.size()) + " elements";
        return s;
    }
    auto mins = minimal_elements(J.poset, J.poset.carrier());
    if (mins.size() != 1) {
        s.why = "J has " + std::to_string(mins.size()) + " minimal elements";
        return s;
    }
    int m = mins[0];
    s.c0 = L.element(J.elems[m]);
    for (int p = 0; p < 3; ++p) {
        if (p == m) continue;
        if (!J.poset.leq(m, p)) {
            s.why = "J is not a V";
            return s;
        }
        Mask e = L.element(J.elems[p]);
        if (has(e, 0)) s.cm = e;
        else if (has(e, F.size() - 1)) s.cp = e;
    }
    for (int p = 0; p < 3; ++p)
        for (int q = 0; q < 3; ++q)
            if (p != m && q != m && p != q && J.poset.leq(p, q)) {
                s.why = "upper elements comparable";
                return s;
            }
    if (!s.cm || !s.cp) {
        s.why = "upper elements do not reach the ends";
        return s;
    }
    s.ok = true;
    return s;
}

bool support_within(const CellGrid& fine, Mask a, const CellGrid& coarse, Mask b) {
    for (auto [lo, hi] : fine.support(a)) {
        bool in = false;
        for (auto [clo, chi] : coarse.support(b))
            if (lo >= clo - kSupportTol && hi <= chi + kSupportTol) in = true;
        if (!in) return false;
    }
    return true;
}

}  // namespace

int main() {
    run(1, "Birkhoff representation", [](Outcome& o) {
        std::vector<Poset> posets;
        for (int n = 0; n <= 5; ++n)
            for (auto& P : all_posets(n)) posets.push_back(P);
        Rng rng(1);
        for (int i = 0; i < kRandomPosets; ++i) posets.push_back(random_poset(rng, 1 + pick(rng, 8)));
        PropReport r = parallel_reports(static_cast<int>(posets.size()), 0, [&](int i, PropReport& rep) {
            birkhoff_poset_props(posets[i], rep);
            birkhoff_lattice_props(down_set_lattice(posets[i]), rep);
        });
        absorb(r, o);
        o.detail += ", " + std::to_string(posets.size()) + " posets";
    });

    run(2, "Booleanization", [](Outcome& o) {
        Rng rng(2);
        PropReport r;
        for (int i = 0; i < kRandomHoms; ++i) {
            Poset P = random_poset(rng, 1 + pick(rng, 5)), Q = random_poset(rng, 1 + pick(rng, 5));
            auto g = random_monotone(rng, Q, P);
            boolean_props(P, Q, g, r);
        }
        boolean_algebra_props(4, r);
        absorb(r, o);
    });

    std::vector<FiniteDynSys> corpus = exact_corpus();

    run(3, "exact dynamics laws", [&](Outcome& o) {
        PropReport r = parallel_reports(static_cast<int>(corpus.size()), 0,
                                        [&](int i, PropReport& rep) { exact_props(corpus[i], rep); });
        absorb(r, o);
        o.detail += ", " + std::to_string(corpus.size()) + " systems";
    });

    run(4, "first example fixture values", [](Outcome& o) {
        FiniteDynSys f({"m", "z", "a", "b"}, {1, 1, 3, 3});
        const Mask m = 1, z = 2, a = 4, b = 8;
        std::vector<Mask> att{0, z, b, z | b};
        std::vector<Mask> rep{0, m | z, a | b, f.all()};
        std::sort(att.begin(), att.end(), canon_less);
        std::sort(rep.begin(), rep.end(), canon_less);
        auto want = [&](bool c, const char* what) {
            if (!c) o.fail(what);
        };
        want(att_oracle(f) == att, "oracle Att");
        want(att_lattice(f).elements() == att, "Att");
        std::vector<Mask> rep_oracle;
        for (Mask A : att_oracle(f)) rep_oracle.push_back(dual_plus_oracle(f, A));
        std::sort(rep_oracle.begin(), rep_oracle.end(), canon_less);
        want(rep_oracle == rep, "oracle Rep");
        want(rep_lattice(f).elements() == rep, "Rep");
        want(dual_plus_oracle(f, z) == (a | b) && dual_repeller(f, z) == (a | b), "{z}*");
        want(dual_minus_oracle(f, a | b) == z && dual_minus(f, a | b) == z, "dual_minus({a,b})");
        want(alpha_oracle(f, m) == 0 && alpha(f, m) == 0, "alpha({m})");
        want(pre(f, b) == (a | b) && preimage(f, b) == (a | b), "preimage({b})");
        if (o.ok) o.detail = "Att, Rep, {z}*, dual_minus, alpha, preimage";
    });

    run(5, "lifting", [&](Outcome& o) {
        PropReport r = parallel_reports(static_cast<int>(corpus.size()), 0,
                                        [&](int i, PropReport& rep) { lift_props(corpus[i], rep); });
        absorb(r, o);
    });

    run(6, "first grid at 16 cells", [](Outcome& o) {
        CellMap F = g1(16);
        auto seeds = g1_seeds(F);
        SetLattice L = comb_att_lattice(F, seeds);
        Shape s = shape_of(F, L);
        if (!s.ok) o.fail("(i) " + s.why);
        if (s.c0 != 0b0000000110000000) o.fail("(i) centre " + mask_str(s.c0, F.grid.labels()));
        SetLattice U = comb_att_lattice(F);
        std::string info = "unseeded lattice has " + std::to_string(U.size()) + " elements";

        SetLattice R = comb_rep_lattice(F, seeds);
        GridLift rl = grid_repeller_lift(F, R.elements(), seeds);
        for (size_t i = 0; i < rl.emb.downsets.size(); ++i)
            if (!is_repelling_block(F, rl.cert.table[i]) || comb_inv_plus(F, rl.cert.table[i]) != rl.emb.s[i])
                o.fail("(ii) repeller lift entry " + std::to_string(i));

        // oracle: any pair of blocks over c- and c+ whose meet and join land right
        BlockLattices B = block_lattices(F);
        std::vector<Mask> over_m, over_p;
        for (Mask N : B.attracting) {
            Mask h = comb_inv(F, N);
            if (h == s.cm) over_m.push_back(N);
            if (h == s.cp) over_p.push_back(N);
        }
        long lifts = 0;
        for (Mask x : over_m)
            for (Mask y : over_p)
                if (comb_inv(F, x & y) == s.c0 && comb_inv(F, x | y) == F.all()) ++lifts;
        info += ", exhaustive search finds " + std::to_string(lifts) + " lifts";

        try {
            grid_attractor_lift(F, L.elements(), seeds, true);
            o.fail("(iii) direct route lifted, no ObstructionFound");
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::ObstructionFound) throw;
        }
        if (o.ok) o.detail = info;
        else o.detail += " [" + info + "]";
    });

    run(7, "first grid refinement", [](Outcome& o) {
        CellMap prev;
        Shape prev_shape;
        for (int n : {16, 32, 64}) {
            CellMap F = g1(n);
            SetLattice L = comb_att_lattice(F, g1_seeds(F));
            Shape s = shape_of(F, L);
            if (!s.ok) {
                o.fail(std::to_string(n) + " cells: " + s.why);
                return;
            }
            if (prev_shape.ok) {
                if (!support_within(F.grid, s.c0, prev.grid, prev_shape.c0) ||
                    !support_within(F.grid, s.cm, prev.grid, prev_shape.cm) ||
                    !support_within(F.grid, s.cp, prev.grid, prev_shape.cp))
                    o.fail(std::to_string(n) + " cells: support escapes the coarser one");
            }
            prev = F;
            prev_shape = s;
        }
        if (o.ok) o.detail = "16, 32, 64 cells";
    });

    run(8, "spaciousness falsifier", [&](Outcome& o) {
        PropReport r = parallel_reports(static_cast<int>(corpus.size()), 0,
                                        [&](int i, PropReport& rep) { falsifier_props(corpus[i], rep); });
        absorb(r, o);
        CellMap F = g1(16);
        SetLattice L = comb_att_lattice(F, g1_seeds(F));
        FiniteHom H = grid_att_hom(F, L);
        try {
            FalsifierReport g = spaciousness_falsifier(H, 3);
            if (!g.counterexample)
                o.fail("no witness on the grid after " + std::to_string(g.checked) + " configurations");
            else
                o.detail += ", grid witness " + g.witness;
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::BoundExceeded) throw;
            o.fail("grid search over budget");
        }
    });

    return all_ok ? 0 : 1;
}
