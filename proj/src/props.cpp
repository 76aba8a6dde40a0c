#include "morselat/props.hpp"

#include <algorithm>
#include <sstream>
#include <thread>

#include "morselat/dynlift.hpp"
#include "morselat/error.hpp"
#include "morselat/lift.hpp"

namespace morselat {

void PropReport::merge(const PropReport& o) {
    for (auto& [tag, t] : o.tags_) {
        TagResult& mine = tags_[tag];
        mine.checked += t.checked;
        mine.failed += t.failed;
        if (mine.counterexample.empty()) mine.counterexample = t.counterexample;
    }
}

bool PropReport::ok() const {
    for (auto& [tag, t] : tags_)
        if (t.failed) return false;
    return true;
}

std::string system_str(const FiniteDynSys& f) {
    std::ostringstream os;
    os << "{";
    for (int x = 0; x < f.size(); ++x)
        os << (x ? ", " : "") << f.states[x] << "->" << f.states[f.next[x]];
    os << "}";
    return os.str();
}

std::string poset_str(const Poset& P) {
    std::ostringstream os;
    os << "{";
    bool first = true;
    for (auto [p, q] : cover_pairs(P)) {
        os << (first ? "" : ", ") << P.labels[p] << "<" << P.labels[q];
        first = false;
    }
    os << "} on " << P.size();
    return os.str();
}

namespace {

// all pairs of a family, or a deterministic sample of `cap` pairs
template <class F>
void for_pairs(const std::vector<Mask>& a, const std::vector<Mask>& b, F&& fn, size_t cap = 4096) {
    if (a.empty() || b.empty()) return;
    if (a.size() * b.size() <= cap) {
        for (Mask x : a)
            for (Mask y : b) fn(x, y);
        return;
    }
    Rng rng(a.size() * 1000003 + b.size());
    for (size_t i = 0; i < cap; ++i)
        fn(a[pick(rng, static_cast<int>(a.size()))], b[pick(rng, static_cast<int>(b.size()))]);
}

template <class F>
void for_triples(const std::vector<Mask>& a, F&& fn, size_t cap = 4096) {
    if (a.empty()) return;
    if (a.size() * a.size() * a.size() <= cap) {
        for (Mask x : a)
            for (Mask y : a)
                for (Mask z : a) fn(x, y, z);
        return;
    }
    Rng rng(a.size() * 7919);
    const int n = static_cast<int>(a.size());
    for (size_t i = 0; i < cap; ++i) fn(a[pick(rng, n)], a[pick(rng, n)], a[pick(rng, n)]);
}

// supersets of base inside `within`, at most cap of them, base first
std::vector<Mask> between(Mask base, Mask within, size_t cap = 256) {
    std::vector<Mask> out;
    Mask free = within & ~base;
    Mask s = 0;
    do {
        out.push_back(base | s);
        s = (s - free) & free;
    } while (s && out.size() < cap);
    return out;
}

struct Tables {
    int n;
    Mask X;
    std::vector<Mask> img, pre, inv, invp, om, al;
    std::vector<InvarianceFlags> fl;
    std::vector<char> an, rn;
    std::vector<Mask> all, fwd, bwd, invset, fb, anbhd, rnbhd;
};

Tables tabulate(const FiniteDynSys& f) {
    Tables t;
    t.n = f.size();
    t.X = f.all();
    const size_t N = size_t{1} << t.n;
    t.img.resize(N);
    t.pre.resize(N);
    t.inv.resize(N);
    t.invp.resize(N);
    t.om.resize(N);
    t.al.resize(N);
    t.fl.resize(N);
    t.an.resize(N);
    t.rn.resize(N);
    for (size_t s = 0; s < N; ++s) {
        Mask S = s;
        t.img[s] = image(f, S);
        t.pre[s] = preimage(f, S);
        t.inv[s] = inv(f, S);
        t.invp[s] = inv_plus(f, S);
        t.om[s] = omega(f, S);
        t.al[s] = alpha(f, S);
        t.fl[s] = classify_invariance(f, S);
        t.an[s] = is_attracting_nbhd(f, S);
        t.rn[s] = is_repelling_nbhd(f, S);
        t.all.push_back(S);
        if (t.fl[s].forward) t.fwd.push_back(S);
        if (t.fl[s].backward) t.bwd.push_back(S);
        if (t.fl[s].invariant) t.invset.push_back(S);
        if (t.fl[s].forward_backward) t.fb.push_back(S);
        if (t.an[s]) t.anbhd.push_back(S);
        if (t.rn[s]) t.rnbhd.push_back(S);
    }
    return t;
}

// points with an infinite backward walk inside U
Mask backward_core(const FiniteDynSys& f, Mask U) {
    Mask T = U;
    for (;;) {
        Mask n = T & image(f, T);
        if (n == T) return T;
        T = n;
    }
}

// sets f^k(U) on the tail cycle
std::vector<Mask> image_tail_cycle(const FiniteDynSys& f, Mask U) {
    std::vector<Mask> seq{U};
    for (;;) {
        Mask nx = image(f, seq.back());
        auto it = std::find(seq.begin(), seq.end(), nx);
        if (it != seq.end()) return {it, seq.end()};
        seq.push_back(nx);
    }
}

}  // namespace

void exact_props(const FiniteDynSys& f, PropReport& r, int pair_limit) {
    if (f.size() > 12) throw Error(ErrorKind::TooLarge, "property sweep is limited to 12 states");
    const Tables t = tabulate(f);
    const Mask X = t.X;
    const std::string sys = system_str(f);
    auto L = [&](Mask m) { return mask_str(m, f.states); };
    auto at = [&](Mask m) -> size_t { return static_cast<size_t>(m); };
    auto ce = [&](const std::string& what) { return [&, what] { return sys + ": " + what; }; };
    const size_t cap = f.size() <= pair_limit ? (size_t{1} << (2 * f.size())) : 4096;
    const bool surj = f.surjective();

    // complements and invariance classes
    for (Mask S : t.all) {
        Mask Sc = X & ~S;
        r.expect("P2.5", t.fl[at(S)].forward == t.fl[at(Sc)].backward, ce("complement of " + L(S)));
        if (t.fl[at(S)].forward_backward)
            r.expect("C2.6", t.fl[at(Sc)].forward_backward, ce("complement of " + L(S)));
    }
    for_pairs(t.fwd, t.fwd, [&](Mask a, Mask b) {
        r.expect("P2.5", t.fl[at(a | b)].forward && t.fl[at(a & b)].forward &&
                             t.fl[at(X & ~(a | b))].backward && t.fl[at(X & ~(a & b))].backward,
                 ce(L(a) + ", " + L(b)));
        r.expect("L2.7", t.inv[at(a | b)] == (t.inv[at(a)] | t.inv[at(b)]) &&
                             t.inv[at(a & b)] == t.inv[at(t.inv[at(a)] & t.inv[at(b)])],
                 ce("forward " + L(a) + ", " + L(b)));
    }, cap);
    for_pairs(t.bwd, t.bwd, [&](Mask a, Mask b) {
        r.expect("L2.7", t.inv[at(a | b)] == (t.inv[at(a)] | t.inv[at(b)]) &&
                             t.inv[at(a & b)] == t.inv[at(t.inv[at(a)] & t.inv[at(b)])],
                 ce("backward " + L(a) + ", " + L(b)));
    }, cap);
    for_pairs(t.fb, t.fb, [&](Mask a, Mask b) {
        r.expect("C2.6", t.fl[at(a | b)].forward_backward && t.fl[at(a & b)].forward_backward,
                 ce(L(a) + ", " + L(b)));
    }, cap);

    // invariant sets as a lattice under union and Inv of the intersection
    {
        auto meet = [&](Mask a, Mask b) { return t.inv[at(a & b)]; };
        const Mask one = t.inv[at(X)];
        r.expect("P2.8", t.fl[0].invariant, ce("empty set not invariant"));
        for (Mask a : t.invset)
            r.expect("P2.8", subset(a, one) && meet(a, one) == a && (a | 0) == a,
                     ce("bounds at " + L(a)));
        for_pairs(t.invset, t.invset, [&](Mask a, Mask b) {
            bool ok = t.fl[at(a | b)].invariant && t.fl[at(meet(a, b))].invariant;
            ok = ok && meet(a, b) == meet(b, a) && meet(a, a) == a;
            ok = ok && meet(a, a | b) == a && (a | meet(a, b)) == a;
            r.expect("P2.8", ok, ce("closure or absorption at " + L(a) + ", " + L(b)));
        }, cap);
        for_triples(t.invset, [&](Mask a, Mask b, Mask c) {
            bool ok = meet(meet(a, b), c) == meet(a, meet(b, c));
            ok = ok && meet(a, b | c) == (meet(a, b) | meet(a, c));
            ok = ok && (a | meet(b, c)) == meet(a | b, a | c);
            r.expect("P2.8", ok, ce("at " + L(a) + ", " + L(b) + ", " + L(c)));
        });
        for_pairs(t.fb, t.invset, [&](Mask a, Mask b) {
            r.expect("L2.9", t.fl[at(a & b)].invariant, ce(L(a) + " and " + L(b)));
        }, cap);
    }
    for (Mask U : t.bwd)
        r.expect("L2.10", t.fl[at(t.invp[at(U)])].forward_backward, ce("Inv+ of " + L(U)));

    // omega limits
    for (Mask U : t.all) {
        const Mask w = t.om[at(U)];
        r.expect("P2.11.i", t.fl[at(w)].invariant, ce("omega of " + L(U)));
        r.expect("P2.11.ii", U == 0 || w != 0, ce("omega of " + L(U)));
        auto tail = image_tail_cycle(f, U);
        bool eventually_inside = std::all_of(tail.begin(), tail.end(), [&](Mask s) { return subset(s, U); });
        if (eventually_inside)
            r.expect("P2.11.iii", w == t.inv[at(U)] && subset(w, U), ce("omega of " + L(U)));
        r.expect("P2.11.vi", w == omega(f, U), ce("omega of " + L(U)));
        r.expect("P2.11.vii", subset(backward_core(f, U), w), ce("backward orbit in " + L(U)));
        if (t.fl[at(U)].invariant) r.expect("P2.11.viii", w == U, ce("omega of " + L(U)));
    }
    for_pairs(t.all, t.all, [&](Mask U, Mask V) {
        r.expect("P2.11.iv", subset(t.om[at(U & V)], t.om[at(U)]), ce(L(U & V) + " in " + L(U)));
        r.expect("P2.11.v", t.om[at(U | V)] == (t.om[at(U)] | t.om[at(V)]) &&
                                subset(t.om[at(U & V)], t.om[at(U)] & t.om[at(V)]),
                 ce(L(U) + ", " + L(V)));
        r.expect("P2.13.iv", subset(t.al[at(U & V)], t.al[at(U)]), ce(L(U & V) + " in " + L(U)));
        r.expect("P2.13.v", t.al[at(U | V)] == (t.al[at(U)] | t.al[at(V)]) &&
                                subset(t.al[at(U & V)], t.al[at(U)] & t.al[at(V)]),
                 ce(L(U) + ", " + L(V)));
    }, cap);

    // alpha limits
    for (Mask U : t.all) {
        const Mask a = t.al[at(U)];
        const auto& fu = t.fl[at(U)];
        r.expect("P2.13.i", t.fl[at(a)].forward, ce("alpha of " + L(U)));
        if (surj && U) r.expect("P2.13.ii", a != 0, ce("alpha of " + L(U)));
        if (fu.backward)
            r.expect("P2.13.iii", subset(a, U) && a == t.invp[at(U)], ce("alpha of " + L(U)));
        r.expect("P2.13.vi", subset(t.invp[at(U)], a) && (!subset(a, U) || t.invp[at(U)] == a),
                 ce("alpha of " + L(U)));
        if (fu.backward) {
            bool ok = t.fl[at(a)].forward_backward;
            if (surj) ok = ok && t.fl[at(a)].strong && a == t.inv[at(U)];
            r.expect("P2.13.vii", ok, ce("alpha of " + L(U)));
        }
        if (fu.forward) r.expect("P2.13.viii", subset(U, a), ce("alpha of " + L(U)));
        if (fu.forward_backward) r.expect("P2.13.viii", U == a, ce("alpha of " + L(U)));
    }

    // orbital alpha limits and dual sets
    std::vector<Mask> ao_union(f.size(), 0);
    std::vector<std::vector<Mask>> ao(f.size());
    for (int x = 0; x < f.size(); ++x) {
        for (const Orbit& o : backward_orbits(f, x)) {
            Mask c = alpha_orbital(f, o);
            ao[x].push_back(c);
            ao_union[x] |= c;
            r.expect("P2.15", c != 0 && t.fl[at(c)].invariant && subset(c, t.al[bit(x)]),
                     ce("orbital alpha at " + f.states[x]));
        }
        r.expect("P2.15", !ao[x].empty() || t.al[bit(x)] == 0,
                 ce("no backward orbit but nonempty alpha at " + f.states[x]));
    }
    for (Mask U : t.all)
        for (int x : members(U))
            r.expect("P2.15", subset(ao_union[x], t.al[at(U)]),
                     ce("orbital alpha of " + f.states[x] + " outside alpha of " + L(U)));
    std::vector<Mask> om_pt(f.size());
    for (int x = 0; x < f.size(); ++x) om_pt[x] = t.om[bit(x)];
    for (Mask S : t.all) {
        Mask dp = dual_plus(f, S), dm = dual_minus(f, S);
        Mask dp_oracle = 0, dm_oracle = 0;
        for (int x = 0; x < f.size(); ++x) {
            if ((om_pt[x] & S) == 0) dp_oracle |= bit(x);
            for (Mask c : ao[x])
                if ((c & S) == 0) dm_oracle |= bit(x);
        }
        bool ok = dp == dp_oracle && dm == dm_oracle;
        ok = ok && t.fl[at(dp)].forward_backward && t.fl[at(dm)].invariant;
        if (t.fl[at(S)].invariant) ok = ok && (S & dp) == 0;
        if (t.fl[at(S)].forward_backward) ok = ok && (S & dm) == 0;
        r.expect("P2.16", ok, ce("dual sets of " + L(S)));
    }

    // attractors and repellers
    std::vector<Mask> att, rep;
    for (Mask U : t.anbhd) att.push_back(t.om[at(U)]);
    for (Mask U : t.rnbhd) rep.push_back(t.al[at(U)]);
    std::sort(att.begin(), att.end());
    att.erase(std::unique(att.begin(), att.end()), att.end());
    std::sort(rep.begin(), rep.end());
    rep.erase(std::unique(rep.begin(), rep.end()), rep.end());
    auto in = [](const std::vector<Mask>& v, Mask m) { return std::binary_search(v.begin(), v.end(), m); };

    for (Mask U : t.all) {
        const Mask Uc = X & ~U;
        if (t.an[at(U)]) r.expect("P3.1", t.inv[at(U)] == t.om[at(U)], ce("at " + L(U)));
        r.expect("L3.3", is_trapping_region(f, U).holds == (t.fl[at(U)].forward && t.an[at(U)]),
                 ce("at " + L(U)));
        r.expect("C3.24", bool(t.an[at(U)]) == bool(t.rn[at(Uc)]), ce("at " + L(U)));
        if (t.rn[at(U)])
            r.expect("C3.26", t.al[at(U)] == t.invp[at(U)] && subset(t.al[at(U)], U),
                     ce("at " + L(U)));
        if (t.fl[at(U)].backward)
            r.expect("P3.12", t.invp[at(U)] == t.al[at(U)] && t.fl[at(t.invp[at(U)])].forward_backward,
                     ce("repelling region " + L(U)));
    }
    for (Mask U : t.anbhd) {
        const Mask A = t.om[at(U)];
        for (Mask V : between(A, U))
            r.expect("L3.4", t.an[at(V)] && t.om[at(V)] == A, ce(L(V) + " between " + L(A) + " and " + L(U)));
    }
    for (Mask U : t.rnbhd) {
        const Mask R = t.al[at(U)];
        for (Mask V : between(R, U))
            r.expect("C3.27", t.rn[at(V)] && t.al[at(V)] == R, ce(L(V) + " between " + L(R) + " and " + L(U)));
    }
    for (Mask A : t.invset) {
        bool found = false;
        for (Mask Nb : between(A, X)) {
            if (subset(backward_core(f, Nb), A)) {
                found = true;
                r.expect("L3.11", t.inv[at(Nb)] == A, ce("Inv of " + L(Nb)));
                break;
            }
        }
        r.expect("L3.11", in(att, A) == found, ce("invariant set " + L(A)));
    }
    for (Mask R : rep) r.expect("P3.12", t.fl[at(R)].forward_backward, ce("repeller " + L(R)));
    for_pairs(att, rep, [&](Mask A, Mask R) {
        r.expect("P3.13", t.fl[at(A & R)].invariant, ce(L(A) + " and " + L(R)));
    }, cap);

    std::vector<Mask> att_probe = att, rep_probe = rep;
    if (att_probe.size() > 32) att_probe.resize(32);
    if (rep_probe.size() > 32) rep_probe.resize(32);
    for (Mask A : att_probe) {
        const Mask As = dual_repeller(f, A);
        r.expect("P3.16", As == dual_plus(f, A), ce("dual of " + L(A)));
        r.expect("P3.18", in(rep, As) && dual_attractor(f, As) == A, ce("double dual of " + L(A)));
        for (Mask U : t.all) {
            bool lhs = t.an[at(U)] && t.om[at(U)] == A;
            bool rhs = subset(A, U) && (U & As) == 0;
            r.expect("P3.21", lhs == rhs, ce(L(U) + " for " + L(A)));
        }
        FiniteDynSys g = restrict(f, A == 0 ? X : A);
        if (A) {
            std::vector<int> back = members(A);
            SetLattice ga = att_lattice(g);
            for (Mask Ag : ga.elements()) {
                Mask lifted = 0;
                for (int i : members(Ag)) lifted |= bit(back[i]);
                r.expect("P3.7", in(att, lifted), ce(L(lifted) + " inside " + L(A)));
            }
        }
        r.expect("T3.19", check_ar_pair(f, A, As).ok, ce("pair " + L(A) + ", " + L(As)));
    }
    for (Mask R : rep_probe) {
        const Mask Rs = dual_attractor(f, R);
        r.expect("P3.18", in(att, Rs) && dual_repeller(f, Rs) == R, ce("double dual of " + L(R)));
        for (Mask U : t.all) {
            bool lhs = t.rn[at(U)] && t.al[at(U)] == R;
            bool rhs = subset(R, U) && (U & Rs) == 0;
            r.expect("P3.25", lhs == rhs, ce(L(U) + " for " + L(R)));
        }
        if (R) {
            FiniteDynSys g = restrict(f, R);
            std::vector<int> back = members(R);
            SetLattice gr = rep_lattice(g);
            for (Mask Rg : gr.elements()) {
                Mask lifted = 0;
                for (int i : members(Rg)) lifted |= bit(back[i]);
                r.expect("P3.28", in(rep, lifted), ce(L(lifted) + " inside " + L(R)));
            }
        }
    }
    for_pairs(att_probe, rep_probe, [&](Mask A, Mask R) {
        bool pair = dual_repeller(f, A) == R;
        r.expect("T3.19", check_ar_pair(f, A, R).ok == pair, ce("pair " + L(A) + ", " + L(R)));
    }, 256);

    // neighbourhood lattices and limit maps
    r.expect("P4.1", t.an[0] && t.an[at(X)], ce("bounds"));
    r.expect("P4.2", t.rn[0] && t.rn[at(X)], ce("bounds"));
    for_pairs(t.anbhd, t.anbhd, [&](Mask U, Mask V) {
        r.expect("P4.1", t.an[at(U | V)] && t.an[at(U & V)], ce(L(U) + ", " + L(V)));
        r.expect("P4.3", t.om[at(U | V)] == (t.om[at(U)] | t.om[at(V)]) &&
                             t.om[at(U & V)] == t.inv[at(t.om[at(U)] & t.om[at(V)])],
                 ce(L(U) + ", " + L(V)));
        r.expect("P4.6", subset(U, V) == subset(X & ~V, X & ~U), ce(L(U) + ", " + L(V)));
    }, cap);
    for_pairs(t.rnbhd, t.rnbhd, [&](Mask U, Mask V) {
        r.expect("P4.2", t.rn[at(U | V)] && t.rn[at(U & V)], ce(L(U) + ", " + L(V)));
        r.expect("P4.4", t.al[at(U | V)] == (t.al[at(U)] | t.al[at(V)]) &&
                             t.al[at(U & V)] == (t.al[at(U)] & t.al[at(V)]),
                 ce(L(U) + ", " + L(V)));
    }, cap);
    for_pairs(att_probe, att_probe, [&](Mask A, Mask B) {
        r.expect("P4.7", subset(A, B) == subset(dual_repeller(f, B), dual_repeller(f, A)),
                 ce(L(A) + ", " + L(B)));
    });
    {
        Check c = commuting_square_check(f);
        r.expect("D1", c.ok, ce(c.what));
    }
}

void lift_props(const FiniteDynSys& f, PropReport& r, int max_att) {
    SetLattice att = att_lattice(f);
    if (att.size() > max_att) return;
    SetLattice rep = rep_lattice(f);
    const std::string sys = system_str(f);
    for (auto& fam : bounded_sublattices(rep, rep.size())) {
        std::string where = sys + " Rep sublattice of size " + std::to_string(fam.size());
        try {
            Embedding E = embedding_of(SetLattice(rep.universe(), fam, true));
            LiftProblem pb = rep_lift_problem(f, E.P, E.downsets, E.s);
            LiftCertificate c = lift(pb);
            Violation v = verify_certificate(c, pb);
            r.expect("T1.2", v.ok, [&] { return where + ": " + v.what; });
            bool self = true;
            for (Mask R : E.s) self = self && pb.in_k(R) && pb.h(R) == R;
            r.expect("T1.2.self", self, [&] { return where; });
        } catch (const Error& e) {
            r.expect("T1.2", false, [&] { return where + ": " + e.what(); });
        }
    }
    DualityContext ctx = exact_duality(f);
    for (auto& fam : bounded_sublattices(att, att.size())) {
        std::string where = sys + " Att sublattice of size " + std::to_string(fam.size());
        try {
            Embedding E = embedding_of(SetLattice(att.universe(), fam, false));
            DualLift d = transport_by_duality(E.P, E.downsets, E.s, ctx);
            bool ok = true;
            const auto& D = E.downsets;
            auto k = [&](Mask a) {
                return d.att.table[std::lower_bound(D.begin(), D.end(), a, canon_less) - D.begin()];
            };
            for (size_t i = 0; i < D.size(); ++i) {
                ok = ok && is_attracting_nbhd(f, d.att.table[i]) && inv(f, d.att.table[i]) == E.s[i];
                for (size_t j = 0; j < D.size(); ++j)
                    ok = ok && k(D[i] | D[j]) == (d.att.table[i] | d.att.table[j]) &&
                         k(D[i] & D[j]) == (d.att.table[i] & d.att.table[j]);
            }
            for (size_t i = 0; i < D.size(); ++i)
                for (size_t j = 0; j < D.size(); ++j)
                    if (i != j && d.att.table[i] == d.att.table[j]) ok = false;
            r.expect("T1.2", ok, [&] { return where + ": transported table"; });
        } catch (const Error& e) {
            r.expect("T1.2", false, [&] { return where + ": " + e.what(); });
        }
    }
}

void falsifier_props(const FiniteDynSys& f, PropReport& r, int max_poset) {
    try {
        FalsifierReport rep = spaciousness_falsifier(invplus_on_rnbhd(f), max_poset);
        r.expect("P5.12", !rep.counterexample, [&] { return system_str(f) + ": " + rep.witness; });
    } catch (const Error& e) {
        r.expect("P5.12", false, [&] { return system_str(f) + ": " + e.what(); });
    }
}

void order_props(const Poset& P, PropReport& r) {
    const std::string ps = poset_str(P);
    auto D = all_down_sets(P);
    std::vector<Mask> oracle;
    for (Mask S = 0; S <= P.carrier(); ++S) {
        bool down = true;
        for (int q : members(S)) down = down && subset(P.below[q], S);
        if (down) oracle.push_back(S);
        if (S == P.carrier()) break;
    }
    std::vector<Mask> sorted_d = D;
    std::sort(sorted_d.begin(), sorted_d.end());
    r.expect("O.downsets", sorted_d == oracle, [&] { return ps + ": down-set enumeration"; });
    for_pairs(D, D, [&](Mask a, Mask b) {
        bool ok = std::binary_search(oracle.begin(), oracle.end(), a | b) &&
                  std::binary_search(oracle.begin(), oracle.end(), a & b);
        r.expect("O.downsets", ok, [&] { return ps + ": closure"; });
    });
    for_triples(D, [&](Mask a, Mask b, Mask c) {
        bool ok = (a & (b | c)) == ((a & b) | (a & c)) && ((a | (b & c)) == ((a | b) & (a | c)));
        ok = ok && (a | (a & b)) == a && (a & (a | b)) == a;
        r.expect("O.lattice", ok, [&] { return ps + ": lattice axioms"; });
    });
    Poset Pd = dual_poset(P);
    for (Mask a : D) {
        Mask b = complement_map(P, a);
        r.expect("O.complement", is_down_set(Pd, b) && complement_map(Pd, b) == a,
                 [&] { return ps + ": complement of " + mask_str(a, P.labels); });
    }
    for_pairs(D, D, [&](Mask a, Mask b) {
        r.expect("O.complement", subset(a, b) == subset(complement_map(P, b), complement_map(P, a)),
                 [&] { return ps + ": order reversal"; });
    });
}

void birkhoff_poset_props(const Poset& P, PropReport& r) {
    const std::string ps = poset_str(P);
    SetLattice L = down_set_lattice(P);
    JoinIrreducibles J = join_irreducibles(L);
    bool ok = J.poset.size() == P.size();
    // J(O(P)) should be {down(p)}; map each to its p
    std::vector<int> to_p(J.poset.size(), -1);
    for (int i = 0; ok && i < J.poset.size(); ++i) {
        Mask e = L.element(J.elems[i]);
        for (int p = 0; p < P.size(); ++p)
            if (down_set(P, p) == e) to_p[i] = p;
        ok = to_p[i] >= 0;
    }
    for (int i = 0; ok && i < J.poset.size(); ++i)
        for (int j = 0; j < J.poset.size(); ++j)
            ok = ok && J.poset.leq(i, j) == P.leq(to_p[i], to_p[j]);
    r.expect("T2.2", ok, [&] { return ps + ": J(O(P)) is not P"; });
    if (!ok) return;
    // O(J(O(P))) relabelled equals O(P)
    std::vector<Mask> rel;
    for (Mask d : all_down_sets(J.poset)) {
        Mask m = 0;
        for (int i : members(d)) m |= bit(to_p[i]);
        rel.push_back(m);
    }
    std::sort(rel.begin(), rel.end(), canon_less);
    r.expect("T2.2", rel == L.elements(), [&] { return ps + ": O(J(O(P))) differs from O(P)"; });
    birkhoff_lattice_props(L, r);
}

void birkhoff_lattice_props(const SetLattice& L, PropReport& r) {
    JoinIrreducibles J = join_irreducibles(L);
    auto OJ = all_down_sets(J.poset);
    auto where = [&] { return "lattice of " + std::to_string(L.size()) + " on " + std::to_string(L.universe().size()); };
    r.expect("T2.2", static_cast<int>(OJ.size()) == L.size(), where);
    for (Mask a : L.elements())
        r.expect("T2.2", birkhoff_join(L, J, birkhoff_down(L, J, a)) == a, where);
    for (Mask d : OJ) r.expect("T2.2", birkhoff_down(L, J, birkhoff_join(L, J, d)) == d, where);
    BooleanRep B = booleanize(L);
    r.expect("P2.3", B.j.front() == 0 && B.j.back() == B.one(), where);
    for_pairs(L.elements(), L.elements(), [&](Mask a, Mask b) {
        Mask ja = B.j[L.index_of(a)], jb = B.j[L.index_of(b)];
        bool ok = B.j[L.index_of(a | b)] == (ja | jb) && B.j[L.index_of(L.meet(a, b))] == (ja & jb);
        ok = ok && ((ja == jb) == (a == b));
        ok = ok && leq_boolean(B, ja, jb) == L.leq(a, b);
        r.expect("P2.3", ok, where);
    });
    for_triples(L.elements(), [&](Mask a, Mask b, Mask c) {
        r.expect("L.distributive", L.meet(a, b | c) == (L.meet(a, b) | L.meet(a, c)) &&
                                       (a | L.meet(b, c)) == L.meet(a | b, a | c),
                 where);
    });
}

void boolean_props(const Poset& P, const Poset& Q, const std::vector<int>& g, PropReport& r) {
    SetLattice OP = down_set_lattice(P), OQ = down_set_lattice(Q);
    HomTable f = hom_from_monotone(P, Q, g, OP, OQ);
    auto where = [&] { return poset_str(P) + " -> " + poset_str(Q); };
    HomReport hr = check_hom(f, OP, OQ);
    r.expect("hom", hr.ok, where);
    if (!hr.ok) return;
    BooleanExtension Bf = boolean_extension(P, OP, f, OQ);
    BooleanRep BQ = booleanize(OQ);
    auto jf = [&](Mask a) { return BQ.j[f[OP.index_of(a)]]; };
    std::vector<Mask> atom(P.size());
    for (int p = 0; p < P.size(); ++p) atom[p] = jf(P.below[p]) & ~jf(P.below[p] & ~bit(p));
    for (int p = 0; p < P.size(); ++p) {
        r.expect("E3", Bf(bit(p)) == atom[p], where);
        for (int q = p + 1; q < P.size(); ++q) r.expect("E4", (Bf(bit(p)) & Bf(bit(q))) == 0, where);
    }
    for (Mask a = 0;; ++a) {
        Mask join = 0;
        for (int p : members(a)) join |= atom[p];
        r.expect("E3", Bf(a) == join, where);
        r.expect("B.complement", Bf(P.carrier() & ~a) == (BQ.one() & ~Bf(a)), where);
        if (a == P.carrier()) break;
    }
    for (Mask a : OP.elements()) r.expect("B.agree", Bf(a) == jf(a), where);
}

void boolean_algebra_props(int s, PropReport& r) {
    const Mask all = full_mask(s);
    for (Mask a = 0; a <= all; ++a)
        for (Mask b = 0; b <= all; ++b)
            for (Mask c = 0; c <= all; ++c)
                r.expect("L5.3", ((c & ~b & a) == 0) == subset(c & a, b),
                         [&] { return "triple in 2^" + std::to_string(s); });
}

PropReport parallel_reports(int n, int workers, const std::function<void(int, PropReport&)>& fn) {
    if (workers <= 0) workers = static_cast<int>(std::max(1U, std::thread::hardware_concurrency()));
    workers = std::max(1, std::min(workers, n));
    std::vector<PropReport> parts(n);
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            for (int i = w; i < n; i += workers) {
                try {
                    fn(i, parts[i]);
                } catch (const std::exception& e) {
                    std::string msg = e.what();
                    parts[i].expect("error", false, [&] { return msg; });
                }
            }
        });
    for (auto& t : pool) t.join();
    PropReport out;
    for (auto& p : parts) out.merge(p);
    return out;
}

PropReport run_verify(const VerifyOptions& o) {
    Rng rng(o.seed);
    std::vector<FiniteDynSys> systems;
    if (o.exhaustive > 0)
        for (auto& f : all_systems(o.exhaustive))
            if (!o.surjective_only || f.surjective()) systems.push_back(f);
    for (int i = 0; i < o.random; ++i) {
        int n = 1 + pick(rng, o.max_states);
        if (o.surjective_only) {
            std::vector<int> perm(n);
            for (int k = 0; k < n; ++k) perm[k] = k;
            for (int k = n - 1; k > 0; --k) std::swap(perm[k], perm[pick(rng, k + 1)]);
            std::vector<std::string> names;
            for (int k = 0; k < n; ++k) names.push_back(std::to_string(k));
            systems.emplace_back(names, perm);
        } else {
            systems.push_back(random_system(rng, n));
        }
    }
    PropReport out = parallel_reports(static_cast<int>(systems.size()), o.workers,
                                      [&](int i, PropReport& r) {
                                          exact_props(systems[i], r);
                                          if (o.lifts) lift_props(systems[i], r);
                                      });
    std::vector<Poset> posets;
    for (int n = 1; n <= o.max_poset; ++n)
        for (auto& P : all_posets(n)) posets.push_back(P);
    for (int i = 0; i < o.random_posets; ++i) posets.push_back(random_poset(rng, 1 + pick(rng, o.random_poset_size)));
    out.merge(parallel_reports(static_cast<int>(posets.size()), o.workers, [&](int i, PropReport& r) {
        order_props(posets[i], r);
        birkhoff_poset_props(posets[i], r);
    }));
    std::vector<SetLattice> lattices;
    for (int i = 0; i < o.random_posets; ++i)
        lattices.push_back(random_set_lattice(rng, 1 + pick(rng, 6), 1 + pick(rng, 4)));
    out.merge(parallel_reports(static_cast<int>(lattices.size()), o.workers,
                               [&](int i, PropReport& r) { birkhoff_lattice_props(lattices[i], r); }));
    struct HomCase {
        Poset P, Q;
        std::vector<int> g;
    };
    std::vector<HomCase> homs;
    for (int i = 0; i < o.random_homs; ++i) {
        Poset P = random_poset(rng, 1 + pick(rng, 5)), Q = random_poset(rng, 1 + pick(rng, 5));
        auto g = random_monotone(rng, Q, P);
        homs.push_back({P, Q, g});
    }
    out.merge(parallel_reports(static_cast<int>(homs.size()), o.workers,
                               [&](int i, PropReport& r) { boolean_props(homs[i].P, homs[i].Q, homs[i].g, r); }));
    boolean_algebra_props(4, out);
    return out;
}

}  // namespace morselat
