#include "morselat/dyn.hpp"

#include <algorithm>
#include <map>

#include "morselat/error.hpp"
#include "morselat/order.hpp"

namespace morselat {

FiniteDynSys::FiniteDynSys(std::vector<std::string> s, std::vector<int> f)
    : states(std::move(s)), next(std::move(f)) {
    if (states.empty()) throw Error(ErrorKind::ParseError, "no states");
    if (size() > kMaxBits) throw Error(ErrorKind::TooLarge, "more than 64 states");
    if (next.size() != states.size()) throw Error(ErrorKind::ParseError, "map is not total");
    for (int y : next)
        if (y < 0 || y >= size()) throw Error(ErrorKind::UnknownElement, std::to_string(y));
}

bool FiniteDynSys::surjective() const { return image(*this, all()) == all(); }

Mask image(const FiniteDynSys& f, Mask S, int t) {
    for (int k = 0; k < t; ++k) {
        Mask out = 0;
        for (int x : members(S)) out |= bit(f.next[x]);
        S = out;
    }
    return S;
}

Mask preimage(const FiniteDynSys& f, Mask S, int t) {
    for (int k = 0; k < t; ++k) {
        Mask out = 0;
        for (int x = 0; x < f.size(); ++x)
            if (has(S, f.next[x])) out |= bit(x);
        S = out;
    }
    return S;
}

Mask reachable_forward(const FiniteDynSys& f, Mask S) {
    Mask r = S;
    for (;;) {
        Mask n = r | image(f, r);
        if (n == r) return r;
        r = n;
    }
}

Mask reachable_backward(const FiniteDynSys& f, Mask S) {
    Mask r = S;
    for (;;) {
        Mask n = r | preimage(f, r);
        if (n == r) return r;
        r = n;
    }
}

InvarianceFlags classify_invariance(const FiniteDynSys& f, Mask S) {
    InvarianceFlags fl;
    Mask im = image(f, S), pre = preimage(f, S);
    fl.forward = subset(im, S);
    fl.invariant = im == S;
    fl.backward = subset(pre, S);
    fl.forward_backward = fl.forward && fl.backward;
    fl.strong = fl.invariant && fl.forward_backward;
    return fl;
}

Mask inv(const FiniteDynSys& f, Mask U) {
    Mask S = U;
    for (;;) {
        Mask n = S & preimage(f, S) & image(f, S);
        if (n == S) return S;
        S = n;
    }
}

Mask inv_plus(const FiniteDynSys& f, Mask U) {
    Mask S = U;
    for (;;) {
        Mask n = S & preimage(f, S);
        if (n == S) return S;
        S = n;
    }
}

// union over the eventual cycle of S, step(S), step(step(S)), ...
template <class Step>
static Mask tail_cycle_union(Mask S, Step step) {
    std::map<Mask, int> seen;
    std::vector<Mask> seq;
    while (!seen.count(S)) {
        seen[S] = static_cast<int>(seq.size());
        seq.push_back(S);
        S = step(S);
    }
    Mask out = 0;
    for (size_t i = seen[S]; i < seq.size(); ++i) out |= seq[i];
    return out;
}

Mask omega(const FiniteDynSys& f, Mask U) {
    return tail_cycle_union(U, [&](Mask s) { return image(f, s); });
}

Mask alpha(const FiniteDynSys& f, Mask U) {
    return tail_cycle_union(U, [&](Mask s) { return preimage(f, s); });
}

Mask alpha_orbital(const FiniteDynSys& f, const Orbit& g) {
    if (g.cycle.empty()) throw Error(ErrorKind::InvalidOrbit, "empty cycle");
    std::vector<int> seq = g.prefix;
    seq.insert(seq.end(), g.cycle.begin(), g.cycle.end());
    seq.push_back(g.cycle.front());
    for (int x : seq)
        if (x < 0 || x >= f.size()) throw Error(ErrorKind::InvalidOrbit, "unknown state");
    for (size_t i = 0; i + 1 < seq.size(); ++i)
        if (f.next[seq[i + 1]] != seq[i])
            throw Error(ErrorKind::InvalidOrbit,
                        f.states[seq[i + 1]] + " does not map to " + f.states[seq[i]]);
    Mask out = 0;
    for (int x : g.cycle) out |= bit(x);
    return out;
}

Mask cycles(const FiniteDynSys& f) { return inv(f, f.all()); }

// the distinct cycles of next, each as a mask
static std::vector<Mask> cycle_list(const FiniteDynSys& f) {
    std::vector<Mask> out;
    Mask rest = cycles(f);
    while (rest) {
        int x = members(rest).front();
        Mask c = 0;
        int y = x;
        do {
            c |= bit(y);
            y = f.next[y];
        } while (y != x);
        out.push_back(c);
        rest &= ~c;
    }
    return out;
}

Mask dual_plus(const FiniteDynSys& f, Mask S) {
    Mask out = 0;
    for (int x = 0; x < f.size(); ++x)
        if ((omega(f, bit(x)) & S) == 0) out |= bit(x);
    return out;
}

Mask dual_minus(const FiniteDynSys& f, Mask S) {
    // alpha_o of a backward orbit is the cycle it winds around; x has such an
    // orbit avoiding S iff some cycle disjoint from S reaches x
    Mask out = 0;
    for (Mask c : cycle_list(f))
        if ((c & S) == 0) out |= reachable_forward(f, c);
    return out;
}

std::vector<Orbit> backward_orbits(const FiniteDynSys& f, int x) {
    std::vector<Orbit> out;
    for (Mask c : cycle_list(f)) {
        if (!has(reachable_forward(f, c), x)) continue;
        // BFS backward from x until the cycle is hit
        std::vector<int> parent(f.size(), -2);
        std::vector<int> q{x};
        parent[x] = -1;
        int hit = -1;
        for (size_t i = 0; i < q.size() && hit < 0; ++i) {
            int y = q[i];
            if (has(c, y)) {
                hit = y;
                break;
            }
            for (int z = 0; z < f.size(); ++z)
                if (f.next[z] == y && parent[z] == -2) {
                    parent[z] = y;
                    q.push_back(z);
                }
        }
        Orbit o;
        // prefix: x back to (excluding) the cycle entry
        std::vector<int> path;
        for (int y = hit; y != -1; y = parent[y]) path.push_back(y);
        std::reverse(path.begin(), path.end());  // x ... hit
        o.prefix.assign(path.begin(), path.end() - 1);
        // cycle traversed backwards from hit
        std::vector<int> fwd;
        int y = hit;
        do {
            fwd.push_back(y);
            y = f.next[y];
        } while (y != hit);
        o.cycle.push_back(hit);
        for (size_t i = fwd.size() - 1; i >= 1; --i) o.cycle.push_back(fwd[i]);
        out.push_back(o);
    }
    return out;
}

FiniteDynSys restrict(const FiniteDynSys& f, Mask S) {
    if (!subset(image(f, S), S) || S == 0)
        throw Error(ErrorKind::NotForwardInvariant, mask_str(S, f.states));
    std::vector<int> idx(f.size(), -1);
    std::vector<std::string> labels;
    for (int x : members(S)) {
        idx[x] = static_cast<int>(labels.size());
        labels.push_back(f.states[x]);
    }
    std::vector<int> nx;
    for (int x : members(S)) nx.push_back(idx[f.next[x]]);
    return FiniteDynSys(labels, nx);
}

RegionWitness is_trapping_region(const FiniteDynSys& f, Mask U) {
    // phi(tau, cl U) in int U with cl = int = id: forward invariance, tau = 1
    if (subset(image(f, U), U)) return {true, 1};
    return {false, 0};
}

RegionWitness is_repelling_region(const FiniteDynSys& f, Mask U) {
    if (subset(preimage(f, U), U)) return {true, -1};
    return {false, 0};
}

bool is_attracting_nbhd(const FiniteDynSys& f, Mask U) { return subset(omega(f, U), U); }
bool is_repelling_nbhd(const FiniteDynSys& f, Mask U) { return subset(alpha(f, U), U); }

static void check_enum(const FiniteDynSys& f) {
    if (f.size() > enum_bound())
        throw Error(ErrorKind::TooLarge, std::to_string(f.size()) + " states exceeds bound " +
                                             std::to_string(enum_bound()));
}

std::vector<Mask> attracting_nbhds(const FiniteDynSys& f) {
    check_enum(f);
    std::vector<Mask> out;
    for (Mask U = 0; U <= f.all(); ++U)
        if (is_attracting_nbhd(f, U)) out.push_back(U);
    return out;
}

std::vector<Mask> repelling_nbhds(const FiniteDynSys& f) {
    check_enum(f);
    std::vector<Mask> out;
    for (Mask U = 0; U <= f.all(); ++U)
        if (is_repelling_nbhd(f, U)) out.push_back(U);
    return out;
}

SetLattice att_lattice(const FiniteDynSys& f) {
    std::vector<Mask> fam;
    for (Mask U : attracting_nbhds(f)) fam.push_back(omega(f, U));
    return SetLattice(f.states, fam, false);
}

SetLattice rep_lattice(const FiniteDynSys& f) {
    std::vector<Mask> fam;
    for (Mask U : repelling_nbhds(f)) fam.push_back(alpha(f, U));
    return SetLattice(f.states, fam, true);
}

Mask dual_repeller(const FiniteDynSys& f, Mask A) {
    // basin of A is forward invariant; it is a trapping region for A when A
    // is an attractor
    Mask U = 0;
    for (int x = 0; x < f.size(); ++x)
        if (subset(omega(f, bit(x)), A)) U |= bit(x);
    if (!is_trapping_region(f, U).holds || inv(f, U) != A)
        throw Error(ErrorKind::NotAnAttractor, mask_str(A, f.states));
    Mask star = inv_plus(f, f.all() & ~U);
    if (star != dual_plus(f, A))
        throw Error(ErrorKind::NotAnAttractor, "dual characterizations disagree");
    return star;
}

Mask dual_attractor(const FiniteDynSys& f, Mask R) {
    // R itself is a repelling region for R when R is a repeller
    if (!is_repelling_region(f, R).holds || inv_plus(f, R) != R)
        throw Error(ErrorKind::NotARepeller, mask_str(R, f.states));
    Mask star = inv(f, f.all() & ~R);
    if (star != dual_minus(f, R))
        throw Error(ErrorKind::NotARepeller, "dual characterizations disagree");
    return star;
}

Check check_ar_pair(const FiniteDynSys& f, Mask A, Mask R) {
    Check c;
    bool first = false;
    try {
        first = dual_repeller(f, A) == R;
    } catch (const Error&) {
        first = false;
    }
    bool second = (A & R) == 0 && image(f, A) == A && subset(image(f, R), R);
    std::string why;
    if (!second) why = "disjointness or invariance fails";
    for (int x = 0; x < f.size() && second; ++x) {
        if (has(A | R, x)) continue;
        if (!subset(omega(f, bit(x)), A)) {
            second = false;
            why = "omega(" + f.states[x] + ") not in A";
        }
        for (const Orbit& o : backward_orbits(f, x))
            if (second && !subset(alpha_orbital(f, o), R)) {
                second = false;
                why = "alpha_o of a backward orbit of " + f.states[x] + " not in R";
            }
    }
    if (first != second) return c.fail("characterizations disagree");
    if (!first) return c.fail(why.empty() ? "R is not the dual repeller of A" : why);
    return c;
}

Check commuting_square_check(const FiniteDynSys& f) {
    Check c;
    const Mask X = f.all();
    auto an = attracting_nbhds(f);
    for (Mask U : an) {
        Mask Uc = X & ~U;
        std::string u = mask_str(U, f.states);
        if (inv(f, U) != omega(f, U)) return c.fail("Inv != omega at " + u);
        if (!is_repelling_nbhd(f, Uc)) return c.fail("complement not repelling at " + u);
        if (inv_plus(f, Uc) != alpha(f, Uc)) return c.fail("Inv+ != alpha at complement of " + u);
        if (dual_repeller(f, omega(f, U)) != alpha(f, Uc))
            return c.fail("omega(U)* != alpha(U^c) at " + u);
    }
    // c: ANbhd -> RNbhd anti-isomorphism
    auto rn = repelling_nbhds(f);
    if (rn.size() != an.size()) return c.fail("|ANbhd| != |RNbhd|");
    for (Mask U : rn)
        if (!is_attracting_nbhd(f, X & ~U)) return c.fail("complement of RNbhd not in ANbhd");
    // *: Att -> Rep anti-isomorphism, involutive
    SetLattice att = att_lattice(f), rep = rep_lattice(f);
    if (att.size() != rep.size()) return c.fail("|Att| != |Rep|");
    HomTable star(att.size()), back(rep.size());
    for (int i = 0; i < att.size(); ++i) {
        Mask r = dual_repeller(f, att.element(i));
        star[i] = rep.index_of(r);
        if (star[i] < 0) return c.fail("A* not a repeller");
        if (dual_attractor(f, r) != att.element(i)) return c.fail("(A*)* != A");
    }
    for (int i = 0; i < rep.size(); ++i) {
        back[i] = att.index_of(dual_attractor(f, rep.element(i)));
        if (back[i] < 0) return c.fail("R* not an attractor");
        if (dual_repeller(f, att.element(back[i])) != rep.element(i)) return c.fail("(R*)* != R");
    }
    if (!check_anti_hom(star, att, rep).ok) return c.fail("* on Att is not an anti-hom");
    if (!check_anti_hom(back, rep, att).ok) return c.fail("* on Rep is not an anti-hom");
    return c;
}

}  // namespace morselat
