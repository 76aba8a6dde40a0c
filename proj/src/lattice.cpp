#include "morselat/lattice.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "morselat/error.hpp"

namespace morselat {

SetLattice::SetLattice(std::vector<std::string> universe, std::vector<Mask> family,
                       bool require_intersection)
    : universe_(std::move(universe)) {
    std::sort(family.begin(), family.end(), canon_less);
    family.erase(std::unique(family.begin(), family.end()), family.end());
    elements_ = std::move(family);
    for (int i = 0; i < size(); ++i) index_[elements_[i]] = i;
    if (elements_.empty() || elements_.front() != 0)
        throw Error(ErrorKind::NotALattice, "empty set missing");
    const Mask uni = full_mask(static_cast<int>(universe_.size()));
    for (Mask m : elements_)
        if (!subset(m, uni)) throw Error(ErrorKind::NotALattice, "member outside universe");
    for (Mask a : elements_)
        for (Mask b : elements_) {
            if (!contains(a | b))
                throw Error(ErrorKind::NotALattice, "not closed under union: " +
                                                        mask_str(a, universe_) + " " +
                                                        mask_str(b, universe_));
            if (!contains(a & b)) {
                intersection_closed_ = false;
                if (require_intersection)
                    throw Error(ErrorKind::NotALattice,
                                "not closed under intersection: " + mask_str(a, universe_) +
                                    " " + mask_str(b, universe_));
            }
        }
    // top is the union of everything; canonical order puts it last
    if (size() > 1 && !subset(elements_[size() - 2], elements_.back()))
        throw Error(ErrorKind::NotALattice, "no top");
    if (size() <= 64) {
        for (Mask a : elements_)
            for (Mask b : elements_)
                for (Mask c : elements_)
                    if (meet(a, b | c) != (meet(a, b) | meet(a, c)))
                        throw Error(ErrorKind::NotALattice, "not distributive");
    }
}

int SetLattice::index_of(Mask m) const {
    auto it = index_.find(m);
    return it == index_.end() ? -1 : it->second;
}

Mask SetLattice::meet(Mask a, Mask b) const {
    Mask x = a & b;
    if (intersection_closed_) return x;
    Mask out = 0;
    for (Mask c : elements_)
        if (subset(c, x)) out |= c;
    return out;
}

std::vector<std::pair<int, int>> SetLattice::hasse() const {
    std::vector<std::pair<int, int>> out;
    for (int j = 0; j < size(); ++j)
        for (int i = 0; i < size(); ++i) {
            if (i == j || !subset(elements_[i], elements_[j])) continue;
            bool between = false;
            for (int k = 0; k < size() && !between; ++k)
                if (k != i && k != j && subset(elements_[i], elements_[k]) &&
                    subset(elements_[k], elements_[j]))
                    between = true;
            if (!between) out.emplace_back(i, j);
        }
    std::sort(out.begin(), out.end());
    return out;
}

SetLattice down_set_lattice(const Poset& P) {
    return SetLattice(P.labels, all_down_sets(P));
}

// union of all members strictly below c
static Mask below_join(const SetLattice& L, Mask c) {
    Mask out = 0;
    for (Mask m : L.elements())
        if (m != c && subset(m, c)) out |= m;
    return out;
}

JoinIrreducibles join_irreducibles(const SetLattice& L) {
    JoinIrreducibles J;
    for (int i = 0; i < L.size(); ++i) {
        Mask c = L.element(i);
        if (c != 0 && below_join(L, c) != c) J.elems.push_back(i);
    }
    const int n = static_cast<int>(J.elems.size());
    std::vector<std::string> labels;
    std::vector<std::vector<bool>> leq(n, std::vector<bool>(n));
    for (int a = 0; a < n; ++a) {
        labels.push_back(mask_str(L.element(J.elems[a]), L.universe()));
        for (int b = 0; b < n; ++b)
            leq[a][b] = subset(L.element(J.elems[a]), L.element(J.elems[b]));
    }
    J.poset = validate_poset(labels, leq);
    return J;
}

Mask predecessor(const SetLattice& L, Mask c) {
    if (!L.contains(c) || c == 0)
        throw Error(ErrorKind::NotJoinIrreducible, mask_str(c, L.universe()));
    Mask p = below_join(L, c);
    if (p == c) throw Error(ErrorKind::NotJoinIrreducible, mask_str(c, L.universe()));
    return p;
}

Mask birkhoff_down(const SetLattice& L, const JoinIrreducibles& J, Mask a) {
    Mask out = 0;
    for (size_t i = 0; i < J.elems.size(); ++i)
        if (subset(L.element(J.elems[i]), a)) out |= bit(static_cast<int>(i));
    return out;
}

Mask birkhoff_join(const SetLattice& L, const JoinIrreducibles& J, Mask ds) {
    Mask out = 0;
    for (int i : members(ds)) out |= L.element(J.elems[i]);
    return out;
}

Mask birkhoff_up(const Poset& P, int p) {
    Mask d = down_set(P, p);
    // in O(P) the members strictly below d join to d minus p
    Mask rest = 0;
    for (int q : members(d & ~bit(p))) rest |= P.below[q];
    if (rest == d) throw Error(ErrorKind::NotJoinIrreducible, P.labels[p]);
    return d;
}

BooleanRep booleanize(const SetLattice& L) {
    JoinIrreducibles J = join_irreducibles(L);
    BooleanRep B;
    B.ground = J.poset.labels;
    for (Mask m : L.elements()) B.j.push_back(birkhoff_down(L, J, m));
    return B;
}

bool leq_boolean(const BooleanRep& B, Mask a, Mask b) {
    bool first = (a & b) == a;
    bool second = (a & B.complement(b)) == 0;
    if (first != second) throw Error(ErrorKind::NotALattice, "order forms disagree");
    return first;
}

static HomReport check_impl(const HomTable& h, const SetLattice& src, const SetLattice& tgt,
                            bool anti) {
    HomReport r;
    if (static_cast<int>(h.size()) != src.size()) {
        r.ok = false;
        r.law = "total";
        return r;
    }
    for (int x : h)
        if (x < 0 || x >= tgt.size()) {
            r.ok = false;
            r.law = "range";
            return r;
        }
    auto img = [&](Mask m) { return tgt.element(h[src.index_of(m)]); };
    Mask zero_img = anti ? tgt.top() : 0;
    Mask one_img = anti ? 0 : tgt.top();
    if (img(0) != zero_img) {
        r.ok = false;
        r.law = anti ? "h(0)=1" : "h(0)=0";
        r.a = 0;
        return r;
    }
    if (img(src.top()) != one_img) {
        r.ok = false;
        r.law = anti ? "h(1)=0" : "h(1)=1";
        r.a = src.size() - 1;
        return r;
    }
    for (int i = 0; i < src.size(); ++i)
        for (int j = 0; j < src.size(); ++j) {
            Mask a = src.element(i), b = src.element(j);
            Mask jn = img(src.join(a, b)), mt = img(src.meet(a, b));
            Mask ja = tgt.join(img(a), img(b)), ma = tgt.meet(img(a), img(b));
            if (jn != (anti ? ma : ja)) {
                r = {false, "join", i, j};
                return r;
            }
            if (mt != (anti ? ja : ma)) {
                r = {false, "meet", i, j};
                return r;
            }
        }
    return r;
}

HomReport check_hom(const HomTable& h, const SetLattice& src, const SetLattice& tgt) {
    return check_impl(h, src, tgt, false);
}

HomReport check_anti_hom(const HomTable& h, const SetLattice& src, const SetLattice& tgt) {
    return check_impl(h, src, tgt, true);
}

BooleanExtension boolean_extension(const Poset& P, const SetLattice& OP, const HomTable& f,
                                   const SetLattice& L) {
    HomReport rep = check_hom(f, OP, L);
    if (!rep.ok) throw Error(ErrorKind::NotAHom, "law " + rep.law + " fails");
    BooleanRep B = booleanize(L);
    auto jf = [&](Mask alpha) { return B.j[f[OP.index_of(alpha)]]; };
    BooleanExtension ext;
    for (int p = 0; p < P.size(); ++p) {
        Mask d = P.below[p];
        ext.atoms.push_back(jf(d) & ~jf(d & ~bit(p)));
    }
    return ext;
}

std::vector<std::vector<Mask>> bounded_sublattices(const SetLattice& L, int max_j) {
    std::vector<Mask> mid;
    for (Mask m : L.elements())
        if (m != 0 && m != L.top()) mid.push_back(m);
    std::set<std::vector<Mask>> seen;
    std::vector<Mask> gen;
    auto close = [&](const std::vector<Mask>& g) {
        std::set<Mask> s(g.begin(), g.end());
        s.insert(0);
        s.insert(L.top());
        bool grew = true;
        while (grew) {
            grew = false;
            std::vector<Mask> cur(s.begin(), s.end());
            for (Mask a : cur)
                for (Mask b : cur) {
                    if (s.insert(a | b).second) grew = true;
                    if (s.insert(L.meet(a, b)).second) grew = true;
                }
        }
        std::vector<Mask> v(s.begin(), s.end());
        std::sort(v.begin(), v.end(), canon_less);
        return v;
    };
    std::function<void(size_t)> rec = [&](size_t start) {
        auto fam = close(gen);
        if (!seen.count(fam)) {
            // count join-irreducibles in the generated family
            int nj = 0;
            for (Mask c : fam) {
                if (c == 0) continue;
                Mask below = 0;
                for (Mask m : fam)
                    if (m != c && subset(m, c)) below |= m;
                if (below != c) ++nj;
            }
            if (nj <= max_j) seen.insert(fam);
        }
        if (static_cast<int>(gen.size()) == max_j) return;
        for (size_t i = start; i < mid.size(); ++i) {
            gen.push_back(mid[i]);
            rec(i + 1);
            gen.pop_back();
        }
    };
    rec(0);
    return {seen.begin(), seen.end()};
}

}  // namespace morselat
