#include "morselat/lift.hpp"

#include <algorithm>
#include <functional>
#include <memory>
#include <unordered_map>

#include "morselat/error.hpp"

namespace morselat {

int LiftProblem::index_of(Mask alpha) const {
    auto it = std::lower_bound(downsets.begin(), downsets.end(), alpha, canon_less);
    if (it == downsets.end() || *it != alpha)
        throw Error(ErrorKind::NotADownSet, mask_str(alpha, P.labels));
    return static_cast<int>(it - downsets.begin());
}

std::vector<Mask> top_domain(const LiftProblem& pb, Mask lambda) {
    std::vector<Mask> out;
    for (Mask a : pb.downsets)
        if (subset(a, lambda) || a == pb.P.carrier()) out.push_back(a);
    return out;
}

static std::string lbl(const LiftProblem& pb, Mask m) { return mask_str(m, pb.P.labels); }
static std::string klbl(const LiftProblem& pb, Mask m) { return mask_str(m, pb.ambient_labels); }

Violation check_problem(const LiftProblem& pb) {
    Violation v;
    const size_t n = pb.downsets.size();
    if (pb.s.size() != n) return {false, "s is not total on O(P)"};
    const Mask one = pb.h(pb.ambient);
    if (pb.s_of(0) != 0) return {false, "s(0) != 0"};
    if (pb.s_of(pb.P.carrier()) != one) return {false, "s(1) != 1"};
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            Mask a = pb.downsets[i], b = pb.downsets[j];
            if (i != j && pb.s[i] == pb.s[j]) return {false, "s not injective at " + lbl(pb, a)};
            if (pb.s_of(a | b) != (pb.s[i] | pb.s[j]))
                return {false, "s(a v b) at " + lbl(pb, a) + " " + lbl(pb, b)};
            if (pb.s_of(a & b) != pb.l_meet(pb.s[i], pb.s[j]))
                return {false, "s(a ^ b) at " + lbl(pb, a) + " " + lbl(pb, b)};
        }
    return v;
}

Violation is_partial_lift(const PartialLift& k, const LiftProblem& pb) {
    auto dom = top_domain(pb, k.lambda);
    for (Mask a : dom)
        if (!k.table.count(a)) return {false, "k undefined at " + lbl(pb, a)};
    if (k.table.at(0) != 0) return {false, "k(0) != 0"};
    if (k.table.at(pb.P.carrier()) != pb.ambient) return {false, "k(1) != 1"};
    for (Mask a : dom) {
        Mask ka = k.table.at(a);
        if (!pb.in_k(ka)) return {false, "k(" + lbl(pb, a) + ") not in K"};
        if (subset(a, k.lambda) && pb.h(ka) != pb.s_of(a))
            return {false, "h(k(" + lbl(pb, a) + ")) != s(" + lbl(pb, a) + ")"};
        for (Mask b : dom) {
            Mask kb = k.table.at(b);
            if (k.table.at(a | b) != (ka | kb))
                return {false, "join law at " + lbl(pb, a) + " " + lbl(pb, b)};
            if (k.table.at(a & b) != (ka & kb))
                return {false, "meet law at " + lbl(pb, a) + " " + lbl(pb, b)};
        }
    }
    return {};
}

Violation is_conditional_lift(const PartialLift& k, const LiftProblem& pb) {
    for (Mask a : pb.downsets)
        if (!k.cond.count(a)) throw Error(ErrorKind::ConditionerMissing, lbl(pb, a));
    for (Mask a : pb.downsets) {
        Mask v = k.cond.at(a);
        if (!pb.in_k(v) || pb.h(v) != pb.s_of(a))
            return {false, "v(" + lbl(pb, a) + ") is not in the fibre of s"};
    }
    std::vector<Mask> sub;
    for (Mask a : pb.downsets)
        if (subset(a, k.lambda)) sub.push_back(a);
    // lift identity
    std::string first;
    for (Mask a : pb.downsets) {
        Mask v = k.cond.at(a);
        for (Mask g : sub)
            for (Mask b : sub)
                if (subset(g & a, b) && !subset(k.table.at(g) & v, k.table.at(b)) && first.empty())
                    first = "k(" + lbl(pb, g) + ") ^ v(" + lbl(pb, a) + ") not <= k(" +
                            lbl(pb, b) + ")";
    }
    // atom form
    std::string second;
    for (int p : members(k.lambda)) {
        Mask d = pb.P.below[p];
        Mask atom = k.table.at(d) & ~k.table.at(d & ~bit(p));
        for (Mask a : pb.downsets)
            if (!has(a, p) && (atom & k.cond.at(a)) && second.empty())
                second = "B(k)({" + pb.P.labels[p] + "}) meets v(" + lbl(pb, a) + ")";
    }
    if (first.empty() != second.empty())
        return {false, "lift identity and atom form disagree: " + first + second};
    if (!first.empty()) return {false, first};
    return {};
}

[[noreturn]] static void obstruction(const LiftProblem& pb, int step, int q, Mask a, Mask w,
                                     const std::string& note) {
    throw Error(ErrorKind::ObstructionFound,
                "step=" + std::to_string(step) + " q=" + pb.P.labels[q] + " alpha=" + lbl(pb, a) +
                    " witness=" + klbl(pb, w) + (note.empty() ? "" : " " + note));
}

LiftCertificate lift(const LiftProblem& pb) {
    Violation pv = check_problem(pb);
    if (!pv.ok) throw Error(ErrorKind::NotAnEmbedding, pv.what);
    const Mask top = pb.P.carrier();
    LiftCertificate cert;
    if (pb.P.size() == 0) {
        cert.table = {0};
        return cert;
    }
    PartialLift k;
    k.table[0] = 0;
    k.table[top] = pb.ambient;
    std::vector<Mask> B(pb.P.size(), 0);

    // base: lambda = {q0}
    int q0 = minimal_elements(pb.P, top).front();
    Mask lam = bit(q0);
    auto sec = pb.section(pb.s_of(lam));
    if (!sec || !pb.in_k(*sec) || pb.h(*sec) != pb.s_of(lam))
        throw Error(ErrorKind::SectionInconsistent, "at " + lbl(pb, lam));
    k.table[lam] = *sec;
    k.lambda = lam;
    B[q0] = *sec;
    ConditionerReply r0 = pb.conditioners(pb, k, q0, true);
    if (!r0.ok) obstruction(pb, 0, q0, r0.alpha, r0.witness, r0.note);
    k.cond = r0.v;
    for (Mask a : pb.downsets)
        if (!k.cond.count(a)) throw Error(ErrorKind::ConditionerMissing, lbl(pb, a));
    for (Mask a : pb.downsets)
        if (!has(a, q0) && (k.cond[a] & *sec)) obstruction(pb, 0, q0, a, k.cond[a] & *sec, "initial disjointness");
    {
        Violation c = is_conditional_lift(k, pb);
        if (!c.ok) obstruction(pb, 0, q0, 0, 0, c.what);
        StepAudit au;
        au.q = q0;
        au.mu = lam;
        au.bq = *sec;
        for (auto& [a, v] : k.cond) au.conditioners.emplace_back(a, v);
        au.disjoint = au.fresh = au.separated = true;
        au.in_k = au.h_ok = au.k_mu_form = true;
        cert.audit.push_back(au);
    }

    int step = 1;
    while (lam != top) {
        int q = minimal_elements(pb.P, top & ~lam).front();
        Mask mu = pb.P.below[q];
        Mask pred = mu & ~bit(q);
        ConditionerReply r = pb.conditioners(pb, k, q, false);
        if (!r.ok) obstruction(pb, step, q, r.alpha, r.witness, r.note);
        for (Mask a : pb.downsets) {
            if (!r.v.count(a)) throw Error(ErrorKind::ConditionerMissing, lbl(pb, a));
            Mask v = r.v[a];
            if (!pb.in_k(v) || pb.h(v) != pb.s_of(a))
                throw Error(ErrorKind::LiftCheckFailed, "oracle conditioner off fibre at " + lbl(pb, a));
        }
        const Mask klam = k.table.at(lam);
        for (Mask a : pb.downsets)
            if (!has(a, q)) {
                Mask bad = r.v[mu] & r.v[a] & ~klam;
                if (bad) obstruction(pb, step, q, a, bad, "step disjointness");
            }
        std::map<Mask, Mask> v;
        for (Mask a : pb.downsets) {
            v[a] = k.cond[a] & r.v[a];
            if (!pb.in_k(v[a]) || pb.h(v[a]) != pb.s_of(a))
                throw Error(ErrorKind::LiftCheckFailed, "combined conditioner off fibre at " + lbl(pb, a));
        }
        B[q] = v[mu] & ~klam & pb.ambient;
        const Mask nl = lam | bit(q);

        StepAudit au;
        au.step = step;
        au.q = q;
        au.lambda = lam;
        au.mu = mu;
        au.bq = B[q];
        for (auto& [a, x] : v) au.conditioners.emplace_back(a, x);
        std::map<Mask, Mask> nt;
        nt[top] = pb.ambient;
        for (Mask a : pb.downsets)
            if (subset(a, nl)) {
                Mask u = 0;
                for (int p : members(a)) u |= B[p];
                nt[a] = u;
            }
        au.disjoint = true;
        for (auto& [a, x] : k.table)
            if (a != top && nt.at(a) != x) au.disjoint = false;
        au.k_mu_form = nt.at(mu) == (nt.at(pred) | v[mu]);
        au.in_k = au.h_ok = true;
        for (auto& [a, x] : nt) {
            if (!pb.in_k(x)) au.in_k = false;
            if (pb.h(x) != pb.s_of(a)) au.h_ok = false;
        }
        au.fresh = true;
        for (int p : members(nl))
            for (Mask a : pb.downsets)
                if (!has(a, p) && (B[p] & v[a])) au.fresh = false;
        au.separated = true;
        for (int p : members(nl))
            for (int p2 : members(nl))
                if (p != p2 && (B[p] & B[p2])) au.separated = false;
        cert.audit.push_back(au);
        if (!(au.disjoint && au.k_mu_form && au.in_k && au.h_ok && au.fresh && au.separated))
            throw Error(ErrorKind::LiftCheckFailed, "audit failed at step " + std::to_string(step));

        k.table = std::move(nt);
        k.cond = std::move(v);
        k.lambda = lam = nl;
        ++step;
    }
    Mask total = 0;
    for (Mask b : B) total |= b;
    if (total != pb.ambient) {
        if (pb.top_unique)
            throw Error(ErrorKind::TopNotUnique, "terminal k(1) = " + klbl(pb, total));
        cert.top_flag = true;
    }
    for (Mask a : pb.downsets) {
        Mask u = 0;
        for (int p : members(a)) u |= B[p];
        cert.table.push_back(u);
    }
    return cert;
}

Violation verify_certificate(const LiftCertificate& c, const LiftProblem& pb) {
    const size_t n = pb.downsets.size();
    if (c.table.size() != n) return {false, "table size"};
    std::unordered_map<Mask, Mask> k;
    for (size_t i = 0; i < n; ++i) k[pb.downsets[i]] = c.table[i];
    if (k[0] != 0) return {false, "k(0) != 0"};
    if (!c.top_flag && k[pb.P.carrier()] != pb.ambient) return {false, "k(1) != 1"};
    for (size_t i = 0; i < n; ++i) {
        Mask a = pb.downsets[i];
        if (!pb.in_k(c.table[i])) return {false, "k(" + lbl(pb, a) + ") not in K"};
        if (pb.h(c.table[i]) != pb.s[i]) return {false, "h(k(" + lbl(pb, a) + ")) != s"};
        for (size_t j = 0; j < n; ++j) {
            Mask b = pb.downsets[j];
            if (i != j && c.table[i] == c.table[j]) return {false, "k not injective"};
            if (k[a | b] != (c.table[i] | c.table[j])) return {false, "join law"};
            if (k[a & b] != (c.table[i] & c.table[j])) return {false, "meet law"};
        }
    }
    return {};
}

// ---------------- finite h : K -> L searches ----------------

namespace {

struct Fibres {
    std::unordered_map<Mask, std::vector<Mask>> members;
    std::unordered_map<Mask, Mask> minimum;  // least element of each fibre

    explicit Fibres(const FiniteHom& H) {
        for (Mask x : H.K) members[H.h(x)].push_back(x);
        for (auto& [l, xs] : members) {
            Mask m = H.ambient;
            for (Mask x : xs) m &= x;
            // fibres of a hom on an intersection-closed K are intersection-closed
            if (std::find(xs.begin(), xs.end(), m) == xs.end())
                throw Error(ErrorKind::NotALattice, "fibre without a least element");
            minimum[l] = m;
        }
    }
    const std::vector<Mask>& of(Mask l) const {
        static const std::vector<Mask> empty;
        auto it = members.find(l);
        return it == members.end() ? empty : it->second;
    }
};

// enumerate partial lifts on O(lambda^T); callback returns true to stop
bool for_each_partial_lift(const FiniteHom&, const Fibres& F, const Embedding& E, Mask lambda,
                           long& counter, long budget,
                           const std::function<bool(const std::map<Mask, Mask>&)>& fn) {
    std::vector<Mask> dom;
    for (Mask a : E.downsets)
        if (subset(a, lambda)) dom.push_back(a);
    std::map<Mask, Mask> k;
    k[0] = 0;
    std::function<bool(size_t)> rec = [&](size_t i) -> bool {
        if (i == dom.size()) {
            if (++counter > budget) throw Error(ErrorKind::BoundExceeded, "partial lift budget");
            return fn(k);
        }
        Mask a = dom[i];
        if (a == 0) return rec(i + 1);
        Mask sa = E.s[std::lower_bound(E.downsets.begin(), E.downsets.end(), a, canon_less) -
                      E.downsets.begin()];
        for (Mask x : F.of(sa)) {
            bool ok = true;
            for (auto& [b, kb] : k) {
                if (subset(b, a) && !subset(kb, x)) ok = false;
                if (k.count(a & b) && k.at(a & b) != (x & kb)) ok = false;
                if ((a | b) == a) continue;
                if (k.count(a | b) && k.at(a | b) != (x | kb)) ok = false;
                if (!ok) break;
            }
            // a = b | c for earlier b, c
            for (auto& [b, kb] : k)
                for (auto& [c, kc] : k)
                    if (ok && (b | c) == a && (kb | kc) != x) ok = false;
            if (!ok) continue;
            k[a] = x;
            if (rec(i + 1)) return true;
            k.erase(a);
        }
        return false;
    };
    return rec(0);
}

}  // namespace

Embedding embedding_of(const SetLattice& sub) {
    Embedding E;
    JoinIrreducibles J = join_irreducibles(sub);
    E.P = J.poset;
    E.downsets = all_down_sets(E.P);
    for (Mask d : E.downsets) E.s.push_back(birkhoff_join(sub, J, d));
    return E;
}

ConditionIReport check_condition_i(const FiniteHom& H, int max_poset) {
    ConditionIReport rep;
    int zero = 0;
    for (Mask x : H.K)
        if (H.h(x) == 0) ++zero;
    if (zero == 1) {
        rep.via_zero_fibre = true;
        return rep;
    }
    Fibres F(H);
    for (auto& fam : bounded_sublattices(H.L, max_poset)) {
        Embedding E = embedding_of(SetLattice(H.L.universe(), fam, false));
        auto s_of = [&](Mask a) {
            return E.s[std::lower_bound(E.downsets.begin(), E.downsets.end(), a, canon_less) -
                       E.downsets.begin()];
        };
        for (int q : minimal_elements(E.P, E.P.carrier())) {
            for (Mask kq : F.of(s_of(bit(q)))) {
                for (Mask a : E.downsets) {
                    if (has(a, q)) continue;
                    bool found = false;
                    for (Mask v : F.of(s_of(a)))
                        if ((v & kq) == 0) found = true;
                    if (!found) {
                        rep.ok = false;
                        rep.witness = "P=" + std::to_string(E.P.size()) + " q=" + E.P.labels[q] +
                                      " k({q})=" + mask_str(kq, H.ambient_labels) + " alpha=" +
                                      mask_str(a, E.P.labels);
                        return rep;
                    }
                }
            }
        }
    }
    return rep;
}

FalsifierReport spaciousness_falsifier(const FiniteHom& H, int max_poset, long budget) {
    FalsifierReport rep;
    Fibres F(H);
    auto subs = bounded_sublattices(H.L, max_poset);
    for (auto& fam : subs) {
        Embedding E = embedding_of(SetLattice(H.L.universe(), fam, false));
        auto s_of = [&](Mask a) {
            return E.s[std::lower_bound(E.downsets.begin(), E.downsets.end(), a, canon_less) -
                       E.downsets.begin()];
        };
        for (Mask lam : E.downsets) {
            if (lam == E.P.carrier()) continue;
            for (int q : minimal_elements(E.P, E.P.carrier() & ~lam)) {
                Mask mu = E.P.below[q];
                // least conditioners are optimal: shrinking keeps step disjointness
                Mask need = 0;
                Mask vmu = F.minimum.at(s_of(mu));
                for (Mask a : E.downsets)
                    if (!has(a, q)) need |= vmu & F.minimum.at(s_of(a));
                if (subset(need, F.minimum.at(s_of(lam)))) {
                    ++rep.checked;
                    continue;
                }
                std::map<Mask, Mask> hit;
                bool found = for_each_partial_lift(
                    H, F, E, lam, rep.checked, budget, [&](const std::map<Mask, Mask>& k) {
                        if (!subset(need, k.at(lam))) {
                            hit = k;
                            return true;
                        }
                        return false;
                    });
                if (found) {
                    rep.counterexample = true;
                    std::string w = "J=[";
                    for (int p = 0; p < E.P.size(); ++p)
                        w += (p ? " " : "") + mask_str(E.s[std::lower_bound(E.downsets.begin(),
                                                                            E.downsets.end(),
                                                                            E.P.below[p],
                                                                            canon_less) -
                                                           E.downsets.begin()],
                                                      H.ambient_labels);
                    w += "] lambda=" + mask_str(lam, E.P.labels) + " q=" + E.P.labels[q] +
                         " k(lambda)=" + mask_str(hit.at(lam), H.ambient_labels) +
                         " uncovered=" + mask_str(need & ~hit.at(lam), H.ambient_labels);
                    rep.witness = w;
                    return rep;
                }
            }
        }
    }
    return rep;
}

DualLift transport_by_duality(const Poset& P, const std::vector<Mask>& downsets,
                              const std::vector<Mask>& sA, const DualityContext& ctx) {
    DualLift out;
    out.dual = dual_poset(P);
    out.dual_downsets = all_down_sets(out.dual);
    auto idxP = [&](Mask a) {
        return std::lower_bound(downsets.begin(), downsets.end(), a, canon_less) - downsets.begin();
    };
    std::vector<Mask> sR;
    for (Mask b : out.dual_downsets) {
        Mask a = complement_map(out.dual, b);  // down-set of P
        sR.push_back(ctx.star(sA[idxP(a)]));
    }
    LiftProblem rp = ctx.make_rep_problem(out.dual, out.dual_downsets, sR);
    out.rep = lift(rp);
    auto idxD = [&](Mask b) {
        return std::lower_bound(out.dual_downsets.begin(), out.dual_downsets.end(), b, canon_less) -
               out.dual_downsets.begin();
    };
    for (Mask a : downsets) {
        Mask b = complement_map(P, a);
        out.att.table.push_back(ctx.ambient & ~out.rep.table[idxD(b)]);
    }
    out.att.audit = out.rep.audit;
    for (size_t i = 0; i < downsets.size(); ++i) {
        Mask x = out.att.table[i];
        if (!ctx.in_k_att(x) || ctx.h_att(x) != sA[i])
            throw Error(ErrorKind::LiftCheckFailed,
                        "transported lift fails at " + mask_str(downsets[i], P.labels));
    }
    return out;
}

}  // namespace morselat

namespace morselat {

static ConditionerReply conditioner_choice(const LiftProblem& pb, const PartialLift& k, int q,
                                           bool initial,
                                           const std::function<Mask(Mask, bool)>& pick) {
    ConditionerReply rep;
    const Mask mu = pb.P.below[q];
    for (Mask a : pb.downsets) {
        if (subset(a, k.lambda))
            rep.v[a] = k.table.at(a);
        else
            rep.v[a] = pick(a, !has(a, q) || a == mu);
    }
    const Mask klam = initial ? 0 : k.table.at(k.lambda);
    const Mask probe = initial ? k.table.at(bit(q)) : rep.v[mu];
    for (Mask a : pb.downsets) {
        if (has(a, q)) continue;
        Mask bad = initial ? (probe & rep.v[a]) : (probe & rep.v[a] & ~klam);
        if (bad) {
            rep.ok = false;
            rep.alpha = a;
            rep.witness = bad;
            rep.note = initial ? "initial disjointness" : "step disjointness";
            return rep;
        }
    }
    return rep;
}

std::function<ConditionerReply(const LiftProblem&, const PartialLift&, int, bool)>
recipe_conditioners(RecipeOracle r) {
    return [r](const LiftProblem& pb, const PartialLift& k, int q, bool initial) {
        ConditionerReply last;
        for (int d = 0; d <= r.max_depth; ++d) {
            last = conditioner_choice(pb, k, q, initial, [&](Mask a, bool near) {
                Mask w = r.W(pb.s_of(a));
                return near ? r.shrink(w, pb.s_of(a), d) : w;
            });
            if (last.ok) return last;
        }
        last.note += " after shrink depth " + std::to_string(r.max_depth);
        return last;
    };
}

std::function<ConditionerReply(const LiftProblem&, const PartialLift&, int, bool)>
least_conditioners(std::vector<Mask> K, std::function<Mask(Mask)> h) {
    auto least = std::make_shared<std::unordered_map<Mask, Mask>>();
    for (Mask x : K) {
        Mask l = h(x);
        auto it = least->find(l);
        if (it == least->end())
            (*least)[l] = x;
        else
            it->second &= x;
    }
    return [least](const LiftProblem& pb, const PartialLift& k, int q, bool initial) {
        return conditioner_choice(pb, k, q, initial, [&](Mask a, bool) {
            auto it = least->find(pb.s_of(a));
            if (it == least->end())
                throw Error(ErrorKind::SectionInconsistent, "empty fibre over " + lbl(pb, a));
            return it->second;
        });
    };
}

}  // namespace morselat
