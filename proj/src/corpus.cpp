#include "morselat/corpus.hpp"

#include <algorithm>
#include <set>
#include <string>

namespace morselat {

namespace {

std::vector<std::string> numbered(int n) {
    std::vector<std::string> s;
    for (int i = 0; i < n; ++i) s.push_back(std::to_string(i));
    return s;
}

// below[q] as a relation, from the strict part given per pair index
bool closed_order(int n, const std::vector<Mask>& below) {
    for (int q = 0; q < n; ++q)
        for (int p : members(below[q])) {
            if (p != q && has(below[p], q)) return false;
            if (!subset(below[p], below[q])) return false;
        }
    return true;
}

}  // namespace

std::vector<FiniteDynSys> all_systems(int n) {
    std::vector<FiniteDynSys> out;
    std::vector<int> next(n, 0);
    for (;;) {
        out.emplace_back(numbered(n), next);
        int i = 0;
        while (i < n && ++next[i] == n) next[i++] = 0;
        if (i == n) break;
    }
    return out;
}

FiniteDynSys random_system(Rng& rng, int n) {
    std::vector<int> next(n);
    for (auto& x : next) x = pick(rng, n);
    return FiniteDynSys(numbered(n), next);
}

std::vector<Poset> all_posets(int n) {
    std::vector<std::pair<int, int>> pairs;
    for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q)
            if (p != q) pairs.emplace_back(p, q);
    std::vector<Poset> out;
    const std::uint64_t total = std::uint64_t{1} << pairs.size();
    std::vector<Mask> below(n);
    for (std::uint64_t r = 0; r < total; ++r) {
        for (int q = 0; q < n; ++q) below[q] = bit(q);
        for (size_t k = 0; k < pairs.size(); ++k)
            if ((r >> k) & 1U) below[pairs[k].second] |= bit(pairs[k].first);
        if (closed_order(n, below)) out.push_back(Poset{numbered(n), below});
    }
    return out;
}

Poset random_poset(Rng& rng, int n) {
    // random DAG on a random linear order, then transitive closure
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    for (int i = n - 1; i > 0; --i) std::swap(perm[i], perm[pick(rng, i + 1)]);
    std::vector<Mask> below(n);
    for (int i = 0; i < n; ++i) below[perm[i]] = bit(perm[i]);
    int density = 1 + pick(rng, 3);  // edge probability density/4
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < j; ++i)
            if (pick(rng, 4) < density) below[perm[j]] |= bit(perm[i]);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < j; ++i)
            if (has(below[perm[j]], perm[i])) below[perm[j]] |= below[perm[i]];
    return Poset{numbered(n), below};
}

std::vector<int> random_monotone(Rng& rng, const Poset& Q, const Poset& P) {
    // walk Q along a linear extension; each point takes a value above the
    // images of everything below it, falling back to a constant map
    std::vector<int> order(Q.size());
    for (int i = 0; i < Q.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return count(Q.below[a]) < count(Q.below[b]); });
    for (int attempt = 0; attempt < 32; ++attempt) {
        std::vector<int> g(Q.size(), -1);
        bool ok = true;
        for (int q : order) {
            Mask need = P.carrier();
            for (int r : members(Q.below[q]))
                if (r != q) need &= P.above(g[r]);
            if (!need) {
                ok = false;
                break;
            }
            auto cand = members(need);
            g[q] = cand[pick(rng, static_cast<int>(cand.size()))];
        }
        if (ok) return g;
    }
    return std::vector<int>(Q.size(), pick(rng, P.size()));
}

HomTable hom_from_monotone(const Poset&, const Poset& Q, const std::vector<int>& g,
                           const SetLattice& OP, const SetLattice& OQ) {
    HomTable h;
    for (Mask a : OP.elements()) {
        Mask pre = 0;
        for (int q = 0; q < Q.size(); ++q)
            if (has(a, g[q])) pre |= bit(q);
        h.push_back(OQ.index_of(pre));
    }
    return h;
}

SetLattice random_set_lattice(Rng& rng, int universe, int generators) {
    std::set<Mask> fam{0, full_mask(universe)};
    for (int i = 0; i < generators; ++i) fam.insert(rng() & full_mask(universe));
    for (bool grew = true; grew;) {
        grew = false;
        std::vector<Mask> cur(fam.begin(), fam.end());
        for (Mask a : cur)
            for (Mask b : cur) {
                grew |= fam.insert(a | b).second;
                grew |= fam.insert(a & b).second;
            }
    }
    std::vector<Mask> v(fam.begin(), fam.end());
    std::sort(v.begin(), v.end(), canon_less);
    return SetLattice(numbered(universe), v, true);
}

}  // namespace morselat
