#include "morselat/order.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>

#include "morselat/error.hpp"

namespace morselat {

int enum_bound() {
    if (const char* env = std::getenv("MORSELAT_MAX_ENUM")) {
        int v = std::atoi(env);
        if (v > 0) return std::min(v, 62);
    }
    return 20;
}

Mask Poset::above(int p) const {
    Mask m = 0;
    for (int q = 0; q < size(); ++q)
        if (leq(p, q)) m |= bit(q);
    return m;
}

int Poset::index(const std::string& label) const {
    auto it = std::find(labels.begin(), labels.end(), label);
    if (it == labels.end()) throw Error(ErrorKind::UnknownElement, label);
    return static_cast<int>(it - labels.begin());
}

static void check_labels(const std::vector<std::string>& labels) {
    if (static_cast<int>(labels.size()) > kMaxBits)
        throw Error(ErrorKind::TooLarge, "poset has more than 64 elements");
    for (size_t i = 0; i < labels.size(); ++i)
        for (size_t j = i + 1; j < labels.size(); ++j)
            if (labels[i] == labels[j])
                throw Error(ErrorKind::ParseError, "duplicate label " + labels[i]);
}

Poset validate_poset(const std::vector<std::string>& labels,
                     const std::vector<std::vector<bool>>& leq) {
    check_labels(labels);
    const int n = static_cast<int>(labels.size());
    if (static_cast<int>(leq.size()) != n)
        throw Error(ErrorKind::ParseError, "relation matrix is not square");
    for (const auto& row : leq)
        if (static_cast<int>(row.size()) != n)
            throw Error(ErrorKind::ParseError, "relation matrix is not square");
    for (int p = 0; p < n; ++p)
        if (!leq[p][p]) throw Error(ErrorKind::NotReflexive, labels[p]);
    for (int p = 0; p < n; ++p)
        for (int q = p + 1; q < n; ++q)
            if (leq[p][q] && leq[q][p])
                throw Error(ErrorKind::NotAntisymmetric, labels[p] + "," + labels[q]);
    for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q)
            if (leq[p][q])
                for (int r = 0; r < n; ++r)
                    if (leq[q][r] && !leq[p][r])
                        throw Error(ErrorKind::NotTransitive,
                                    labels[p] + "," + labels[q] + "," + labels[r]);
    Poset P;
    P.labels = labels;
    P.below.assign(n, 0);
    for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q)
            if (leq[p][q]) P.below[q] |= bit(p);
    return P;
}

Poset poset_from_covers(const std::vector<std::string>& labels,
                        const std::vector<std::pair<int, int>>& covers) {
    check_labels(labels);
    const int n = static_cast<int>(labels.size());
    std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
    for (int i = 0; i < n; ++i) r[i][i] = true;
    for (auto [a, b] : covers) {
        if (a < 0 || b < 0 || a >= n || b >= n)
            throw Error(ErrorKind::UnknownElement, "cover index out of range");
        r[a][b] = true;
    }
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            if (r[i][k])
                for (int j = 0; j < n; ++j)
                    if (r[k][j]) r[i][j] = true;
    return validate_poset(labels, r);
}

Poset chain_poset(int n) {
    std::vector<std::string> labels;
    std::vector<std::pair<int, int>> covers;
    for (int i = 0; i < n; ++i) {
        labels.push_back(std::to_string(i + 1));
        if (i > 0) covers.emplace_back(i - 1, i);
    }
    return poset_from_covers(labels, covers);
}

Poset antichain_poset(int n) {
    std::vector<std::string> labels;
    for (int i = 0; i < n; ++i) labels.push_back(std::to_string(i + 1));
    return poset_from_covers(labels, {});
}

Mask down_set(const Poset& P, int p) {
    if (p < 0 || p >= P.size()) throw Error(ErrorKind::UnknownElement, std::to_string(p));
    return P.below[p];
}

bool is_down_set(const Poset& P, Mask m) {
    if (!subset(m, P.carrier())) return false;
    for (int p : members(m))
        if (!subset(P.below[p], m)) return false;
    return true;
}

std::vector<Mask> all_down_sets(const Poset& P, int bound) {
    if (bound < 0) bound = enum_bound();
    const int n = P.size();
    if (n > bound)
        throw Error(ErrorKind::TooLarge,
                    std::to_string(n) + " elements exceeds bound " + std::to_string(bound));
    // linear extension: sort by size of down-set
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return count(P.below[a]) < count(P.below[b]); });
    std::vector<Mask> out;
    std::function<void(int, Mask)> rec = [&](int i, Mask cur) {
        if (i == n) {
            out.push_back(cur);
            return;
        }
        int p = order[i];
        rec(i + 1, cur);
        if (subset(P.below[p] & ~bit(p), cur)) rec(i + 1, cur | bit(p));
    };
    rec(0, 0);
    std::sort(out.begin(), out.end(), canon_less);
    return out;
}

Poset dual_poset(const Poset& P) {
    Poset D;
    D.labels = P.labels;
    D.below.assign(P.size(), 0);
    for (int q = 0; q < P.size(); ++q) D.below[q] = P.above(q);
    return D;
}

Mask complement_map(const Poset& P, Mask alpha) {
    if (!is_down_set(P, alpha))
        throw Error(ErrorKind::NotADownSet, mask_str(alpha, P.labels));
    return P.carrier() & ~alpha;
}

bool is_order_preserving(const Poset& P, const Poset& Q, const std::vector<int>& f) {
    if (static_cast<int>(f.size()) != P.size())
        throw Error(ErrorKind::UnknownElement, "map is not total");
    for (int x : f)
        if (x < 0 || x >= Q.size()) throw Error(ErrorKind::UnknownElement, std::to_string(x));
    for (int p = 0; p < P.size(); ++p)
        for (int q = 0; q < P.size(); ++q)
            if (P.leq(p, q) && !Q.leq(f[p], f[q])) return false;
    return true;
}

bool is_order_embedding(const Poset& P, const Poset& Q, const std::vector<int>& f) {
    if (!is_order_preserving(P, Q, f)) return false;
    for (int p = 0; p < P.size(); ++p)
        for (int q = 0; q < P.size(); ++q)
            if (Q.leq(f[p], f[q]) && !P.leq(p, q)) return false;
    return true;
}

std::vector<int> minimal_elements(const Poset& P, Mask within) {
    std::vector<int> out;
    for (int p : members(within))
        if ((P.below[p] & within) == bit(p)) out.push_back(p);
    return out;
}

std::vector<std::pair<int, int>> cover_pairs(const Poset& P) {
    std::vector<std::pair<int, int>> out;
    for (int q = 0; q < P.size(); ++q)
        for (int p : members(P.below[q] & ~bit(q))) {
            bool between = false;
            for (int r : members(P.below[q] & ~bit(q) & ~bit(p)))
                if (P.leq(p, r)) between = true;
            if (!between) out.emplace_back(p, q);
        }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace morselat
