#pragma once
#include <bit>
#include <cstdint>
#include <string>
#include <vector>

namespace morselat {

// Subsets of a carrier of at most 64 items.
using Mask = std::uint64_t;

inline constexpr int kMaxBits = 64;

inline Mask bit(int i) { return Mask{1} << i; }
inline bool has(Mask m, int i) { return (m >> i) & 1U; }
inline int count(Mask m) { return std::popcount(m); }
inline Mask full_mask(int n) { return n >= 64 ? ~Mask{0} : (bit(n) - 1); }
inline bool subset(Mask a, Mask b) { return (a & ~b) == 0; }

inline std::vector<int> members(Mask m) {
    std::vector<int> out;
    while (m) {
        out.push_back(std::countr_zero(m));
        m &= m - 1;
    }
    return out;
}

// lexicographic order on sorted member lists
inline bool lex_less(Mask a, Mask b) {
    while (a && b) {
        int x = std::countr_zero(a), y = std::countr_zero(b);
        if (x != y) return x < y;
        a &= a - 1;
        b &= b - 1;
    }
    return a == 0 && b != 0;
}

// canonical order: size, then lexicographic
inline bool canon_less(Mask a, Mask b) {
    int ca = count(a), cb = count(b);
    if (ca != cb) return ca < cb;
    return lex_less(a, b);
}

std::string mask_str(Mask m, const std::vector<std::string>& labels);

}  // namespace morselat
