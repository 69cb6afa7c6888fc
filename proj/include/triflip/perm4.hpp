#pragma once

#include <array>
#include <cstdint>
#include <string>

namespace triflip {

// Permutation of the four vertex labels {0,1,2,3} of a tetrahedron.
//
// Conventions used throughout:
//   - face f of a tetrahedron is the triangle opposite vertex f;
//   - a gluing of face f of tet t onto face f2 of tet t2 is stored as a
//     Perm4 acting on *all four* labels of t, with perm[f] == f2 (the
//     off-face vertex maps to the off-face vertex);
//   - (a * b)[x] == a[b[x]], i.e. b acts first.
struct Perm4 {
    std::array<std::uint8_t, 4> im{0, 1, 2, 3};

    constexpr Perm4() = default;
    constexpr Perm4(int a, int b, int c, int d)
        : im{static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b),
             static_cast<std::uint8_t>(c), static_cast<std::uint8_t>(d)} {}

    constexpr int operator[](int x) const { return im[x]; }

    constexpr bool is_valid() const {
        int seen = 0;
        for (int x = 0; x < 4; ++x) {
            if (im[x] > 3) return false;
            seen |= 1 << im[x];
        }
        return seen == 0xF;
    }

    constexpr Perm4 inverse() const {
        Perm4 r;
        for (int x = 0; x < 4; ++x) r.im[im[x]] = static_cast<std::uint8_t>(x);
        return r;
    }

    friend constexpr Perm4 operator*(const Perm4& a, const Perm4& b) {
        Perm4 r;
        for (int x = 0; x < 4; ++x) r.im[x] = a.im[b.im[x]];
        return r;
    }

    friend constexpr bool operator==(const Perm4& a, const Perm4& b) { return a.im == b.im; }
    friend constexpr bool operator!=(const Perm4& a, const Perm4& b) { return !(a == b); }
    friend constexpr bool operator<(const Perm4& a, const Perm4& b) { return a.im < b.im; }

    constexpr bool is_identity() const { return im[0] == 0 && im[1] == 1 && im[2] == 2 && im[3] == 3; }

    // +1 for even permutations, -1 for odd.
    constexpr int sign() const {
        int s = 1;
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j)
                if (im[i] > im[j]) s = -s;
        return s;
    }

    // Rank in lexicographic order over all 24 permutations (0 = identity).
    constexpr int index() const {
        int idx = 0;
        for (int i = 0; i < 4; ++i) {
            int smaller = 0;
            for (int j = i + 1; j < 4; ++j)
                if (im[j] < im[i]) ++smaller;
            idx = idx * (4 - i) + smaller;
        }
        return idx;
    }

    static Perm4 from_index(int idx) {
        std::array<std::uint8_t, 4> pool{0, 1, 2, 3};
        Perm4 r;
        int radix[4] = {6, 2, 1, 1};
        int avail = 4;
        for (int i = 0; i < 4; ++i) {
            int d = idx / radix[i];
            idx %= radix[i];
            r.im[i] = pool[d];
            for (int j = d; j + 1 < avail; ++j) pool[j] = pool[j + 1];
            --avail;
        }
        return r;
    }

    // Four digits, images of 0..3 in order, e.g. identity is "0123".
    std::string str() const {
        std::string s(4, '0');
        for (int x = 0; x < 4; ++x) s[x] = static_cast<char>('0' + im[x]);
        return s;
    }

    static bool parse(const std::string& s, Perm4& out) {
        if (s.size() != 4) return false;
        Perm4 p;
        for (int x = 0; x < 4; ++x) {
            if (s[x] < '0' || s[x] > '3') return false;
            p.im[x] = static_cast<std::uint8_t>(s[x] - '0');
        }
        if (!p.is_valid()) return false;
        out = p;
        return true;
    }
};

// Edge slots of a tetrahedron: 0..5 in the fixed order 01,02,03,12,13,23.
inline constexpr int kEdgeEnds[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};

constexpr int edge_slot(int u, int v) {
    // Lookup by unordered pair; u != v required.
    constexpr int table[4][4] = {
        {-1, 0, 1, 2}, {0, -1, 3, 4}, {1, 3, -1, 5}, {2, 4, 5, -1}};
    return table[u][v];
}

}  // namespace triflip
