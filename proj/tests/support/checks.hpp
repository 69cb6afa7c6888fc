#pragma once

#include <map>
#include <vector>

#include "doctest.h"
#include "support/orbits.hpp"
#include "triflip/skeleton.hpp"

namespace checks {

using namespace triflip;

inline bool same_partition(const std::vector<int>& a, const std::vector<int>& b) {
    if (a.size() != b.size()) return false;
    std::map<int, int> fwd, bwd;
    for (std::size_t i = 0; i < a.size(); ++i) {
        auto [fa, insa] = fwd.emplace(a[i], b[i]);
        if (!insa && fa->second != b[i]) return false;
        auto [fb, insb] = bwd.emplace(b[i], a[i]);
        if (!insb && fb->second != a[i]) return false;
    }
    return true;
}

// Compare every SkeletonIndex partition, reversal flag and degree against the
// independent propagation oracle.
inline void skeleton_matches_oracle(const Triangulation& t) {
    SkeletonIndex sk(t);
    const int n = static_cast<int>(t.size());

    std::vector<int> mine_v(4 * n), mine_f(4 * n), mine_e(6 * n);
    for (int i = 0; i < n; ++i)
        for (int c = 0; c < 4; ++c) {
            mine_v[4 * i + c] = sk.vertex_class(i, c);
            mine_f[4 * i + c] = sk.face_class(i, c);
        }
    for (int i = 0; i < n; ++i)
        for (int e = 0; e < 6; ++e) mine_e[6 * i + e] = sk.edge_class(i, e);

    CHECK(same_partition(mine_v, orbits::corner_orbits(t)));
    CHECK(same_partition(mine_f, orbits::face_orbits(t)));

    auto dir = orbits::directed_edge_orbits(t);
    std::vector<int> oracle_e(6 * n);
    for (int i = 0; i < n; ++i)
        for (int e = 0; e < 6; ++e)
            oracle_e[6 * i + e] =
                std::min(dir[orbits::dir_index(i, kEdgeEnds[e][0], kEdgeEnds[e][1])],
                         dir[orbits::dir_index(i, kEdgeEnds[e][1], kEdgeEnds[e][0])]);
    CHECK(same_partition(mine_e, oracle_e));

    for (int i = 0; i < n; ++i)
        for (int e = 0; e < 6; ++e) {
            bool rev = dir[orbits::dir_index(i, kEdgeEnds[e][0], kEdgeEnds[e][1])] ==
                       dir[orbits::dir_index(i, kEdgeEnds[e][1], kEdgeEnds[e][0])];
            CHECK(sk.edge_reversed(sk.edge_class(i, e)) == rev);
        }

    std::map<int, int> vdeg, edeg, fdeg;
    for (int i = 0; i < n; ++i)
        for (int c = 0; c < 4; ++c) {
            ++vdeg[sk.vertex_class(i, c)];
            ++fdeg[sk.face_class(i, c)];
        }
    for (int i = 0; i < n; ++i)
        for (int e = 0; e < 6; ++e) ++edeg[sk.edge_class(i, e)];
    for (int v = 0; v < sk.vertex_classes(); ++v) CHECK(sk.vertex_degree(v) == vdeg[v]);
    for (int e = 0; e < sk.edge_classes(); ++e) CHECK(sk.edge_degree(e) == edeg[e]);
    for (int f = 0; f < sk.face_classes(); ++f) CHECK(sk.face_degree(f) == fdeg[f]);
}

}  // namespace checks
