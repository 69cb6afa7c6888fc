#pragma once

#include <utility>
#include <vector>

#include "triflip/triangulation.hpp"

// Independent orbit computation used as an oracle against SkeletonIndex:
// instead of union-find, propagate minimum slot labels across single gluing
// steps until a fixpoint, then compress to first-occurrence dense ids.
namespace orbits {

inline std::vector<int> compress(std::vector<int> lab) {
    std::vector<int> dense(lab.size(), -1);
    int next = 0;
    std::vector<int> id_of(lab.size(), -1);
    for (std::size_t i = 0; i < lab.size(); ++i) {
        if (id_of[lab[i]] < 0) id_of[lab[i]] = next++;
        dense[i] = id_of[lab[i]];
    }
    return dense;
}

inline std::vector<int> corner_orbits(const triflip::Triangulation& t) {
    const int n = static_cast<int>(t.size());
    std::vector<int> lab(4 * n);
    for (int i = 0; i < 4 * n; ++i) lab[i] = i;
    bool changed = true;
    while (changed) {
        changed = false;
        for (int tt = 0; tt < n; ++tt)
            for (int f = 0; f < 4; ++f) {
                const triflip::FaceGluing& g = t.gluing(tt, f);
                if (!g.glued()) continue;
                for (int c = 0; c < 4; ++c) {
                    if (c == f) continue;
                    int a = 4 * tt + c, b = 4 * g.tet + g.perm[c];
                    int m = std::min(lab[a], lab[b]);
                    if (lab[a] != m || lab[b] != m) {
                        lab[a] = lab[b] = m;
                        changed = true;
                    }
                }
            }
    }
    return compress(std::move(lab));
}

// Orbits of *directed* edges (t, u, v), u != v: 12 per tet, indexed
// 12t + 3u + (v - (v > u)). An (undirected) edge slot is reversed when the
// two directions of some slot end up in one orbit.
inline int dir_index(int t, int u, int v) { return 12 * t + 3 * u + (v - (v > u ? 1 : 0)); }

inline std::vector<int> directed_edge_orbits(const triflip::Triangulation& t) {
    const int n = static_cast<int>(t.size());
    std::vector<int> lab(12 * n);
    for (int i = 0; i < 12 * n; ++i) lab[i] = i;
    bool changed = true;
    while (changed) {
        changed = false;
        for (int tt = 0; tt < n; ++tt)
            for (int f = 0; f < 4; ++f) {
                const triflip::FaceGluing& g = t.gluing(tt, f);
                if (!g.glued()) continue;
                for (int u = 0; u < 4; ++u)
                    for (int v = 0; v < 4; ++v) {
                        if (u == v || u == f || v == f) continue;
                        int a = dir_index(tt, u, v);
                        int b = dir_index(g.tet, g.perm[u], g.perm[v]);
                        int m = std::min(lab[a], lab[b]);
                        if (lab[a] != m || lab[b] != m) {
                            lab[a] = lab[b] = m;
                            changed = true;
                        }
                    }
            }
    }
    return lab;  // not compressed: callers compare pairs of directions
}

inline std::vector<int> face_orbits(const triflip::Triangulation& t) {
    const int n = static_cast<int>(t.size());
    std::vector<int> lab(4 * n);
    for (int i = 0; i < 4 * n; ++i) lab[i] = i;
    for (int tt = 0; tt < n; ++tt)
        for (int f = 0; f < 4; ++f) {
            const triflip::FaceGluing& g = t.gluing(tt, f);
            if (!g.glued()) continue;
            int a = 4 * tt + f, b = 4 * g.tet + g.face;
            int m = std::min(lab[a], lab[b]);
            lab[a] = lab[b] = m;
        }
    return compress(std::move(lab));
}

}  // namespace orbits
