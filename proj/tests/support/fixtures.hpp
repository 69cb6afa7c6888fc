#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "triflip/perm4.hpp"
#include "triflip/triangulation.hpp"

namespace fixtures {

using triflip::Perm4;
using triflip::Triangulation;

// Two tetrahedra glued by the identity on all four faces: 4 vertices, 6
// edges of degree 2, 4 triangles, every vertex link a two-triangle sphere.
inline Triangulation double_tet() {
    Triangulation t(2);
    for (int f = 0; f < 4; ++f) t.glue_faces(0, f, 1, Perm4());
    return t;
}

// One tetrahedron with its faces identified in two twisted pairs: a single
// ideal vertex whose link is a Klein bottle, one edge of degree six.
inline Triangulation gieseking() {
    Triangulation t(1);
    t.glue_faces(0, 0, 0, Perm4(2, 0, 1, 3));
    t.glue_faces(0, 1, 0, Perm4(0, 3, 1, 2));
    return t;
}

// One tetrahedron with one face folded onto another reversing an edge:
// the edge (2,3) is identified with itself the wrong way around, so the
// triangulation is invalid.
inline Triangulation reversed_edge_tet() {
    Triangulation t(1);
    t.glue_faces(0, 0, 0, Perm4(1, 0, 3, 2));
    return t;
}

// Two ideal tetrahedra forming an orientable one-cusp manifold: a single
// vertex with torus link and two edge classes of degree six. Found by
// exhaustive search over all closed two-tet gluings (there are exactly two
// such triangulations up to isomorphism; this is the signature-least one).
inline Triangulation cusped_two_tet() {
    Triangulation t(2);
    t.glue_faces(0, 0, 1, Perm4(0, 1, 3, 2));
    t.glue_faces(0, 1, 1, Perm4(2, 1, 0, 3));
    t.glue_faces(0, 2, 1, Perm4(0, 3, 2, 1));
    t.glue_faces(0, 3, 1, Perm4(1, 0, 2, 3));
    return t;
}

// Rebuild `t` with tetrahedra reordered by `order` (new index -> old tet) and
// each old tet's labels pushed through rp[old] (old label -> new label).
inline Triangulation relabeled(const Triangulation& t, const std::vector<int>& order,
                               const std::vector<Perm4>& rp) {
    std::vector<int> pos(t.size());
    for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = static_cast<int>(i);
    Triangulation out(t.size());
    for (int a = 0; a < static_cast<int>(t.size()); ++a)
        for (int f = 0; f < 4; ++f) {
            const triflip::FaceGluing& g = t.gluing(a, f);
            if (!g.glued()) continue;
            if (g.tet < a || (g.tet == a && g.face < f)) continue;
            out.glue_faces(pos[a], rp[a][f], pos[g.tet], rp[g.tet] * g.perm * rp[a].inverse());
        }
    return out;
}

inline Triangulation random_relabeling(const Triangulation& t, std::mt19937& rng) {
    std::vector<int> order(t.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<Perm4> rp(t.size());
    for (auto& p : rp) p = Perm4::from_index(std::uniform_int_distribution<int>(0, 23)(rng));
    return relabeled(t, order, rp);
}

}  // namespace fixtures
