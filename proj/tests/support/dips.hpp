#pragma once

#include <random>

#include "support/fixtures.hpp"
#include "support/walk.hpp"
#include "triflip/moves.hpp"
#include "triflip/skeleton.hpp"

// Random scripts whose material-vertex count sits at k on both ends and at
// k-1 strictly between: cone a vertex into a random tetrahedron to form the
// base, open with the matching 4-1, wander by 2-3/3-2, close with a 1-4.
namespace dips {

using namespace triflip;

struct Dip {
    Triangulation base;
    MoveScript script;
    int k = 0;
};

inline Dip make_dip(std::mt19937& rng, int interior_steps) {
    Triangulation t0 = fixtures::double_tet();
    int pre = std::uniform_int_distribution<int>(0, 4)(rng);
    for (int i = 0; i < pre; ++i) {
        SkeletonIndex sk(t0);
        walk::Weights w;
        w.w14 = 0;
        w.w41 = 0;
        w.w23 = t0.size() < 5 ? 1 : 0;
        auto ev = walk::random_event(sk, rng, w);
        if (!ev) break;
        t0 = apply_event(t0, *ev).tri;
    }
    int tet = std::uniform_int_distribution<int>(0, static_cast<int>(t0.size()) - 1)(rng);
    ApplyOutcome cone = apply_14(SkeletonIndex(t0), tet);
    Dip d;
    d.base = cone.tri;
    d.k = SkeletonIndex(d.base).material_vertex_count();
    d.script.push_back({MoveEvent::Kind::V41, cone.landmark_tet,
                        cone.landmark_slot, 0, 0});
    Triangulation cur = apply_event(d.base, d.script.back()).tri;
    for (int i = 0; i < interior_steps; ++i) {
        SkeletonIndex sk(cur);
        walk::Weights w;
        w.w14 = 0;
        w.w41 = 0;
        w.w23 = cur.size() < 7 ? 1 : 0;
        auto ev = walk::random_event(sk, rng, w);
        if (!ev) break;
        d.script.push_back(*ev);
        cur = apply_event(cur, *ev).tri;
    }
    int last = std::uniform_int_distribution<int>(0, static_cast<int>(cur.size()) - 1)(rng);
    d.script.push_back({MoveEvent::Kind::V14, last, 0, 0, 0});
    return d;
}

}  // namespace dips
