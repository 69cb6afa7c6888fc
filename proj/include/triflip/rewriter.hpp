#pragma once

// Script rewriting around marked triangles.
//
// A pillow mark reserves a triangle for a triangular pillow; rewriting a
// script whose interior dips one material vertex below its endpoints keeps
// a pillow parked on the mark so every intermediate triangulation stays at
// or above the floor. An arch mark designates a triangle plus an ordered
// pair of its vertices to be joined by an arch; transport keeps such a mark
// alive across 2-3/3-2 moves so that consecutive positions always share a
// material vertex.

#include <optional>

#include "triflip/moves.hpp"
#include "triflip/triangulation.hpp"

namespace triflip {

struct PillowMark {
    int face_class = -1;
};

// The pair (va, vb) is ordered; both are vertex classes of the marked
// triangle, distinct, and at least one is material.
struct ArchMark {
    int face_class = -1;
    int va = -1;
    int vb = -1;
};

struct MarkedTriangulation {
    Triangulation tri;
    std::optional<PillowMark> pillow;
    std::optional<ArchMark> arch;
};

// Applies one bistellar event and re-addresses the pillow mark. If the event
// deletes the marked triangle, the mark first moves to the surviving boundary
// triangle of the event's support with the least (tet, face) slot. Requires a
// pillow mark and no arch mark.
MarkedTriangulation transport_pillow_mark(const MarkedTriangulation& m,
                                          const MoveEvent& ev);

// Applies one 2-3 or 3-2 event and re-addresses the arch mark. A deleted
// mark relocates to a boundary triangle of the move's polyhedron: same
// vertex pair when the pair contains an equatorial vertex; otherwise (both
// ends polar) the new mark joins an equatorial vertex to the material pole,
// falling back to pole-to-pole through an equatorial copy of the material
// pole. Old and new marks always share a material vertex. Requires an arch
// mark and no pillow mark.
MarkedTriangulation transport_arch_mark(const MarkedTriangulation& m,
                                        const MoveEvent& ev);

// Rewrites a script whose material-vertex counts form a single dip
// (endpoints exactly k, interior exactly k-1) into one using only
// 1-4/2-3/3-2/4-1 events whose every intermediate state has at least k
// material vertices, replaying from the same base to an isomorphic endpoint.
// Scripts that never drop below k are returned unchanged. Deeper or repeated
// dips must be split by the caller first.
MoveScript pillow_rewrite(const Triangulation& base, const MoveScript& script,
                          int k);

// Produces 2-3/3-2 moves that relocate the arch of `from` (marked at m) to
// the arch position of `to` (marked at m'), where both marks share a
// material vertex whose dual ball carries the sweep. Requires the ball to be
// free of self-gluings; otherwise throws SelfGluedBall.
MoveScript waypoint_connect(const MarkedTriangulation& from,
                            const MarkedTriangulation& to);

// Emits 2-3 moves that eliminate every triangle whose three corners all lie
// in the given vertex class; each event reduces the count by exactly one.
MoveScript remove_BBB_triangles(const Triangulation& t, int vertex_class);

}  // namespace triflip
