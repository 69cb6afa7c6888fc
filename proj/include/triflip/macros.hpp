#pragma once

#include <map>
#include <string>

#include "triflip/moves.hpp"

namespace triflip {

// A compound move compiled down to elementary events. `script` replays from
// the input to a triangulation equal to `output`. `landmarks` names cells of
// the pattern the macro leaves behind; values are class ids in `output`
// except where a name says "tet", which maps to a tetrahedron index. Each
// operation documents its entries and their dimensions.
struct MacroResult {
    Triangulation output;
    MoveScript script;
    std::map<std::string, int> landmarks;
};

// Insert a triangular pillow along an interior triangle: two new tetrahedra
// sharing three faces around a new interior vertex, splitting the triangle
// into two parallel copies. Script [1-4, 3-2]. ΔT=+2, ΔV=+1.
// Landmarks: "new vertex" (vertex), "outer face 0", "outer face 1" (faces).
MacroResult triangular_02(const Triangulation& t, int face_class);

// Remove the pillow around `pillow_vertex` (triangular_02's "new vertex"):
// script [2-3, 4-1], the exact inverse. Landmarks: "triangle" = the healed
// face. Throws PillowSelfGlued when the pillow's two outer faces are glued
// to each other, IllegalMove when the vertex star is not a pillow.
MacroResult triangular_20(const Triangulation& t, int pillow_vertex);

// Cone an interior triangle with two distinct side tetrahedra from a new
// vertex, splitting each side into three. Script [1-4, 2-3]. ΔT=+4, ΔV=+1.
// Landmarks: "new vertex".
MacroResult stellar_face(const Triangulation& t, int face_class);

// Split an interior edge of degree d ≥ 2 at a new midpoint vertex, cutting
// each incident tetrahedron in two. Requires the incident tetrahedra to be
// pairwise distinct (the edge contained once in each). Script
// [1-4, 2-3 × (d−2), 3-2], d events total. ΔT=+d, ΔV=+1.
// Landmarks: "new vertex".
MacroResult stellar_edge(const Triangulation& t, int edge_class);

// Full barycentric subdivision of a closed triangulation, built as 1-4 moves
// on every tetrahedron, then coning every original face, then splitting
// every original edge: 24× tetrahedra, χ preserved. Landmarks: "tet center
// <i>" per input tetrahedron, "face center <k>" / "edge mid <k>" per input
// face/edge class (all vertex classes).
MacroResult barycentric(const Triangulation& t);

// Barycentric subdivision assembled directly, one tetrahedron per flag
// (vertex ⊂ edge ⊂ face ⊂ tet), with no event script. Independent oracle
// for `barycentric`. Requires a closed triangulation.
Triangulation barycentric_direct(const Triangulation& t);

// Replace the dual spine vertex of `tet` by three vertices: a transcribed
// [2-3, 2-3, 2-3, 3-2] sequence through the neighbor across `face`, which
// must be a distinct tetrahedron. ΔT=+2, ΔV=0. No landmarks.
MacroResult v_move(const Triangulation& t, int tet, int face);

// V-move at the representative side of an interior triangle followed by
// [2-3, 3-2]: hangs an arch over the triangle with a membrane disc closing
// its tunnel. ΔT=+2, ΔV=0. Landmarks: "membrane" = the edge class whose
// dual 2-cell is the membrane disc (edge of degree 1), "neck" = the face
// class created by the final 3-2 where the tunnel narrows.
MacroResult arch_with_membrane(const Triangulation& t, int face_class);

// Rebuild the result of a 1-4 move on `tet` followed by an arch joining the
// new vertex to the class of `corner`, using eight 2-3/3-2 events only, so
// the material vertex count never changes. ΔT=+4, ΔV=0. No landmarks.
MacroResult one_four_plus_arch(const Triangulation& t, int tet, int corner);

// Move a vertex in 4-1 configuration into `neighbor_tet`, which must share
// a face with the vertex's enclosing coarse tetrahedron: script [3-2, 2-3].
// ΔT=0, ΔV=0; the vertex is in 4-1 configuration inside the neighbor
// afterwards. Landmarks: "vertex" = the moved vertex class, "source tet" =
// the tetrahedron now filling the vacated region (a tet index).
MacroResult transport_vertex(const Triangulation& t, int vertex_class,
                             int neighbor_tet);

}  // namespace triflip
