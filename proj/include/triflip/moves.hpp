#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "triflip/skeleton.hpp"
#include "triflip/triangulation.hpp"

namespace triflip {

// One elementary rewriting event. Addresses are slots on the triangulation in
// force when the event fires; applying normalizes a slot to its class
// representative first, so any slot of the same class names the same event
// and the result does not depend on which slot was recorded.
struct MoveEvent {
    enum class Kind : std::uint8_t { F23, E32, V14, V41, Arch };
    Kind kind = Kind::F23;
    int tet = 0;
    // F23/Arch: face 0..3. E32: edge slot 0..5. V41: corner 0..3. V14: unused.
    std::uint8_t slot = 0;
    // Arch only: corner labels on `tet` whose vertex classes get joined.
    std::uint8_t ca = 0, cb = 0;
};
using MoveScript = std::vector<MoveEvent>;

bool operator==(const MoveEvent& a, const MoveEvent& b);

struct ApplyOutcome {
    Triangulation tri;
    std::vector<int> tet_map;   // old tet index -> new index, -1 when removed
    std::vector<int> new_tets;  // created tets in construction order
    MoveEvent inverse;          // undoes the move on `tri` (not set for Arch)
    bool has_inverse = false;
    // Cell created by the move, as a slot on `tri`:
    //   F23: the central edge (tet, edge slot); E32: the central face
    //   (tet, face); V14: the new vertex (tet, corner); V41/Arch: unset.
    int landmark_tet = -1;
    std::uint8_t landmark_slot = 0;
};

// 2-3: replace the two distinct tetrahedra sharing an interior triangle by
// three around a new central edge.
bool legal_23(const SkeletonIndex& sk, int face_class);
ApplyOutcome apply_23(const SkeletonIndex& sk, int face_class);

// 3-2: inverse; needs an interior degree-3 edge with three distinct
// tetrahedra around it.
bool legal_32(const SkeletonIndex& sk, int edge_class);
ApplyOutcome apply_32(const SkeletonIndex& sk, int edge_class);

// 1-4: cone a tetrahedron from a new interior vertex.
bool legal_14(const SkeletonIndex& sk, int tet);
ApplyOutcome apply_14(const SkeletonIndex& sk, int tet);

// 4-1: inverse; needs a degree-4 vertex whose star is a coned tetrahedron
// boundary with four distinct tetrahedra.
bool legal_41(const SkeletonIndex& sk, int vertex_class);
ApplyOutcome apply_41(const SkeletonIndex& sk, int vertex_class);

// Arch: one extra tetrahedron bridging the two sides of an interior triangle,
// joining the vertex classes va != vb (both on that triangle, at least one
// with sphere link). Every other vertex/edge class is left intact; not
// reversible by any elementary move above.
bool legal_arch(const SkeletonIndex& sk, int face_class, int va, int vb);
ApplyOutcome insert_arch(const SkeletonIndex& sk, int face_class, int va, int vb);

// How the arch tetrahedron is wired, in a frame relative to the target
// triangle: roles (0,1,2,3) on side one are (x,y,z,off-face) where x,y are
// the corners being joined and z the third corner; likewise on side two
// through the old gluing. Faces fi,fj of the new tetrahedron glue to each
// other by fperm; face k attaches over side one by alpha (role frame), face l
// over side two by beta.
struct ArchPattern {
    std::uint8_t fi = 0, fj = 0;
    Perm4 fperm;
    std::uint8_t k = 0, l = 0;
    Perm4 alpha, beta;
};
bool operator==(const ArchPattern& a, const ArchPattern& b);

// The pattern insert_arch uses: the least candidate (in field encoding order)
// surviving derive_arch_patterns.
ArchPattern arch_pattern();

// Exhaustive search over all one-tetrahedron attachment patterns, keeping
// those that, on a set of built-in reference inputs, keep the triangulation
// closed and valid, join exactly the two chosen vertex classes, and leave
// every other vertex and edge class untouched. Sorted by encoding order.
std::vector<ArchPattern> derive_arch_patterns();

// Apply one event (slot-addressed) to a triangulation.
ApplyOutcome apply_event(const Triangulation& t, const MoveEvent& ev);

// Apply a whole script in order.
Triangulation replay(const Triangulation& base, const MoveScript& script);

// Text form, one event per line against the evolving triangulation:
//   23 t<k> | 32 e<k> | 14 T<k> | 41 v<k> | arch t<k> v<a> v<b>
// where t/e/v number face, edge and vertex classes and T numbers tetrahedra.
// An optional header line `base <hex>` pins the canonical signature of the
// triangulation the script starts from; `#` starts a comment.
std::string format_script(const Triangulation& base, const MoveScript& script,
                          bool base_header = true);
MoveScript parse_script(const Triangulation& base, const std::string& text);

}  // namespace triflip
