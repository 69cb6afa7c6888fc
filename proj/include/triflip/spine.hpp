#pragma once

#include <array>
#include <string>
#include <vector>

#include "triflip/skeleton.hpp"
#include "triflip/triangulation.hpp"

namespace triflip {

// Dual special spine of a closed valid triangulation, as a read-only view.
// Duality dictionary: one spine vertex per tetrahedron, one triple edge per
// triangle class, one two-cell per edge class, one region per vertex class.
// Spine-side moves are never executed here; apply moves to the triangulation
// and re-dualize.
struct SpecialSpine {
    struct TripleEdge {
        int face_class;
        int tail, head;  // spine vertices; tail is the representative side
        int tet0, f0;    // representative (tet, face) slot
        int tet1, f1;    // glued partner slot
    };
    // One boundary-word token per edge-ring entry: the two-cell boundary
    // leaves the ring tetrahedron `corner` across `triple_edge`; `forward`
    // when it exits through that edge's representative side.
    struct Token {
        int triple_edge;
        bool forward;
        int corner;
    };
    struct TwoCell {
        int edge_class;
        std::vector<Token> boundary;  // cyclic, in edge-ring order
        bool disc;                    // dual edge class is not reversed
    };
    struct Region {
        int vertex_class;
        VertexLink boundary;  // descriptor of the region's boundary surface
    };

    int spine_vertices = 0;                // = tetrahedron count
    std::vector<TripleEdge> triple_edges;  // indexed by face class
    std::vector<TwoCell> two_cells;        // indexed by edge class
    std::vector<Region> regions;           // indexed by vertex class
};

// Requires a closed triangulation with no reversed edge; throws
// PreconditionViolated otherwise.
SpecialSpine dualize(const Triangulation& t);

// The singular set of the spine: a 4-valent graph. `ends[n][f]` is the arc
// (= triple edge id) whose end sits at node n's face slot f, so loops appear
// at both of their slots.
struct SingularGraph {
    int nodes = 0;
    struct Arc {
        int tail, head;
    };
    std::vector<Arc> arcs;
    std::vector<std::array<int, 4>> ends;
};
SingularGraph singular_graph(const SpecialSpine& s);

// Per two-cell: does its boundary close up as a disc?  (Equivalent to the
// dual edge class not being identified with itself reversed.)
std::vector<bool> check_two_cells_are_discs(const SpecialSpine& s);

// Undirected DOT rendering of the singular graph, arcs in id order.
std::string singular_graph_dot(const SpecialSpine& s);

// Human-readable dump of the duality counts and region surfaces.
std::string duality_counts(const SpecialSpine& s);

}  // namespace triflip
