#pragma once
// Planar engine for sliding an essential circle across an annulus that
// carries a trivalent pattern graph. The circle starts parallel to one
// boundary of the annulus and is carried to the other by a script of local
// events (vertex pushes/pulls, bump creation/removal), each of which is
// simulated and legality-checked on a normal-position model of the curve.
#include <string>
#include <utility>
#include <vector>

#include "skeleton.hpp"
#include "triangulation.hpp"

namespace triflip {

// Pattern graph embedded in an annulus, with each boundary circle collapsed
// to a hub vertex: vertex 0 is the start hub, vertex 1 the end hub, and
// vertices >= 2 are the trivalent interior nodes. Darts 2k and 2k+1 are the
// two ends of edge k; at[v] lists the darts at v in rotation order. The
// collapsed map must be a sphere map (so every complementary face of the
// pattern in the annulus is a disc). `identified` lists pairs of edges that
// name the same cell in the originating complex; such a pair never shares an
// endpoint, and no event may involve both members at once.
struct AnnulusPattern {
    std::vector<std::vector<int>> at;
    std::vector<int> vert;
    int e_start = -1;  // designated start-hub edge
    int e_end = -1;    // designated end-hub edge
    std::vector<std::pair<int, int>> identified;

    int darts() const { return static_cast<int>(vert.size()); }
    int edges() const { return darts() / 2; }
    int nodes() const { return static_cast<int>(at.size()) - 2; }
    static int twin(int d) { return d ^ 1; }
    static int edge_of(int d) { return d >> 1; }
};

// Structural check: dart/rotation consistency, trivalent nodes, both hubs
// attached, designated edges present, connected sphere map, sane identified
// list. Throws PreconditionViolated with a description of the violation.
void validate_pattern(const AnnulusPattern& p);

// Text form: `nodes <n>` once, then one `edge <end> <end>` line per edge in
// id order, where an end is `start`, `end`, or `<node>.<slot>` (slot 0..2 in
// rotation order, node ids starting at 0); hub attachments take their cyclic
// order from the order of appearance. Optional `estart <edge>`,
// `eend <edge>`, and `identify <edge> <edge>` lines follow.
AnnulusPattern parse_pattern(const std::string& text);
std::string format_pattern(const AnnulusPattern& p);

// Complementary faces of the pattern, as orbits of the face-walk successor.
// face_of[d] is the face whose boundary walk contains dart d; walk[f] lists
// that boundary in traversal order.
struct PatternFaces {
    std::vector<int> face_of;
    std::vector<std::vector<int>> walk;

    int faces() const { return static_cast<int>(walk.size()); }
};
PatternFaces pattern_faces(const AnnulusPattern& p);

// Normal position of the moving circle. Crossing c passes through edge
// edge_of(dir[c]), leaving the face on the dir[c] side and entering the face
// on the twin side; cyc lists crossing ids cyclically along the circle, and
// occ[k] orders the crossings on edge k from the dart-2k end toward the
// dart-2k+1 end. The arc after crossing c therefore lies in the face of
// twin(dir[c]), which must match the face of dir[next crossing].
struct CurvePosition {
    std::vector<int> cyc;
    std::vector<int> dir;
    std::vector<std::vector<int>> occ;
};

// Circle parallel to the start boundary, crossing each start-hub attachment
// once, in rotation order.
CurvePosition initial_position(const AnnulusPattern& p);

// Internal-consistency check of a position against a pattern (index ranges,
// occ/cyc agreement, arc face matching). Throws InvariantBroken.
void check_position(const AnnulusPattern& p, const PatternFaces& f, const CurvePosition& c);

// True when the position is the mirror of initial_position at the end hub:
// one crossing per end-hub attachment, every arc in a face incident to the
// end hub, and nothing else.
bool at_end_position(const AnnulusPattern& p, const PatternFaces& f, const CurvePosition& c);

std::string format_position(const CurvePosition& c);

struct SweepEvent {
    enum class Kind { PushVertex, PullVertex, MakeBump, KillBump, InverseV };
    // PushVertex: a = node dart of the approach edge; consumes the crossing
    //   nearest that node on the edge and re-routes it over the node.
    // PullVertex: a = node dart of the produced edge; merges the nearest
    //   crossings on the node's other two edges into one on edge_of(a).
    // KillBump:   a = edge id, b = slot; deletes the bigon pair occupying
    //   slots b, b+1 along edge a.
    // MakeBump:   a = side dart, b = slot; pokes the unique arc lying in the
    //   face of dart a across edge_of(a) at slot b.
    // InverseV:   a = node dart of the bump edge, b = node dart of the
    //   strand edge at the same node; deletes the bump pair nearest that
    //   node once it sits next to the strand crossing.
    Kind kind = Kind::PushVertex;
    int a = -1;
    int b = -1;
};
using SweepScript = std::vector<SweepEvent>;

bool operator==(const SweepEvent& x, const SweepEvent& y);
inline bool operator!=(const SweepEvent& x, const SweepEvent& y) { return !(x == y); }

std::string format_sweep_script(const SweepScript& s);
SweepScript parse_sweep_script(const std::string& text);

// Applies one event in place. Throws IllegalMove when the event is not
// applicable at the current position, and InvariantBroken if an event would
// involve both members of an identified edge pair.
void apply_sweep_event(const AnnulusPattern& p, const PatternFaces& f, CurvePosition& c,
                       const SweepEvent& ev);

// Stage one: starting from initial_position, push the circle over every node
// by breadth-first search rooted at the node end of e_start, discovering
// nodes through node-to-node edges only. Emits exactly one PushVertex per
// node. Throws DisconnectedPattern if some node is never reached.
std::pair<CurvePosition, SweepScript> spanning_tree_push(const AnnulusPattern& p);

// Stage two: repeatedly remove the bigon of the least-indexed face that the
// circle meets in a single arc, protecting the faces incident to the end
// hub, until the circle reaches the end position. Mutates c and returns the
// KillBump script (one event per face engulfed).
SweepScript dual_tree_collapse(const AnnulusPattern& p, CurvePosition& c);

// Expands one applicable KillBump into PushVertex/PullVertex pairs that walk
// the bump along the boundary of the face on the far side of its edge,
// followed by one InverseV where the bump first meets another crossing of
// the circle. The walk direction avoiding e_start is chosen; on a tie the
// shorter route wins, then the one whose first boundary dart has the smaller
// id. Throws NoValidArc when both directions would cross e_start.
SweepScript expand_kill_bump(const AnnulusPattern& p, const PatternFaces& f,
                             const CurvePosition& c, const SweepEvent& kill);

// Full plan: stage one, then stage two with every KillBump expanded. The
// returned script replays from initial_position to the end position and uses
// only PushVertex, PullVertex, and InverseV events.
SweepScript sweep_membrane(const AnnulusPattern& p);

// Builds the annulus pattern seen on the boundary sphere of the ball dual to
// a material vertex: interior nodes are the tetrahedron corners at the
// vertex, pattern edges are their adjacencies across glued faces, and the
// complementary faces are the edge ends at the vertex. The faces dual to
// start_edge_class and end_edge_class are collapsed into the two hubs.
// Throws SelfGluedBall when the ball's closure may touch itself (repeated
// corner tetrahedra, loop edges at the vertex, or pinched collapse circles).
AnnulusPattern extract_pattern(const Triangulation& t, int vertex_class, int start_edge_class,
                               int end_edge_class);

}  // namespace triflip
