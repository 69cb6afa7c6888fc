#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "triflip/perm4.hpp"

namespace triflip {

// Base class for all domain errors. Callers that need to distinguish cases
// catch the concrete type; the CLI maps any Error to exit code 1.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : Error {
    using Error::Error;
};

// A move whose preconditions fail (wrong degree, identified tetrahedra, ...).
struct IllegalMove : Error {
    using Error::Error;
};

// A rewriter/sweep input outside the documented domain of the algorithm.
struct PreconditionViolated : Error {
    using Error::Error;
};

// Removing a triangular pillow whose two outer faces are glued to each other
// (the triangulation *is* the pillow; there is nothing outside to reattach).
struct PillowSelfGlued : Error {
    using Error::Error;
};

// The ball region a membrane must sweep through has (or may have) self-gluings
// on its boundary sphere; the sweep's dual addressing is not available.
struct SelfGluedBall : Error {
    using Error::Error;
};

// A state the surrounding algorithm argues cannot occur. Surfaced instead of
// asserted so that corrupted inputs fail loudly in release builds too.
struct InvariantBroken : Error {
    using Error::Error;
};

// No eligible arc for a bump push (expand_kill_bump).
struct NoValidArc : Error {
    using Error::Error;
};

// The node graph of an annulus pattern is not connected to the designated
// start edge, so no spanning tree reaches every node.
struct DisconnectedPattern : Error {
    using Error::Error;
};

// One side of a face gluing: face `face` of tet `tet` maps onto the partner
// face perm[face] of tet `tet` under `perm` (acting on all four labels).
// tet < 0 means the facet is unglued (boundary).
struct FaceGluing {
    int tet = -1;
    std::uint8_t face = 0;
    Perm4 perm;

    bool glued() const { return tet >= 0; }
};

struct Tetrahedron {
    std::array<FaceGluing, 4> glue;
};

// A (possibly singular) triangulation: a list of abstract tetrahedra plus an
// involutive pairing of faces. No geometry; everything downstream (skeleton,
// links, moves) is derived from this table.
class Triangulation {
  public:
    Triangulation() = default;
    explicit Triangulation(std::size_t n) : tets_(n) {}

    std::size_t size() const { return tets_.size(); }
    bool empty() const { return tets_.empty(); }

    const Tetrahedron& tet(int t) const { return tets_[t]; }
    Tetrahedron& tet(int t) { return tets_[t]; }

    const FaceGluing& gluing(int t, int f) const { return tets_[t].glue[f]; }

    // Glues face f of t onto face p[f] of t2 (and records the inverse side).
    void glue_faces(int t, int f, int t2, const Perm4& p);
    void unglue_face(int t, int f);

    int add_tet() {
        tets_.emplace_back();
        return static_cast<int>(tets_.size()) - 1;
    }

    // Removes the given tetrahedra (sorted or not), compacting indices.
    // Gluings onto removed tets must have been rerouted beforehand.
    // Returns old->new index map with -1 for removed entries.
    std::vector<int> remove_tets(std::vector<int> victims);

    bool closed() const;

    // Structural well-formedness: partner indices in range, involution holds,
    // no face glued to itself. Throws InvariantBroken on failure.
    void check_integrity() const;

    bool connected() const;

    friend bool operator==(const Triangulation& a, const Triangulation& b);

  private:
    std::vector<Tetrahedron> tets_;
};

// Text format, one triangulation per stream:
//   tets <n>
//   <i>: <g0> <g1> <g2> <g3>
// where <gj> is either `-` (unglued) or `<t>(<perm>)` with <perm> the four
// digit images of 0..3. Lines starting with `#` are comments.
Triangulation parse_triangulation(std::istream& in);
Triangulation parse_triangulation(const std::string& text);
std::string format_triangulation(const Triangulation& t);

}  // namespace triflip
