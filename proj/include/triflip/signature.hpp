#pragma once

#include <optional>
#include <string>
#include <vector>

#include "triflip/triangulation.hpp"

namespace triflip {

// Canonical form: over every (start tetrahedron, start relabeling) pair a
// breadth-first relabeling of the component is encoded as a byte string and
// the lexicographically least one wins. Two triangulations have equal
// signatures exactly when they are combinatorially isomorphic.
//
// The printable signature is the lowercase hex of those bytes.
std::string canonical_signature(const Triangulation& t);

bool isomorphic(const Triangulation& a, const Triangulation& b);

// A combinatorial isomorphism a -> b: tetrahedron map plus per-tetrahedron
// vertex relabelings (labels of a's tet t map through vperm[t] onto labels of
// b's tet tet_map[t]).
struct Isomorphism {
    std::vector<int> tet_map;
    std::vector<Perm4> vperm;
};

std::optional<Isomorphism> find_isomorphism(const Triangulation& a, const Triangulation& b);

}  // namespace triflip
