#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "triflip/triangulation.hpp"

namespace triflip {

enum class LinkClass { Sphere, Torus, KleinBottle, Other };

struct VertexLink {
    int chi = 0;
    bool orientable = true;
    bool connected = true;
    bool has_boundary = false;
    LinkClass cls = LinkClass::Other;
};

// Corner/edge/face orbit index of a triangulation. All class ids are dense
// and deterministic: classes are numbered by their first slot in scan order
// (tets ascending, then corner/edge-slot/face ascending).
//
// Slot encodings: corner (t,c) -> 4t+c; edge slot (t,e) -> 6t+e with e the
// fixed pair order 01,02,03,12,13,23; face slot (t,f) -> 4t+f.
class SkeletonIndex {
  public:
    explicit SkeletonIndex(const Triangulation& tri);
    // The index keeps a pointer to `tri`; it must outlive this object.
    explicit SkeletonIndex(const Triangulation&&) = delete;

    const Triangulation& tri() const { return *tri_; }

    int vertex_classes() const { return nv_; }
    int edge_classes() const { return ne_; }
    int face_classes() const { return nf_; }
    int tet_count() const { return static_cast<int>(tri_->size()); }

    int vertex_class(int t, int c) const { return vclass_[4 * t + c]; }
    int edge_class(int t, int e) const { return eclass_[6 * t + e]; }
    int face_class(int t, int f) const { return fclass_[4 * t + f]; }

    // Least slot of each class, in the slot encodings above.
    std::pair<int, int> vertex_rep(int v) const { return {vrep_[v] / 4, vrep_[v] % 4}; }
    std::pair<int, int> edge_rep(int e) const { return {erep_[e] / 6, erep_[e] % 6}; }
    std::pair<int, int> face_rep(int f) const { return {frep_[f] / 4, frep_[f] % 4}; }

    // Number of preimages: corners of a vertex class, slots of an edge class.
    int vertex_degree(int v) const { return vdeg_[v]; }
    int edge_degree(int e) const { return edeg_[e]; }
    // 2 for interior faces, 1 for boundary facets.
    int face_degree(int f) const { return fdeg_[f]; }

    // True when some identification maps the edge class onto itself with the
    // two endpoints swapped (an edge folded back on itself).
    bool edge_reversed(int e) const { return ereversed_[e] != 0; }

    // Vertex classes of the two endpoints of an edge class ({lo, hi} of its
    // representative slot).
    std::pair<int, int> edge_endpoints(int e) const;

    const VertexLink& link(int v) const { return links_[v]; }
    bool vertex_material(int v) const { return material_[v]; }
    bool vertex_ideal(int v) const { return !material_[v]; }
    int material_vertex_count() const { return material_count_; }

    // All corner slots (t,c) of a vertex class, in scan order.
    const std::vector<std::pair<int, int>>& corners_of(int v) const { return vcorners_[v]; }
    // All edge slots (t,e) of an edge class, in scan order.
    const std::vector<std::pair<int, int>>& slots_of_edge(int e) const { return eslots_[e]; }

    // The tetrahedra around an interior edge class in cyclic order, starting
    // from the least slot: entries (t, e-slot, u, v) where (u,v) are the edge
    // endpoints in a consistent direction around the cycle. Empty when the
    // edge is on the boundary or the walk does not close up cleanly.
    struct EdgeRing {
        struct Entry {
            int tet;
            int eslot;
            std::uint8_t u, v;       // consistent direction of the edge in this tet
            std::uint8_t enter_face; // face crossed to arrive here (exit of previous)
        };
        std::vector<Entry> entries;
        bool closes = false;
    };
    EdgeRing edge_ring(int e) const;

    // V - E + F - T.
    int euler_characteristic() const;

    // First edge class identified with itself reversing orientation, if any.
    std::optional<int> first_reversed_edge() const;
    bool valid() const { return !first_reversed_edge().has_value(); }

    // Every simplex embeds and any two simplices meet in at most one common
    // face (checked combinatorially on the class index).
    bool is_simplicial() const;

    // The tetrahedra admit coherent orientations (every gluing between
    // equally-oriented tets is an odd label permutation).
    bool orientable() const { return orientable_; }

  private:
    const Triangulation* tri_;
    bool orientable_ = true;
    int nv_ = 0, ne_ = 0, nf_ = 0;
    std::vector<int> vclass_, eclass_, fclass_;
    std::vector<int> vrep_, erep_, frep_;
    std::vector<int> vdeg_, edeg_, fdeg_;
    std::vector<std::uint8_t> ereversed_;
    std::vector<VertexLink> links_;
    std::vector<bool> material_;
    int material_count_ = 0;
    std::vector<std::vector<std::pair<int, int>>> vcorners_;
    std::vector<std::vector<std::pair<int, int>>> eslots_;

    void build_links();
};

// Convenience: material/ideal vertex class ids of a triangulation.
struct VertexSplit {
    std::vector<int> material;
    std::vector<int> ideal;
};
VertexSplit classify_vertices(const SkeletonIndex& sk);

}  // namespace triflip
