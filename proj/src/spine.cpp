#include "triflip/spine.hpp"

#include <sstream>

#include "triflip/skeleton.hpp"

namespace triflip {

SpecialSpine dualize(const Triangulation& t) {
    if (!t.closed())
        throw PreconditionViolated("triangulation is not closed");
    SkeletonIndex sk(t);
    if (!sk.valid())
        throw PreconditionViolated("edge identified with itself reversed");

    SpecialSpine s;
    s.spine_vertices = static_cast<int>(t.size());

    s.triple_edges.reserve(sk.face_classes());
    for (int fc = 0; fc < sk.face_classes(); ++fc) {
        auto [t0, f0] = sk.face_rep(fc);
        const FaceGluing& g = t.gluing(t0, f0);
        s.triple_edges.push_back({fc, t0, g.tet, t0, f0, g.tet, g.face});
    }

    s.two_cells.reserve(sk.edge_classes());
    for (int ec = 0; ec < sk.edge_classes(); ++ec) {
        SkeletonIndex::EdgeRing ring = sk.edge_ring(ec);
        if (!ring.closes)
            throw InvariantBroken("edge ring does not close in a closed triangulation");
        SpecialSpine::TwoCell cell;
        cell.edge_class = ec;
        cell.disc = !sk.edge_reversed(ec);
        for (const auto& en : ring.entries) {
            int exit = 6 - en.u - en.v - en.enter_face;
            int fc = sk.face_class(en.tet, exit);
            bool fwd = sk.face_rep(fc) == std::pair<int, int>{en.tet, exit};
            cell.boundary.push_back({fc, fwd, en.tet});
        }
        s.two_cells.push_back(std::move(cell));
    }

    s.regions.reserve(sk.vertex_classes());
    for (int v = 0; v < sk.vertex_classes(); ++v)
        s.regions.push_back({v, sk.link(v)});
    return s;
}

SingularGraph singular_graph(const SpecialSpine& s) {
    SingularGraph g;
    g.nodes = s.spine_vertices;
    g.ends.assign(g.nodes, {-1, -1, -1, -1});
    g.arcs.reserve(s.triple_edges.size());
    for (size_t a = 0; a < s.triple_edges.size(); ++a) {
        const auto& te = s.triple_edges[a];
        g.arcs.push_back({te.tail, te.head});
        g.ends[te.tet0][te.f0] = static_cast<int>(a);
        g.ends[te.tet1][te.f1] = static_cast<int>(a);
    }
    return g;
}

std::vector<bool> check_two_cells_are_discs(const SpecialSpine& s) {
    std::vector<bool> out;
    out.reserve(s.two_cells.size());
    for (const auto& c : s.two_cells) out.push_back(c.disc);
    return out;
}

std::string singular_graph_dot(const SpecialSpine& s) {
    std::ostringstream os;
    os << "graph singular_set {\n";
    os << "  node [shape=point];\n";
    for (int n = 0; n < s.spine_vertices; ++n) os << "  v" << n << ";\n";
    for (size_t a = 0; a < s.triple_edges.size(); ++a) {
        const auto& te = s.triple_edges[a];
        os << "  v" << te.tail << " -- v" << te.head << " [label=\"a" << a
           << "\"];\n";
    }
    os << "}\n";
    return os.str();
}

namespace {

std::string surface_name(const VertexLink& l) {
    switch (l.cls) {
        case LinkClass::Sphere: return "sphere";
        case LinkClass::Torus: return "torus";
        case LinkClass::KleinBottle: return "Klein bottle";
        case LinkClass::Other: break;
    }
    std::ostringstream os;
    os << "surface(chi=" << l.chi << ", "
       << (l.orientable ? "orientable" : "non-orientable")
       << (l.connected ? "" : ", disconnected")
       << (l.has_boundary ? ", with boundary" : "") << ")";
    return os.str();
}

}  // namespace

std::string duality_counts(const SpecialSpine& s) {
    std::ostringstream os;
    os << "spine vertices: " << s.spine_vertices << "\n";
    os << "triple edges:   " << s.triple_edges.size() << "\n";
    os << "two-cells:      " << s.two_cells.size() << "\n";
    os << "regions:        " << s.regions.size() << "\n";
    for (const auto& r : s.regions)
        os << "  region " << r.vertex_class << ": " << surface_name(r.boundary)
           << "\n";
    return os.str();
}

}  // namespace triflip
