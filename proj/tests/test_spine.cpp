#include <map>
#include <random>
#include <string>

#include "doctest.h"
#include "support/fixtures.hpp"
#include "support/walk.hpp"
#include "triflip/moves.hpp"
#include "triflip/skeleton.hpp"
#include "triflip/spine.hpp"

using namespace triflip;

namespace {

// Duality dictionary plus structural sanity, checked for any closed valid
// input.
void check_duality(const Triangulation& t) {
    SkeletonIndex sk(t);
    SpecialSpine s = dualize(t);
    CHECK(s.spine_vertices == static_cast<int>(t.size()));
    CHECK(static_cast<int>(s.triple_edges.size()) == sk.face_classes());
    CHECK(static_cast<int>(s.two_cells.size()) == sk.edge_classes());
    CHECK(static_cast<int>(s.regions.size()) == sk.vertex_classes());

    // each two-cell boundary walks the dual edge's ring once
    std::map<int, int> uses;
    for (const auto& c : s.two_cells) {
        CHECK(static_cast<int>(c.boundary.size()) ==
              sk.edge_degree(c.edge_class));
        for (const auto& tok : c.boundary) {
            ++uses[tok.triple_edge];
            CHECK(tok.corner >= 0);
            CHECK(tok.corner < s.spine_vertices);
        }
    }
    // a triangle has three edges: every triple edge is crossed exactly
    // three times over all two-cell boundaries
    for (const auto& te : s.triple_edges) CHECK(uses[te.face_class] == 3);

    // region boundaries are the vertex links
    for (const auto& r : s.regions) {
        CHECK(r.boundary.chi == sk.link(r.vertex_class).chi);
        CHECK(r.boundary.orientable == sk.link(r.vertex_class).orientable);
        CHECK(r.boundary.connected == sk.link(r.vertex_class).connected);
    }

    // the singular set is a 4-valent graph with one arc per triangle class
    SingularGraph g = singular_graph(s);
    CHECK(g.nodes == s.spine_vertices);
    CHECK(g.arcs.size() == s.triple_edges.size());
    CHECK(2 * g.nodes == static_cast<int>(g.arcs.size()));
    for (int n = 0; n < g.nodes; ++n)
        for (int f = 0; f < 4; ++f) {
            int a = g.ends[n][f];
            CHECK(a >= 0);
            const auto& te = s.triple_edges[a];
            bool matches = (te.tet0 == n && te.f0 == f) ||
                           (te.tet1 == n && te.f1 == f);
            CHECK(matches);
        }
}

Triangulation random_small(std::mt19937& rng) {
    Triangulation t = (rng() & 1) ? fixtures::double_tet()
                                  : fixtures::cusped_two_tet();
    int steps = std::uniform_int_distribution<int>(0, 6)(rng);
    for (int i = 0; i < steps; ++i) {
        SkeletonIndex sk(t);
        walk::Weights w;
        w.w23 = t.size() < 5 ? 2 : 0;
        w.w32 = 1;
        w.w14 = t.size() < 5 ? 1 : 0;
        w.w41 = 1;
        auto ev = walk::random_event(sk, rng, w);
        if (!ev) break;
        t = apply_event(t, *ev).tri;
    }
    return fixtures::random_relabeling(t, rng);
}

}  // namespace

TEST_CASE("double tetrahedron dualizes to two butterflies") {
    Triangulation dt = fixtures::double_tet();
    SpecialSpine s = dualize(dt);
    CHECK(s.spine_vertices == 2);
    CHECK(s.triple_edges.size() == 4);
    CHECK(s.two_cells.size() == 6);
    CHECK(s.regions.size() == 4);
    for (const auto& r : s.regions) {
        CHECK(r.boundary.cls == LinkClass::Sphere);
        CHECK(r.boundary.chi == 2);
    }
    for (bool d : check_two_cells_are_discs(s)) CHECK(d);
    SingularGraph g = singular_graph(s);
    CHECK(g.nodes == 2);
    CHECK(g.arcs.size() == 4);
    check_duality(dt);
}

TEST_CASE("Gieseking dualizes to a one-vertex spine") {
    Triangulation gk = fixtures::gieseking();
    SpecialSpine s = dualize(gk);
    CHECK(s.spine_vertices == 1);
    CHECK(s.triple_edges.size() == 2);
    for (const auto& te : s.triple_edges) {
        CHECK(te.tail == 0);  // both arcs are loops
        CHECK(te.head == 0);
    }
    CHECK(s.regions.size() == 1);
    CHECK(s.regions[0].boundary.cls == LinkClass::KleinBottle);
    CHECK(s.regions[0].boundary.chi == 0);
    CHECK(!s.regions[0].boundary.orientable);
    check_duality(gk);
}

TEST_CASE("a 2-3 move adds one spine vertex and one two-cell") {
    Triangulation dt = fixtures::double_tet();
    SpecialSpine before = dualize(dt);
    SkeletonIndex sk(dt);
    for (int fc = 0; fc < sk.face_classes(); ++fc) {
        ApplyOutcome o = apply_23(sk, fc);
        SpecialSpine after = dualize(o.tri);
        CHECK(after.spine_vertices == before.spine_vertices + 1);
        CHECK(after.two_cells.size() == before.two_cells.size() + 1);
    }
}

TEST_CASE("duality dictionary on random closed triangulations") {
    std::mt19937 rng(5);
    for (int it = 0; it < 40; ++it) check_duality(random_small(rng));
}

TEST_CASE("dualize refuses bad input") {
    Triangulation open(1);
    CHECK_THROWS_AS(dualize(open), PreconditionViolated);
    CHECK_THROWS_AS(dualize(fixtures::reversed_edge_tet()),
                    PreconditionViolated);
}

TEST_CASE("DOT export and count dump") {
    Triangulation dt = fixtures::double_tet();
    SpecialSpine s = dualize(dt);
    std::string dot = singular_graph_dot(s);
    CHECK(dot.find("graph singular_set {") == 0);
    size_t arcs = 0, pos = 0;
    while ((pos = dot.find("--", pos)) != std::string::npos) {
        ++arcs;
        pos += 2;
    }
    CHECK(arcs == 4);
    std::string counts = duality_counts(s);
    CHECK(counts.find("spine vertices: 2") != std::string::npos);
    CHECK(counts.find("two-cells:      6") != std::string::npos);
    CHECK(counts.find("sphere") != std::string::npos);
    CHECK(duality_counts(dualize(fixtures::gieseking()))
              .find("Klein bottle") != std::string::npos);
}
