#include "triflip/triangulation.hpp"

#include <sstream>

#include "doctest.h"
#include "support/fixtures.hpp"

using namespace triflip;

TEST_CASE("gluing bookkeeping holds both sides") {
    Triangulation t(2);
    Perm4 p(2, 0, 1, 3);  // face 0 of tet 0 onto face 2 of tet 1
    t.glue_faces(0, 0, 1, p);
    CHECK(t.gluing(0, 0).glued());
    CHECK(t.gluing(0, 0).tet == 1);
    CHECK(t.gluing(0, 0).face == 2);
    CHECK(t.gluing(1, 2).tet == 0);
    CHECK(t.gluing(1, 2).face == 0);
    CHECK(t.gluing(1, 2).perm == p.inverse());
    t.check_integrity();
    CHECK_FALSE(t.closed());
    CHECK(t.connected());

    t.unglue_face(1, 2);
    CHECK_FALSE(t.gluing(0, 0).glued());
    CHECK_FALSE(t.gluing(1, 2).glued());
}

TEST_CASE("a face can never be glued to itself") {
    Triangulation t(1);
    CHECK_THROWS_AS(t.glue_faces(0, 0, 0, Perm4()), InvariantBroken);
    // Same tet, different faces is fine.
    t.glue_faces(0, 0, 0, Perm4(1, 0, 3, 2));
    t.check_integrity();
}

TEST_CASE("fixtures are well formed") {
    for (const Triangulation& t : {fixtures::double_tet(), fixtures::gieseking()}) {
        t.check_integrity();
        CHECK(t.closed());
        CHECK(t.connected());
    }
}

TEST_CASE("text format round trips") {
    for (const Triangulation& t :
         {fixtures::double_tet(), fixtures::gieseking(), fixtures::reversed_edge_tet()}) {
        std::string s = format_triangulation(t);
        Triangulation back = parse_triangulation(s);
        CHECK(back == t);
        CHECK(format_triangulation(back) == s);
    }
}

TEST_CASE("parser accepts comments and blank lines") {
    Triangulation t = parse_triangulation(
        "# a pillow\n"
        "tets 2\n"
        "\n"
        "0: 1(0123) 1(0123) 1(0123) 1(0123)  # all four faces\n"
        "1: 0(0123) 0(0123) 0(0123) 0(0123)\n");
    CHECK(t == fixtures::double_tet());
}

TEST_CASE("parser rejects malformed input") {
    CHECK_THROWS_AS(parse_triangulation("tets x\n"), ParseError);
    CHECK_THROWS_AS(parse_triangulation("0: - - - -\n"), ParseError);  // missing header
    CHECK_THROWS_AS(parse_triangulation("tets 1\n0: - - -\n"), ParseError);
    CHECK_THROWS_AS(parse_triangulation("tets 1\n0: - - - -\n0: - - - -\n"), ParseError);
    CHECK_THROWS_AS(parse_triangulation("tets 1\n0: 0(0123) - - -\n"), ParseError);  // self face
    CHECK_THROWS_AS(parse_triangulation("tets 1\n0: 1(0123) - - -\n"), ParseError);  // out of range
    CHECK_THROWS_AS(parse_triangulation("tets 1\n0: - 0(0132) - -\n"), ParseError);  // p[f] == f
    CHECK_THROWS_AS(parse_triangulation("tets 2\n0: 1(0123) - - -\n1: - 0(0123) - -\n"),
                    ParseError);  // inconsistent involution
}

TEST_CASE("remove_tets compacts and reroutes indices") {
    // Chain: 0-1-2 glued along faces; removing the middle one must be
    // rejected while gluings still point at it.
    Triangulation t(3);
    t.glue_faces(0, 0, 1, Perm4());
    t.glue_faces(1, 1, 2, Perm4());
    CHECK_THROWS_AS(t.remove_tets({1}), InvariantBroken);

    t.unglue_face(0, 0);
    t.unglue_face(1, 1);
    auto map = t.remove_tets({1});
    CHECK(t.size() == 2);
    CHECK(map[0] == 0);
    CHECK(map[1] == -1);
    CHECK(map[2] == 1);
}
