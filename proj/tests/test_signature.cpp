#include "triflip/signature.hpp"

#include <random>

#include "doctest.h"
#include "support/fixtures.hpp"

using namespace triflip;

namespace {

// Structural check that iso really carries a onto b.
void check_isomorphism(const Triangulation& a, const Triangulation& b, const Isomorphism& iso) {
    REQUIRE(iso.tet_map.size() == a.size());
    std::vector<char> hit(b.size(), 0);
    for (std::size_t t = 0; t < a.size(); ++t) {
        REQUIRE(iso.tet_map[t] >= 0);
        REQUIRE(iso.tet_map[t] < static_cast<int>(b.size()));
        CHECK_FALSE(hit[iso.tet_map[t]]);
        hit[iso.tet_map[t]] = 1;
        CHECK(iso.vperm[t].is_valid());
    }
    for (int t = 0; t < static_cast<int>(a.size()); ++t)
        for (int f = 0; f < 4; ++f) {
            const FaceGluing& g = a.gluing(t, f);
            const FaceGluing& h = b.gluing(iso.tet_map[t], iso.vperm[t][f]);
            if (!g.glued()) {
                CHECK_FALSE(h.glued());
                continue;
            }
            REQUIRE(h.glued());
            CHECK(h.tet == iso.tet_map[g.tet]);
            CHECK(h.perm * iso.vperm[t] == iso.vperm[g.tet] * g.perm);
        }
}

}  // namespace

TEST_CASE("signature is invariant under relabeling") {
    std::mt19937 rng(20240816);
    for (const Triangulation& t :
         {fixtures::double_tet(), fixtures::gieseking(), fixtures::cusped_two_tet()}) {
        std::string sig = canonical_signature(t);
        CHECK(!sig.empty());
        for (int i = 0; i < 25; ++i) {
            Triangulation r = fixtures::random_relabeling(t, rng);
            CHECK(canonical_signature(r) == sig);
            CHECK(isomorphic(t, r));
            auto iso = find_isomorphism(t, r);
            REQUIRE(iso.has_value());
            check_isomorphism(t, r, *iso);
        }
    }
}

TEST_CASE("different shapes get different signatures") {
    CHECK(canonical_signature(fixtures::double_tet()) != canonical_signature(fixtures::gieseking()));
    CHECK(canonical_signature(fixtures::cusped_two_tet()) ==
          "020001000001000301001701000c000000000017000004000008");
    CHECK(canonical_signature(fixtures::gieseking()) !=
          canonical_signature(fixtures::reversed_edge_tet()));
    CHECK_FALSE(isomorphic(fixtures::double_tet(), fixtures::gieseking()));
    CHECK_FALSE(find_isomorphism(fixtures::double_tet(), fixtures::gieseking()).has_value());
}

TEST_CASE("gluing detail is part of the signature") {
    // Same face pairing as the double tetrahedron but one face twisted.
    Triangulation b(2);
    for (int f = 0; f < 3; ++f) b.glue_faces(0, f, 1, Perm4());
    b.glue_faces(0, 3, 1, Perm4(1, 0, 2, 3));
    CHECK(canonical_signature(fixtures::double_tet()) != canonical_signature(b));

    // And ungluing a face changes it too.
    Triangulation c = fixtures::double_tet();
    c.unglue_face(0, 0);
    CHECK(canonical_signature(fixtures::double_tet()) != canonical_signature(c));
}

TEST_CASE("multi-component signatures ignore interleaving") {
    // double_tet plus a lone tetrahedron, assembled in two different orders.
    Triangulation x(3);
    x.glue_faces(0, 0, 1, Perm4());  // not double_tet, just any 2-tet piece
    x.glue_faces(0, 1, 1, Perm4(3, 2, 1, 0));
    Triangulation y(3);
    y.glue_faces(1, 0, 2, Perm4());
    y.glue_faces(1, 1, 2, Perm4(3, 2, 1, 0));
    CHECK(canonical_signature(x) == canonical_signature(y));
    CHECK(isomorphic(x, y));
    auto iso = find_isomorphism(x, y);
    REQUIRE(iso.has_value());
    check_isomorphism(x, y, *iso);
}

TEST_CASE("empty triangulations are isomorphic") {
    Triangulation a, b;
    CHECK(canonical_signature(a).empty());
    CHECK(isomorphic(a, b));
    CHECK(find_isomorphism(a, b).has_value());
}
