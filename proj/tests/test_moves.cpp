#include "triflip/moves.hpp"

#include <random>

#include "doctest.h"
#include "support/checks.hpp"
#include "support/fixtures.hpp"
#include "support/walk.hpp"
#include "triflip/signature.hpp"

using namespace triflip;

namespace {

void check_result_sanity(const Triangulation& before, const ApplyOutcome& o) {
    o.tri.check_integrity();
    CHECK(o.tri.closed() == before.closed());
    CHECK(o.tet_map.size() == before.size());
    std::vector<char> used(o.tri.size(), 0);
    for (int nt : o.tet_map)
        if (nt >= 0) {
            REQUIRE(nt < static_cast<int>(o.tri.size()));
            CHECK_FALSE(used[nt]);
            used[nt] = 1;
        }
    for (int nt : o.new_tets) {
        REQUIRE(nt >= 0);
        REQUIRE(nt < static_cast<int>(o.tri.size()));
        CHECK_FALSE(used[nt]);
        used[nt] = 1;
    }
    for (char u : used) CHECK(u);  // survivors + new tets account for everything
}

struct Counts {
    int v, e, f, t;
};

Counts counts(const Triangulation& tri) {
    SkeletonIndex sk(tri);
    return {sk.vertex_classes(), sk.edge_classes(), sk.face_classes(), sk.tet_count()};
}

}  // namespace

TEST_CASE("2-3 and back on the double tetrahedron") {
    Triangulation dt = fixtures::double_tet();
    std::string sig0 = canonical_signature(dt);
    SkeletonIndex sk(dt);
    for (int fc = 0; fc < sk.face_classes(); ++fc) {
        REQUIRE(legal_23(sk, fc));
        ApplyOutcome o = apply_23(sk, fc);
        check_result_sanity(dt, o);
        Counts c = counts(o.tri);
        CHECK(c.t == 3);
        CHECK(c.v == 4);
        CHECK(c.e == 7);
        CHECK(c.f == 6);
        SkeletonIndex rs(o.tri);
        CHECK(rs.valid());

        // The landmark slot holds the new interior degree-3 edge.
        int ce = rs.edge_class(o.landmark_tet, o.landmark_slot);
        CHECK(rs.edge_degree(ce) == 3);
        REQUIRE(o.has_inverse);
        REQUIRE(o.inverse.kind == MoveEvent::Kind::E32);
        CHECK(legal_32(rs, ce));

        ApplyOutcome back = apply_event(o.tri, o.inverse);
        CHECK(canonical_signature(back.tri) == sig0);
    }
}

TEST_CASE("3-2 rejects short or repeated rings") {
    Triangulation sk_tri = fixtures::double_tet();
    SkeletonIndex sk(sk_tri);
    for (int e = 0; e < sk.edge_classes(); ++e) CHECK_FALSE(legal_32(sk, e));  // degree 2
    Triangulation gk_tri = fixtures::gieseking();
    SkeletonIndex gk(gk_tri);
    CHECK_FALSE(legal_32(gk, 0));  // degree 6
}

TEST_CASE("2-3 needs two distinct tetrahedra") {
    Triangulation sk_tri = fixtures::gieseking();
    SkeletonIndex sk(sk_tri);
    for (int f = 0; f < sk.face_classes(); ++f) {
        CHECK_FALSE(legal_23(sk, f));  // both faces on the same tet
        CHECK_THROWS_AS(apply_23(sk, f), IllegalMove);
    }
}

TEST_CASE("1-4 and back") {
    for (const Triangulation& t : {fixtures::double_tet(), fixtures::gieseking()}) {
        Counts c0 = counts(t);
        std::string sig0 = canonical_signature(t);
        SkeletonIndex sk(t);
        for (int tet = 0; tet < sk.tet_count(); ++tet) {
            ApplyOutcome o = apply_14(sk, tet);
            check_result_sanity(t, o);
            Counts c = counts(o.tri);
            CHECK(c.t == c0.t + 3);
            CHECK(c.v == c0.v + 1);
            CHECK(c.e == c0.e + 4);
            CHECK(c.f == c0.f + 6);

            SkeletonIndex rs(o.tri);
            CHECK(rs.valid() == sk.valid());
            int nv = rs.vertex_class(o.landmark_tet, o.landmark_slot);
            CHECK(rs.vertex_degree(nv) == 4);
            CHECK(rs.vertex_material(nv));
            CHECK(rs.link(nv).cls == LinkClass::Sphere);
            REQUIRE(o.has_inverse);
            REQUIRE(legal_41(rs, nv));

            ApplyOutcome back = apply_event(o.tri, o.inverse);
            CHECK(canonical_signature(back.tri) == sig0);
        }
    }
}

TEST_CASE("4-1 is rejected away from coned stars") {
    Triangulation sk_tri = fixtures::double_tet();
    SkeletonIndex sk(sk_tri);
    for (int v = 0; v < sk.vertex_classes(); ++v) {
        CHECK_FALSE(legal_41(sk, v));  // degree 2 vertices
        CHECK_THROWS_AS(apply_41(sk, v), IllegalMove);
    }
}

TEST_CASE("results are oracle-consistent after stacked moves") {
    // 1-4, then 2-3 between two cones, checked against the propagation oracle.
    Triangulation dt = fixtures::double_tet();
    SkeletonIndex sk(dt);
    ApplyOutcome o1 = apply_14(sk, 0);
    SkeletonIndex s1(o1.tri);

    int done = 0;
    for (int fc = 0; fc < s1.face_classes(); ++fc) {
        if (!legal_23(s1, fc)) continue;
        ApplyOutcome o2 = apply_23(s1, fc);
        check_result_sanity(o1.tri, o2);
        checks::skeleton_matches_oracle(o2.tri);
        SkeletonIndex s2(o2.tri);
        CHECK(s2.valid());
        CHECK(s2.euler_characteristic() == 0);
        ++done;
    }
    CHECK(done > 0);
}

TEST_CASE("the slot naming an event does not change the result") {
    Triangulation dt = fixtures::double_tet();
    SkeletonIndex sk(dt);
    // Face class of (0,0) also appears as (1,0); both addresses, same result.
    MoveEvent a{MoveEvent::Kind::F23, 0, 0, 0, 0};
    MoveEvent b{MoveEvent::Kind::F23, 1, 0, 0, 0};
    CHECK(sk.face_class(0, 0) == sk.face_class(1, 0));
    CHECK(apply_event(dt, a).tri == apply_event(dt, b).tri);
}

TEST_CASE("random walks stay sane and scripts round trip") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 10; ++trial) {
        Triangulation cur = fixtures::double_tet();
        MoveScript script;
        for (int step = 0; step < 8; ++step) {
            SkeletonIndex sk(cur);
            auto ev = walk::random_event(sk, rng, {2, 2, 1, 2});
            if (!ev) break;
            ApplyOutcome o = apply_event(cur, *ev);
            check_result_sanity(cur, o);
            checks::skeleton_matches_oracle(o.tri);
            SkeletonIndex rs(o.tri);
            CHECK(rs.valid());
            CHECK(rs.euler_characteristic() == 0);
            script.push_back(*ev);
            cur = std::move(o.tri);
        }

        Triangulation base = fixtures::double_tet();
        std::string text = format_script(base, script);
        MoveScript parsed = parse_script(base, text);
        REQUIRE(parsed.size() == script.size());
        CHECK(format_script(base, parsed) == text);
        CHECK(canonical_signature(replay(base, parsed)) == canonical_signature(cur));
    }
}

TEST_CASE("script text errors are reported") {
    Triangulation dt = fixtures::double_tet();
    CHECK_THROWS_AS(parse_script(dt, "base deadbeef\n"), ParseError);
    CHECK_THROWS_AS(parse_script(dt, "23 t99\n"), ParseError);
    CHECK_THROWS_AS(parse_script(dt, "32 e0\n"), ParseError);  // illegal move
    CHECK_THROWS_AS(parse_script(dt, "frob t0\n"), ParseError);
    CHECK_THROWS_AS(parse_script(dt, "23 e0\n"), ParseError);  // wrong prefix
    CHECK(parse_script(dt, "# only comments\n\n").empty());

    MoveScript good = parse_script(dt, "base " + canonical_signature(dt) + "\n23 t0\n32 e3\n");
    CHECK(good.size() == 2);
    CHECK(canonical_signature(replay(dt, good)) == canonical_signature(dt));
}

TEST_CASE("replay reports the failing event") {
    Triangulation dt = fixtures::double_tet();
    // The first event is fine; the second addresses a degree-1 edge.
    MoveScript s{{MoveEvent::Kind::F23, 0, 0, 0, 0}, {MoveEvent::Kind::E32, 0, 0, 0, 0}};
    bool threw = false;
    try {
        replay(dt, s);
    } catch (const IllegalMove& e) {
        threw = true;
        CHECK(std::string(e.what()).find("event 1") != std::string::npos);
    }
    CHECK(threw);
}

TEST_CASE("the frozen arch pattern is the first derived survivor") {
    auto pats = derive_arch_patterns();
    REQUIRE_FALSE(pats.empty());
    CHECK(pats.size() == 24);  // one labeling class, all relabelings of it
    CHECK(arch_pattern() == pats.front());
}

TEST_CASE("arch insertion tunnels two vertices together") {
    Triangulation dt = fixtures::double_tet();
    SkeletonIndex sk(dt);
    int fc = sk.face_class(0, 0);
    int va = sk.vertex_class(0, 1), vb = sk.vertex_class(0, 2), vz = sk.vertex_class(0, 3);

    REQUIRE(legal_arch(sk, fc, va, vb));
    ApplyOutcome o = insert_arch(sk, fc, va, vb);
    check_result_sanity(dt, o);
    Counts c = counts(o.tri);
    CHECK(c.t == 3);
    CHECK(c.v == 3);
    CHECK(c.e == 6);
    CHECK(c.f == 6);

    SkeletonIndex rs(o.tri);
    CHECK(rs.valid());
    // The two chosen vertices land in one class; the third keeps its own.
    CHECK(rs.vertex_class(0, 1) == rs.vertex_class(0, 2));
    CHECK(rs.vertex_class(0, 3) != rs.vertex_class(0, 1));
    CHECK(rs.vertex_class(0, 0) != rs.vertex_class(0, 1));
    CHECK(rs.link(rs.vertex_class(0, 1)).cls == LinkClass::Sphere);

    // Exactly one degree-1 edge appears: a loop at the unchosen corner.
    int monogons = 0;
    for (int e = 0; e < rs.edge_classes(); ++e)
        if (rs.edge_degree(e) == 1) {
            ++monogons;
            auto [p, q] = rs.edge_endpoints(e);
            CHECK(p == rs.vertex_class(0, 3));
            CHECK(q == rs.vertex_class(0, 3));
        }
    CHECK(monogons == 1);
    (void)vz;

    // The triangle's two edges at the unchosen corner merge.
    CHECK(rs.edge_class(0, edge_slot(1, 3)) == rs.edge_class(0, edge_slot(2, 3)));
    CHECK(rs.edge_class(0, edge_slot(1, 2)) != rs.edge_class(0, edge_slot(1, 3)));

    Triangulation rt = o.tri;
    checks::skeleton_matches_oracle(rt);
}

TEST_CASE("arch legality gates") {
    Triangulation dt = fixtures::double_tet();
    SkeletonIndex sk(dt);
    int fc = sk.face_class(0, 0);
    int va = sk.vertex_class(0, 1);
    CHECK_FALSE(legal_arch(sk, fc, va, va));
    CHECK_FALSE(legal_arch(sk, fc, va, sk.vertex_class(0, 0)));  // not on the triangle
    CHECK_THROWS_AS(insert_arch(sk, fc, va, va), IllegalMove);

    // A boundary triangle (face class of degree 1) cannot take an arch.
    Triangulation open2(2);
    open2.glue_faces(0, 0, 1, Perm4());
    SkeletonIndex ok2(open2);
    int fb = ok2.face_class(0, 1);
    CHECK(ok2.face_degree(fb) == 1);
    CHECK_FALSE(legal_arch(ok2, fb, ok2.vertex_class(0, 0), ok2.vertex_class(0, 2)));
}

TEST_CASE("arch events format and replay") {
    Triangulation dt = fixtures::double_tet();
    SkeletonIndex sk(dt);
    MoveEvent ev{MoveEvent::Kind::Arch, 0, 0, 1, 2};  // face slot (0,0), corners 1,2
    ApplyOutcome direct = apply_event(dt, ev);

    std::string script = format_script(dt, {ev});
    auto parsed = parse_script(dt, script);
    REQUIRE(parsed.size() == 1);
    Triangulation replayed = replay(dt, parsed);
    CHECK(canonical_signature(replayed) == canonical_signature(direct.tri));

    // Moves keep working after the arch.
    SkeletonIndex rs(direct.tri);
    bool did = false;
    for (int fc = 0; fc < rs.face_classes() && !did; ++fc)
        if (legal_23(rs, fc)) {
            ApplyOutcome nxt = apply_23(rs, fc);
            Triangulation nt = nxt.tri;
            checks::skeleton_matches_oracle(nt);
            did = true;
        }
    CHECK(did);
}
