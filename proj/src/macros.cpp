#include "triflip/macros.hpp"

#include "relocate.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "triflip/signature.hpp"
#include "triflip/skeleton.hpp"

namespace triflip {

namespace {

using namespace reloc;

void require_face_class(const SkeletonIndex& sk, int fc) {
    if (fc < 0 || fc >= sk.face_classes())
        throw IllegalMove("face class out of range");
}

// ---- shared V-move chain -------------------------------------------------
//
// The four-event core: 2-3 across (s,f), 2-3 on the first new tet's face 0
// twice in a row, then 3-2 on the first step's central edge (held by the
// surviving second new tet's (2,3) slot). Steps 2 and 3 consume new tets
// only, so they are always legal; the final edge has degree exactly 3 by
// construction.

struct VChain {
    ApplyOutcome o4;             // outcome of the final 3-2
    int second_central = -1;     // surviving holder of step 2's central edge
};

VChain v_chain(Runner& r, int s, int f, const char* why) {
    ApplyOutcome o1 = r.run23(s, f, why);
    int d1 = o1.new_tets[1];
    ApplyOutcome o2 = r.run23(o1.new_tets[0], 0);
    d1 = o2.tet_map[d1];
    int e1 = o2.new_tets[1];
    ApplyOutcome o3 = r.run23(o2.new_tets[0], 0);
    d1 = o3.tet_map[d1];
    e1 = o3.tet_map[e1];
    VChain vc;
    vc.o4 = r.run32(d1, edge_slot(2, 3));
    vc.second_central = vc.o4.tet_map[e1];
    return vc;
}

}  // namespace

// ---- triangular pillow ----------------------------------------------------

MacroResult triangular_02(const Triangulation& t, int face_class) {
    SkeletonIndex sk(t);
    require_face_class(sk, face_class);
    auto [s, f] = sk.face_rep(face_class);
    if (!t.gluing(s, f).glued())
        throw IllegalMove("triangle is not interior");

    Runner r(t);
    ApplyOutcome o1 = r.run14(s);
    int cone_f = o1.new_tets[f];
    int j = f == 0 ? 1 : 0;
    // collapse the edge from the new vertex to sigma's corner f: its ring is
    // the three cones other than cone_f, always distinct
    ApplyOutcome o2 = r.run32(o1.new_tets[j], edge_slot(j, f));
    cone_f = o2.tet_map[cone_f];

    SkeletonIndex out(r.cur);
    int w = out.vertex_class(cone_f, f);
    int p1 = out.vertex_class(o2.new_tets[0], 3) == w ? o2.new_tets[0]
                                                      : o2.new_tets[1];
    MacroResult res;
    res.landmarks["new vertex"] = w;
    res.landmarks["outer face 0"] = out.face_class(cone_f, f);
    res.landmarks["outer face 1"] = out.face_class(p1, 3);
    res.script = std::move(r.script);
    res.output = std::move(r.cur);
    return res;
}

MacroResult triangular_20(const Triangulation& t, int pillow_vertex) {
    SkeletonIndex sk(t);
    if (pillow_vertex < 0 || pillow_vertex >= sk.vertex_classes())
        throw IllegalMove("vertex class out of range");
    const auto& corners = sk.corners_of(pillow_vertex);
    if (corners.size() != 2 || corners[0].first == corners[1].first)
        throw IllegalMove("vertex star is not a triangular pillow");
    auto [q1, c1] = corners[0];
    auto [q2, c2] = corners[1];
    for (int x = 0; x < 4; ++x) {
        if (x == c1) continue;
        const FaceGluing& g = t.gluing(q1, x);
        if (!g.glued() || g.tet != q2 || g.perm[c1] != c2)
            throw IllegalMove("vertex star is not a triangular pillow");
    }
    const FaceGluing& outer = t.gluing(q1, c1);
    if (outer.glued() && outer.tet == q2 && outer.face == c2)
        throw PillowSelfGlued("pillow outer faces glued to each other");
    if (!outer.glued())
        throw IllegalMove("pillow outer face not glued");

    // remember where the healed triangle will reattach: the partner of the
    // second outer face
    const FaceGluing& heal = t.gluing(q2, c2);

    Runner r(t);
    bool rep_side = sk.face_rep(sk.face_class(q1, c1)) == std::make_pair(q1, c1);
    ApplyOutcome o1 = r.run23(q1, c1);
    // the pillow vertex is the pole on the (q1,c1) side
    ApplyOutcome o2 = r.run41(o1.new_tets[0], rep_side ? 2 : 3);

    MacroResult res;
    SkeletonIndex out(r.cur);
    int healed = -1;
    if (heal.glued() && o1.tet_map[heal.tet] >= 0 &&
        o2.tet_map[o1.tet_map[heal.tet]] >= 0) {
        healed = out.face_class(o2.tet_map[o1.tet_map[heal.tet]], heal.face);
    } else {
        // partner vanished into the star: the healed face closed onto the
        // new tetrahedron itself (or is a boundary face)
        int nt = o2.new_tets[0];
        std::vector<int> cand;
        for (int x = 0; x < 4; ++x) {
            const FaceGluing& g = r.cur.gluing(nt, x);
            if (heal.glued() ? (g.glued() && g.tet == nt) : !g.glued())
                cand.push_back(out.face_class(nt, x));
        }
        std::sort(cand.begin(), cand.end());
        cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
        if (cand.size() != 1)
            throw InvariantBroken("healed face is ambiguous");
        healed = cand[0];
    }
    res.landmarks["triangle"] = healed;
    res.script = std::move(r.script);
    res.output = std::move(r.cur);
    return res;
}

// ---- stellar subdivisions --------------------------------------------------

MacroResult stellar_face(const Triangulation& t, int face_class) {
    SkeletonIndex sk(t);
    require_face_class(sk, face_class);
    auto [s, f] = sk.face_rep(face_class);
    const FaceGluing& g = t.gluing(s, f);
    if (!g.glued() || g.tet == s)
        throw IllegalMove("triangle needs two distinct incident tetrahedra");

    Runner r(t);
    ApplyOutcome o1 = r.run14(s);
    ApplyOutcome o2 = r.run23(o1.tet_map[g.tet], g.face);
    int j = f == 0 ? 1 : 0;

    MacroResult res;
    SkeletonIndex out(r.cur);
    res.landmarks["new vertex"] =
        out.vertex_class(o2.tet_map[o1.new_tets[j]], j);
    res.script = std::move(r.script);
    res.output = std::move(r.cur);
    return res;
}

namespace {

// Emits the edge-split event sequence on r.cur for the edge at (tet, eslot).
// Returns the registry index of a corner slot holding the new vertex.
int stellar_edge_events(Runner& r, int tet, int eslot) {
    SkeletonIndex sk(r.cur);
    int ec = sk.edge_class(tet, eslot);
    const auto& slots = sk.slots_of_edge(ec);
    {
        std::set<int> tets;
        for (const auto& [st, se] : slots) tets.insert(st);
        if (tets.size() != slots.size())
            throw IllegalMove("edge repeated in a tetrahedron");
    }
    SkeletonIndex::EdgeRing ring = sk.edge_ring(ec);
    if (!ring.closes || ring.entries.empty())
        throw IllegalMove("edge is not interior");
    int d = static_cast<int>(ring.entries.size());
    if (d < 2) throw IllegalMove("edge degree below two");

    std::vector<int> cur(d);
    for (int i = 0; i < d; ++i) cur[i] = ring.entries[i].tet;
    auto remap = [&](const std::vector<int>& m) {
        for (int& x : cur)
            if (x >= 0) x = m[x];
    };

    ApplyOutcome o1 = r.run14(cur[0]);
    int u0 = ring.entries[0].u;
    int wreg = r.track(Tracked::Corner, o1.new_tets[u0], u0);
    cur[0] = -1;
    remap(o1.tet_map);
    for (int i = 1; i + 1 < d; ++i) {
        ApplyOutcome o = r.run23(cur[i], ring.entries[i].enter_face);
        cur[i] = -1;
        remap(o.tet_map);
    }
    r.run32(cur[d - 1], ring.entries[d - 1].eslot, "final 3-2 blocked");
    return wreg;
}

}  // namespace

MacroResult stellar_edge(const Triangulation& t, int edge_class) {
    SkeletonIndex sk(t);
    if (edge_class < 0 || edge_class >= sk.edge_classes())
        throw IllegalMove("edge class out of range");
    auto [et, ee] = sk.edge_rep(edge_class);

    Runner r(t);
    int wreg = stellar_edge_events(r, et, ee);

    MacroResult res;
    SkeletonIndex out(r.cur);
    auto [wt, wc] = r.at(wreg);
    res.landmarks["new vertex"] = out.vertex_class(wt, wc);
    res.script = std::move(r.script);
    res.output = std::move(r.cur);
    return res;
}

// ---- barycentric subdivision ------------------------------------------------

MacroResult barycentric(const Triangulation& t) {
    if (!t.closed()) throw IllegalMove("triangulation is not closed");
    MacroResult res;
    if (t.empty()) {
        res.output = t;
        return res;
    }
    SkeletonIndex sk0(t);
    int n = static_cast<int>(t.size());
    int nf = sk0.face_classes(), ne = sk0.edge_classes();

    Runner r(t);
    std::vector<int> freg(nf), ereg(ne);
    for (int k = 0; k < nf; ++k) {
        auto [ft, fx] = sk0.face_rep(k);
        freg[k] = r.track(Tracked::Face, ft, fx);
    }
    for (int k = 0; k < ne; ++k) {
        auto [et, ex] = sk0.edge_rep(k);
        ereg[k] = r.track(Tracked::Edge, et, ex);
    }
    std::vector<int> centers;

    // cone every tetrahedron from an interior point
    std::vector<int> cur(n);
    for (int i = 0; i < n; ++i) cur[i] = i;
    for (int i = 0; i < n; ++i) {
        ApplyOutcome o = r.run14(cur[i]);
        centers.push_back(r.track(Tracked::Corner, o.new_tets[0], 0));
        cur[i] = -1;
        for (int& x : cur)
            if (x >= 0) x = o.tet_map[x];
    }

    // cone every original face from its center
    for (int k = 0; k < nf; ++k) {
        auto [ft, fx] = r.at(freg[k]);
        FaceGluing g = r.cur.gluing(ft, fx);  // copy: run14 swaps out cur
        r.drop(freg[k]);
        ApplyOutcome o1 = r.run14(ft);
        ApplyOutcome o2 = r.run23(o1.tet_map[g.tet], g.face);
        int j = fx == 0 ? 1 : 0;
        centers.push_back(
            r.track(Tracked::Corner, o2.tet_map[o1.new_tets[j]], j));
    }

    // split every original edge at its midpoint
    for (int k = 0; k < ne; ++k) {
        auto [et, ex] = r.at(ereg[k]);
        r.drop(ereg[k]);
        centers.push_back(stellar_edge_events(r, et, ex));
    }

    SkeletonIndex out(r.cur);
    for (int i = 0; i < n; ++i) {
        auto [ct, cc] = r.at(centers[i]);
        res.landmarks["tet center " + std::to_string(i)] =
            out.vertex_class(ct, cc);
    }
    for (int k = 0; k < nf; ++k) {
        auto [ct, cc] = r.at(centers[n + k]);
        res.landmarks["face center " + std::to_string(k)] =
            out.vertex_class(ct, cc);
    }
    for (int k = 0; k < ne; ++k) {
        auto [ct, cc] = r.at(centers[n + nf + k]);
        res.landmarks["edge mid " + std::to_string(k)] =
            out.vertex_class(ct, cc);
    }
    if (r.cur.size() != t.size() * 24)
        throw InvariantBroken("barycentric count is off");
    res.script = std::move(r.script);
    res.output = std::move(r.cur);
    return res;
}

Triangulation barycentric_direct(const Triangulation& t) {
    if (!t.closed()) throw IllegalMove("triangulation is not closed");
    int n = static_cast<int>(t.size());
    // one tetrahedron per flag: labels (0,1,2,3) = (vertex, edge midpoint,
    // face center, tet center); within face f of tet `t`, its three edges
    // are indexed 0..2 by ascending edge slot and an edge end is 0 for the
    // lower corner label
    auto face_edges = [](int f) {
        std::array<int, 3> es{};
        int k = 0;
        for (int e = 0; e < 6; ++e)
            if (kEdgeEnds[e][0] != f && kEdgeEnds[e][1] != f) es[k++] = e;
        return es;
    };
    auto elocal = [&](int f, int e) {
        auto es = face_edges(f);
        for (int i = 0; i < 3; ++i)
            if (es[i] == e) return i;
        return -1;
    };
    auto piece = [&](int tet, int f, int e, int vend) {
        return 24 * tet + 6 * f + 2 * elocal(f, e) + vend;
    };

    Triangulation out(static_cast<size_t>(n) * 24);
    for (int tet = 0; tet < n; ++tet) {
        for (int f = 0; f < 4; ++f) {
            for (int e : face_edges(f)) {
                for (int vend = 0; vend < 2; ++vend) {
                    int self = piece(tet, f, e, vend);
                    int v = kEdgeEnds[e][vend];
                    // across the vertex: other end of the same edge
                    int o0 = piece(tet, f, e, 1 - vend);
                    // across the edge midpoint: the face's other edge at v
                    int e1 = -1;
                    for (int e2 : face_edges(f))
                        if (e2 != e &&
                            (kEdgeEnds[e2][0] == v || kEdgeEnds[e2][1] == v))
                            e1 = e2;
                    int o1 = piece(tet, f, e1, kEdgeEnds[e1][0] == v ? 0 : 1);
                    // across the face center: the other face containing e
                    int f2 = -1;
                    for (int x = 0; x < 4; ++x)
                        if (x != f && x != kEdgeEnds[e][0] &&
                            x != kEdgeEnds[e][1])
                            f2 = x;
                    int o2 = piece(tet, f2, e, vend);
                    if (self < o0) out.glue_faces(self, 0, o0, Perm4());
                    if (self < o1) out.glue_faces(self, 1, o1, Perm4());
                    if (self < o2) out.glue_faces(self, 2, o2, Perm4());
                    // across the tet center: the glued neighbor's flag
                    const FaceGluing& g = t.gluing(tet, f);
                    int nf2 = g.perm[f];
                    int nu = g.perm[kEdgeEnds[e][0]], nv2 = g.perm[kEdgeEnds[e][1]];
                    int ne2 = edge_slot(nu, nv2);
                    int nvend = kEdgeEnds[ne2][0] == g.perm[v] ? 0 : 1;
                    int o3 = piece(g.tet, nf2, ne2, nvend);
                    if (self < o3) out.glue_faces(self, 3, o3, Perm4());
                }
            }
        }
    }
    return out;
}

// ---- V-move family ----------------------------------------------------------

MacroResult v_move(const Triangulation& t, int tet, int face) {
    if (tet < 0 || tet >= static_cast<int>(t.size()) || face < 0 || face > 3)
        throw IllegalMove("tetrahedron or face out of range");
    const FaceGluing& g = t.gluing(tet, face);
    if (!g.glued() || g.tet == tet)
        throw IllegalMove("no distinct neighbor across the chosen face");

    Runner r(t);
    v_chain(r, tet, face, "no distinct neighbor across the chosen face");
    if (r.cur.size() != t.size() + 2)
        throw InvariantBroken("V-move tetrahedron count is off");
    MacroResult res;
    res.script = std::move(r.script);
    res.output = std::move(r.cur);
    return res;
}

MacroResult arch_with_membrane(const Triangulation& t, int face_class) {
    SkeletonIndex sk(t);
    require_face_class(sk, face_class);
    auto [s, f] = sk.face_rep(face_class);
    const FaceGluing& g = t.gluing(s, f);
    if (!g.glued() || g.tet == s)
        throw IllegalMove("no distinct neighbor across the triangle");

    Runner r(t);
    VChain vc = v_chain(r, s, f, "no distinct neighbor across the triangle");
    ApplyOutcome o5 = r.run23(vc.o4.new_tets[1], 0);
    int c2hold = o5.tet_map[vc.second_central];
    int h2 = o5.new_tets[2];
    ApplyOutcome o6 = r.run32(c2hold, edge_slot(2, 3));
    h2 = o6.tet_map[h2];

    MacroResult res;
    SkeletonIndex out(r.cur);
    res.landmarks["membrane"] = out.edge_class(h2, edge_slot(0, 1));
    res.landmarks["neck"] =
        out.face_class(o6.landmark_tet, o6.landmark_slot);
    res.script = std::move(r.script);
    res.output = std::move(r.cur);
    return res;
}

namespace {

// Step candidates for the final two 2-3 moves of one_four_plus_arch: legal
// faces on the given tetrahedra, deduplicated by class, in scan order.
std::vector<std::pair<int, int>> local_faces(const SkeletonIndex& sk,
                                             const std::vector<int>& tets) {
    std::vector<std::pair<int, int>> out;
    std::set<int> seen;
    for (int t : tets) {
        if (t < 0) continue;
        for (int x = 0; x < 4; ++x) {
            int fc = sk.face_class(t, x);
            if (seen.insert(fc).second && legal_23(sk, fc))
                out.push_back({t, x});
        }
    }
    return out;
}

int track_edge_class(const SkeletonIndex& before, const ApplyOutcome& o,
                     const SkeletonIndex& after, int ec) {
    for (const auto& [t, e] : before.slots_of_edge(ec))
        if (o.tet_map[t] >= 0) return after.edge_class(o.tet_map[t], e);
    return -1;
}

}  // namespace

MacroResult one_four_plus_arch(const Triangulation& t, int tet, int corner) {
    if (tet < 0 || tet >= static_cast<int>(t.size()) || corner < 0 ||
        corner > 3)
        throw IllegalMove("tetrahedron or corner out of range");

    // the defining construction: a 1-4 move, then an arch joining the new
    // vertex to the class of `corner`
    std::string target;
    {
        SkeletonIndex sk(t);
        ApplyOutcome o = apply_14(sk, tet);
        int i = corner == 0 ? 1 : 0;
        int j = corner <= 1 ? 2 : 1;
        if (j == corner) ++j;
        if (i == j) ++j;
        SkeletonIndex sk2(o.tri);
        int cone = o.new_tets[i];
        int fc = sk2.face_class(cone, j);
        int va = sk2.vertex_class(cone, i);
        int vb = sk2.vertex_class(cone, corner);
        if (!legal_arch(sk2, fc, va, vb))
            throw IllegalMove("arch not insertable after the 1-4 move");
        target = canonical_signature(insert_arch(sk2, fc, va, vb).tri);
    }

    bool any_face = false;
    // deterministic search over the transcription's free choices, nearest
    // variants first; every candidate chain is 2-3/3-2 only, so a signature
    // match certifies the result
    for (int f = 0; f < 4; ++f) {
        const FaceGluing& g = t.gluing(tet, f);
        if (!g.glued() || g.tet == tet) continue;
        any_face = true;
        SkeletonIndex sk1(t);
        ApplyOutcome o1 = apply_23(sk1, sk1.face_class(tet, f));
        SkeletonIndex skA(o1.tri);
        int c1 = skA.edge_class(o1.new_tets[0], edge_slot(2, 3));
        for (const auto& [t2, x2] : local_faces(skA, o1.new_tets)) {
            ApplyOutcome o2 = apply_23(skA, skA.face_class(t2, x2));
            SkeletonIndex skB(o2.tri);
            int c1b = track_edge_class(skA, o2, skB, c1);
            if (c1b < 0) continue;
            int c2 = skB.edge_class(o2.new_tets[0], edge_slot(2, 3));
            std::vector<int> l2 = o2.new_tets;
            for (int x : o1.new_tets)
                if (o2.tet_map[x] >= 0) l2.push_back(o2.tet_map[x]);
            for (const auto& [t3, x3] : local_faces(skB, l2)) {
                ApplyOutcome o3 = apply_23(skB, skB.face_class(t3, x3));
                SkeletonIndex skC(o3.tri);
                int c1c = track_edge_class(skB, o3, skC, c1b);
                int c2c = track_edge_class(skB, o3, skC, c2);
                if (c1c < 0 || c2c < 0 || !legal_32(skC, c1c)) continue;
                auto c1rep = skC.edge_rep(c1c);
                ApplyOutcome o4 = apply_32(skC, c1c);
                SkeletonIndex skD(o4.tri);
                int c2d = track_edge_class(skC, o4, skD, c2c);
                if (c2d < 0) continue;
                std::vector<int> l4 = {o4.new_tets[0], o4.new_tets[1]};
                for (int x : o3.new_tets)
                    if (o4.tet_map[x] >= 0) l4.push_back(o4.tet_map[x]);
                std::vector<std::pair<int, int>> ev5s;
                {
                    std::set<int> seen;
                    int canon = skD.face_class(o4.new_tets[1], 0);
                    if (legal_23(skD, canon)) {
                        ev5s.push_back({o4.new_tets[1], 0});
                        seen.insert(canon);
                    }
                    for (auto [t5, x5] : local_faces(skD, l4)) {
                        if (seen.insert(skD.face_class(t5, x5)).second)
                            ev5s.push_back({t5, x5});
                    }
                }
                for (const auto& [t5, x5] : ev5s) {
                    ApplyOutcome o5 = apply_23(skD, skD.face_class(t5, x5));
                    SkeletonIndex skE(o5.tri);
                    int c2e = track_edge_class(skD, o5, skE, c2d);
                    if (c2e < 0 || !legal_32(skE, c2e)) continue;
                    auto c2rep = skE.edge_rep(c2e);
                    ApplyOutcome o6 = apply_32(skE, c2e);
                    SkeletonIndex skF(o6.tri);
                    std::vector<int> l6 = {o6.new_tets[0], o6.new_tets[1]};
                    for (int x : o5.new_tets)
                        if (o6.tet_map[x] >= 0) l6.push_back(o6.tet_map[x]);
                    for (const auto& [t7, x7] : local_faces(skF, l6)) {
                        ApplyOutcome o7 =
                            apply_23(skF, skF.face_class(t7, x7));
                        SkeletonIndex skG(o7.tri);
                        std::vector<int> l7 = o7.new_tets;
                        for (int x : l6)
                            if (o7.tet_map[x] >= 0) l7.push_back(o7.tet_map[x]);
                        for (const auto& [t8, x8] : local_faces(skG, l7)) {
                            ApplyOutcome o8 =
                                apply_23(skG, skG.face_class(t8, x8));
                            if (canonical_signature(o8.tri) != target)
                                continue;
                            MacroResult res;
                            res.script = {
                                {MoveEvent::Kind::F23, tet,
                                 static_cast<std::uint8_t>(f), 0, 0},
                                {MoveEvent::Kind::F23, t2,
                                 static_cast<std::uint8_t>(x2), 0, 0},
                                {MoveEvent::Kind::F23, t3,
                                 static_cast<std::uint8_t>(x3), 0, 0},
                                {MoveEvent::Kind::E32, c1rep.first,
                                 static_cast<std::uint8_t>(c1rep.second), 0,
                                 0},
                                {MoveEvent::Kind::F23, t5,
                                 static_cast<std::uint8_t>(x5), 0, 0},
                                {MoveEvent::Kind::E32, c2rep.first,
                                 static_cast<std::uint8_t>(c2rep.second), 0,
                                 0},
                                {MoveEvent::Kind::F23, t7,
                                 static_cast<std::uint8_t>(x7), 0, 0},
                                {MoveEvent::Kind::F23, t8,
                                 static_cast<std::uint8_t>(x8), 0, 0}};
                            res.output = std::move(o8.tri);
                            return res;
                        }
                    }
                }
            }
        }
    }
    if (!any_face)
        throw IllegalMove("no distinct neighbor across any face");
    throw InvariantBroken(
        "no move sequence reproduces the 1-4-plus-arch construction");
}

// ---- vertex transport -------------------------------------------------------

MacroResult transport_vertex(const Triangulation& t, int vertex_class,
                             int neighbor_tet) {
    SkeletonIndex sk(t);
    if (vertex_class < 0 || vertex_class >= sk.vertex_classes())
        throw IllegalMove("vertex class out of range");
    if (neighbor_tet < 0 || neighbor_tet >= static_cast<int>(t.size()))
        throw IllegalMove("neighbor tetrahedron out of range");
    if (!legal_41(sk, vertex_class))
        throw IllegalMove("vertex is not in 4-1 configuration");
    const auto& star = sk.corners_of(vertex_class);
    for (const auto& [st, sc] : star)
        if (st == neighbor_tet)
            throw IllegalMove("neighbor is inside the vertex star");
    int ka = -1;
    for (int k = 0; k < 4; ++k) {
        const FaceGluing& g = t.gluing(star[k].first, star[k].second);
        if (g.glued() && g.tet == neighbor_tet) {
            ka = k;
            break;
        }
    }
    if (ka < 0)
        throw IllegalMove("tetrahedra do not share a face");

    auto [taua, cora] = star[ka];
    int k0 = ka == 0 ? 1 : 0;
    auto [tau0, cor0] = star[k0];
    // the coarse corner opposite the shared face sits, inside tau0, across
    // the face glued to tau_a
    int x = -1;
    for (int y = 0; y < 4; ++y) {
        if (y == cor0) continue;
        const FaceGluing& g = t.gluing(tau0, y);
        if (g.glued() && g.tet == taua) {
            if (x >= 0) throw IllegalMove("vertex star is degenerate");
            x = y;
        }
    }
    if (x < 0) throw IllegalMove("vertex star is degenerate");

    Runner r(t);
    ApplyOutcome o1 =
        r.run32(tau0, edge_slot(cor0, x),
                "the three tetrahedra incident to this edge are distinct");
    int wcur = -1;
    {
        SkeletonIndex mid(r.cur);
        int wc = mid.vertex_class(o1.tet_map[taua], cora);
        wcur = mid.vertex_class(o1.new_tets[0], 3) == wc ? o1.new_tets[0]
                                                         : o1.new_tets[1];
    }
    int source = o1.new_tets[0] == wcur ? o1.new_tets[1] : o1.new_tets[0];
    ApplyOutcome o2 =
        r.run23(o1.tet_map[taua], cora,
                "the two tetrahedra incident to the face are distinct");

    MacroResult res;
    SkeletonIndex out(r.cur);
    int w = out.vertex_class(o2.tet_map[wcur], 3);
    if (!legal_41(out, w))
        throw InvariantBroken("vertex not in 4-1 configuration after move");
    res.landmarks["vertex"] = w;
    res.landmarks["source tet"] = o2.tet_map[source];
    res.script = std::move(r.script);
    res.output = std::move(r.cur);
    return res;
}

}  // namespace triflip
