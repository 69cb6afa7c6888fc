#pragma once

// Slot relocation through one elementary move, plus an event runner that
// applies moves while relocating registered cell slots. Shared by the
// composite-operation and rewriting translation units; not installed.
//
// apply_23 replaces the sides (s,f)|(s2,f2) by D0,D1,D2 labeled
// (a_i, b_i, N, S): N = s's corner f, S = s2's corner f2, (a_i,b_i) running
// over the equator pairs (eq0,eq1), (eq0,eq2), (eq1,eq2) with eq = sorted
// labels of s other than f. Old faces relocate as (s, pc_i) -> (D_i, 3) and
// (s2, p[pc_i]) -> (D_i, 2) with pc = (eq2, eq1, eq0).
//
// apply_32 replaces the ring tetrahedra of an edge by new0 = (A0,A1,A2,u),
// new1 = (A0,A1,A2,v), A_j being the equator corner opposite ring entry j;
// entry j holds its exit-face corner at label (j+1)%3 and its enter-face
// corner at (j+2)%3.
//
// apply_14 replaces sigma by cones new_tets[j], each keeping sigma's labels
// on base face j with the new vertex at label j.
//
// apply_41 reassembles the star of a degree-4 vertex into one tetrahedron:
// its face a is the outer face of star cone cone_of[a], so its vertex a is
// the one outer vertex that cone misses.
//
// The *_after helpers relocate a surviving cell slot onto the output
// triangulation; they must not be fed dying cells (the glued face of a 2-3,
// the collapsed edge of a 3-2, the 4-1 star's interior cells).

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "triflip/moves.hpp"
#include "triflip/skeleton.hpp"
#include "triflip/triangulation.hpp"

namespace triflip::reloc {

struct Frame23 {
    int s = -1, f = 0, s2 = -1, f2 = 0;
    Perm4 p;  // labels of s -> labels of s2
    std::array<int, 3> eq{};
    static constexpr int pa[3] = {0, 0, 1};
    static constexpr int pb[3] = {1, 2, 2};

    int eqpos(int lbl) const { return lbl == eq[0] ? 0 : lbl == eq[1] ? 1 : 2; }
};

inline Frame23 frame23(const Triangulation& t, const SkeletonIndex& sk, int fc) {
    Frame23 fr;
    auto [s, f] = sk.face_rep(fc);
    const FaceGluing& g = t.gluing(s, f);
    fr.s = s;
    fr.f = f;
    fr.s2 = g.tet;
    fr.f2 = g.face;
    fr.p = g.perm;
    int n = 0;
    for (int x = 0; x < 4; ++x)
        if (x != f) fr.eq[n++] = x;
    return fr;
}

inline std::pair<int, int> corner_after_23(const Frame23& fr,
                                           const ApplyOutcome& o, int t,
                                           int c) {
    if (t != fr.s && t != fr.s2) return {o.tet_map[t], c};
    bool reps = t == fr.s;
    int lbl = reps ? c : fr.p.inverse()[c];
    if (lbl == fr.f) return {o.new_tets[0], reps ? 2 : 3};
    int pos = fr.eqpos(lbl);
    for (int i = 0; i < 3; ++i) {
        if (Frame23::pa[i] == pos) return {o.new_tets[i], 0};
        if (Frame23::pb[i] == pos) return {o.new_tets[i], 1};
    }
    return {-1, -1};
}

inline std::pair<int, int> edge_after_23(const Frame23& fr,
                                         const ApplyOutcome& o, int t, int e) {
    if (t != fr.s && t != fr.s2) return {o.tet_map[t], e};
    bool reps = t == fr.s;
    int lu = reps ? kEdgeEnds[e][0] : fr.p.inverse()[kEdgeEnds[e][0]];
    int lv = reps ? kEdgeEnds[e][1] : fr.p.inverse()[kEdgeEnds[e][1]];
    if (lu == fr.f || lv == fr.f) {
        int pole = reps ? 2 : 3;
        int pos = fr.eqpos(lu == fr.f ? lv : lu);
        for (int i = 0; i < 3; ++i) {
            if (Frame23::pa[i] == pos) return {o.new_tets[i], edge_slot(pole, 0)};
            if (Frame23::pb[i] == pos) return {o.new_tets[i], edge_slot(pole, 1)};
        }
    }
    int pu = fr.eqpos(lu), pv = fr.eqpos(lv);
    if (pu > pv) std::swap(pu, pv);
    int i = (pu == 0 && pv == 1) ? 0 : pu == 0 ? 1 : 2;
    return {o.new_tets[i], edge_slot(0, 1)};
}

inline std::pair<int, int> face_after_23(const Frame23& fr,
                                         const ApplyOutcome& o, int t, int x) {
    if (t != fr.s && t != fr.s2) return {o.tet_map[t], x};
    bool reps = t == fr.s;
    int lbl = reps ? x : fr.p.inverse()[x];
    int i = 2 - fr.eqpos(lbl);  // pc_i == eq[2-i]
    return {o.new_tets[i], reps ? 3 : 2};
}

inline std::pair<int, int> corner_after_32(const SkeletonIndex::EdgeRing& r,
                                           const ApplyOutcome& o, int t,
                                           int c) {
    int j = -1;
    for (int k = 0; k < 3; ++k)
        if (r.entries[k].tet == t) j = k;
    if (j < 0) return {o.tet_map[t], c};
    const auto& en = r.entries[j];
    if (c == en.u) return {o.new_tets[0], 3};
    if (c == en.v) return {o.new_tets[1], 3};
    int exitl = 6 - en.u - en.v - en.enter_face;
    if (c == exitl) return {o.new_tets[0], (j + 1) % 3};
    return {o.new_tets[0], (j + 2) % 3};
}

inline std::pair<int, int> edge_after_32(const SkeletonIndex::EdgeRing& r,
                                         const ApplyOutcome& o, int t, int e) {
    int j = -1;
    for (int k = 0; k < 3; ++k)
        if (r.entries[k].tet == t) j = k;
    if (j < 0) return {o.tet_map[t], e};
    const auto& en = r.entries[j];
    int exitl = 6 - en.u - en.v - en.enter_face;
    auto eqlbl = [&](int c) { return c == exitl ? (j + 1) % 3 : (j + 2) % 3; };
    int a = kEdgeEnds[e][0], b = kEdgeEnds[e][1];
    if (a == en.u || b == en.u) {
        int other = a == en.u ? b : a;
        return {o.new_tets[0], edge_slot(3, eqlbl(other))};
    }
    if (a == en.v || b == en.v) {
        int other = a == en.v ? b : a;
        return {o.new_tets[1], edge_slot(3, eqlbl(other))};
    }
    return {o.new_tets[0], edge_slot((j + 1) % 3, (j + 2) % 3)};
}

inline std::pair<int, int> face_after_32(const SkeletonIndex::EdgeRing& r,
                                         const ApplyOutcome& o, int t, int x) {
    int j = -1;
    for (int k = 0; k < 3; ++k)
        if (r.entries[k].tet == t) j = k;
    if (j < 0) return {o.tet_map[t], x};
    const auto& en = r.entries[j];
    // face x omits corner x; x == u is the v-side cap, adopted by new1
    return {o.new_tets[x == en.u ? 1 : 0], j};
}

inline std::pair<int, int> corner_after_14(int sigma, const ApplyOutcome& o,
                                           int t, int c) {
    if (t != sigma) return {o.tet_map[t], c};
    return {o.new_tets[c == 0 ? 1 : 0], c};
}

inline std::pair<int, int> edge_after_14(int sigma, const ApplyOutcome& o,
                                         int t, int e) {
    if (t != sigma) return {o.tet_map[t], e};
    for (int j = 0; j < 4; ++j)
        if (j != kEdgeEnds[e][0] && j != kEdgeEnds[e][1])
            return {o.new_tets[j], e};
    return {-1, -1};
}

inline std::pair<int, int> face_after_14(int sigma, const ApplyOutcome& o,
                                         int t, int x) {
    if (t != sigma) return {o.tet_map[t], x};
    return {o.new_tets[x], x};
}

// Star data of a legal 4-1 configuration, reconstructed from the public
// index: tau/cor list the four corners of the vertex class in scan order,
// and cone_of[a] is the star index whose outer face becomes face a of the
// reassembled tetrahedron.
struct Star41View {
    std::array<int, 4> tau{}, cor{};
    std::array<int, 4> cone_of{};

    int index_of(int tet) const {
        for (int i = 0; i < 4; ++i)
            if (tau[i] == tet) return i;
        return -1;
    }
};

inline Star41View star41_view(const Triangulation& t, const SkeletonIndex& sk,
                              int vc) {
    Star41View st;
    const auto& cs = sk.corners_of(vc);
    for (int i = 0; i < 4; ++i) {
        st.tau[i] = cs[i].first;
        st.cor[i] = cs[i].second;
    }
    st.cone_of[st.cor[0]] = 0;
    for (int j = 0; j < 4; ++j) {
        if (j == st.cor[0]) continue;
        const FaceGluing& g = t.gluing(st.tau[0], j);
        for (int i = 0; i < 4; ++i)
            if (st.tau[i] == g.tet && st.cor[i] == g.perm[st.cor[0]])
                st.cone_of[j] = i;
    }
    return st;
}

inline std::pair<int, int> corner_after_41(const Star41View& st,
                                           const Triangulation& pre,
                                           const ApplyOutcome& o, int t,
                                           int c) {
    int k = st.index_of(t);
    if (k < 0) return {o.tet_map[t], c};
    // c != cor[k]: the star vertex itself dies. Face c of tau[k] is the
    // interior wall whose far cone misses this very vertex.
    const FaceGluing& g = pre.gluing(st.tau[k], c);
    int m = st.index_of(g.tet);
    for (int a = 0; a < 4; ++a)
        if (st.cone_of[a] == m) return {o.new_tets[0], a};
    return {-1, -1};
}

inline std::pair<int, int> edge_after_41(const Star41View& st,
                                         const Triangulation& pre,
                                         const ApplyOutcome& o, int t, int e) {
    int k = st.index_of(t);
    if (k < 0) return {o.tet_map[t], e};
    auto [p1, c1] = corner_after_41(st, pre, o, t, kEdgeEnds[e][0]);
    auto [p2, c2] = corner_after_41(st, pre, o, t, kEdgeEnds[e][1]);
    (void)p2;
    return {p1, edge_slot(c1, c2)};
}

inline std::pair<int, int> face_after_41(const Star41View& st,
                                         const ApplyOutcome& o, int t, int x) {
    int k = st.index_of(t);
    if (k < 0) return {o.tet_map[t], x};
    // x == cor[k]: the outer face of cone k becomes the matching new face
    for (int a = 0; a < 4; ++a)
        if (st.cone_of[a] == k) return {o.new_tets[0], a};
    return {-1, -1};
}

// ---- event runner ----------------------------------------------------------
//
// Applies elementary moves to a working triangulation, recording the script
// and relocating registered cell slots through every move.

struct Tracked {
    enum Kind : std::uint8_t { Corner, Edge, Face } kind;
    int tet;
    int slot;
    bool live = true;
};

struct Runner {
    Triangulation cur;
    MoveScript script;
    std::vector<Tracked> reg;

    explicit Runner(const Triangulation& t) : cur(t) {}

    int track(Tracked::Kind k, int tet, int slot) {
        reg.push_back({k, tet, slot, true});
        return static_cast<int>(reg.size()) - 1;
    }
    void drop(int i) { reg[i].live = false; }
    std::pair<int, int> at(int i) const { return {reg[i].tet, reg[i].slot}; }

    ApplyOutcome run23(int tet, int face, const char* why = "2-3 move blocked") {
        SkeletonIndex sk(cur);
        int fc = sk.face_class(tet, face);
        if (!legal_23(sk, fc)) throw IllegalMove(why);
        Frame23 fr = frame23(cur, sk, fc);
        ApplyOutcome o = apply_23(sk, fc);
        for (Tracked& tr : reg) {
            if (!tr.live) continue;
            auto [t2, s2] = tr.kind == Tracked::Corner
                                ? corner_after_23(fr, o, tr.tet, tr.slot)
                            : tr.kind == Tracked::Edge
                                ? edge_after_23(fr, o, tr.tet, tr.slot)
                                : face_after_23(fr, o, tr.tet, tr.slot);
            tr.tet = t2;
            tr.slot = s2;
        }
        script.push_back({MoveEvent::Kind::F23, tet,
                          static_cast<std::uint8_t>(face), 0, 0});
        cur = o.tri;
        return o;
    }

    ApplyOutcome run32(int tet, int eslot, const char* why = "3-2 move blocked") {
        SkeletonIndex sk(cur);
        int ec = sk.edge_class(tet, eslot);
        if (!legal_32(sk, ec)) throw IllegalMove(why);
        SkeletonIndex::EdgeRing ring = sk.edge_ring(ec);
        ApplyOutcome o = apply_32(sk, ec);
        for (Tracked& tr : reg) {
            if (!tr.live) continue;
            auto [t2, s2] = tr.kind == Tracked::Corner
                                ? corner_after_32(ring, o, tr.tet, tr.slot)
                            : tr.kind == Tracked::Edge
                                ? edge_after_32(ring, o, tr.tet, tr.slot)
                                : face_after_32(ring, o, tr.tet, tr.slot);
            tr.tet = t2;
            tr.slot = s2;
        }
        script.push_back({MoveEvent::Kind::E32, tet,
                          static_cast<std::uint8_t>(eslot), 0, 0});
        cur = o.tri;
        return o;
    }

    ApplyOutcome run14(int tet) {
        SkeletonIndex sk(cur);
        ApplyOutcome o = apply_14(sk, tet);
        for (Tracked& tr : reg) {
            if (!tr.live) continue;
            auto [t2, s2] = tr.kind == Tracked::Corner
                                ? corner_after_14(tet, o, tr.tet, tr.slot)
                            : tr.kind == Tracked::Edge
                                ? edge_after_14(tet, o, tr.tet, tr.slot)
                                : face_after_14(tet, o, tr.tet, tr.slot);
            tr.tet = t2;
            tr.slot = s2;
        }
        script.push_back({MoveEvent::Kind::V14, tet, 0, 0, 0});
        cur = o.tri;
        return o;
    }

    ApplyOutcome run41(int tet, int corner, const char* why = "4-1 move blocked") {
        SkeletonIndex sk(cur);
        int vc = sk.vertex_class(tet, corner);
        if (!legal_41(sk, vc)) throw IllegalMove(why);
        Star41View st = star41_view(cur, sk, vc);
        ApplyOutcome o = apply_41(sk, vc);
        for (Tracked& tr : reg) {
            if (!tr.live) continue;
            auto [t2, s2] = tr.kind == Tracked::Corner
                                ? corner_after_41(st, cur, o, tr.tet, tr.slot)
                            : tr.kind == Tracked::Edge
                                ? edge_after_41(st, cur, o, tr.tet, tr.slot)
                                : face_after_41(st, o, tr.tet, tr.slot);
            tr.tet = t2;
            tr.slot = s2;
        }
        script.push_back({MoveEvent::Kind::V41, tet,
                          static_cast<std::uint8_t>(corner), 0, 0});
        cur = o.tri;
        return o;
    }
};

}  // namespace triflip::reloc
