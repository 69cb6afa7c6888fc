#include "triflip/rewriter.hpp"

#include <algorithm>
#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "relocate.hpp"
#include "triflip/moves.hpp"
#include "triflip/skeleton.hpp"
#include "triflip/triangulation.hpp"

namespace triflip {
namespace {

using reloc::Frame23;
using reloc::Runner;
using reloc::Star41View;
using reloc::Tracked;

bool contains(const std::vector<int>& xs, int x) {
    return std::find(xs.begin(), xs.end(), x) != xs.end();
}

// Pre-move analysis of one event: its frame, the face classes it deletes,
// and the surviving boundary slots of its support, sorted ascending.
struct EventView {
    MoveEvent::Kind kind = MoveEvent::Kind::F23;
    Frame23 fr;
    SkeletonIndex::EdgeRing ring;
    int sigma = -1;
    Star41View st;
    std::vector<int> dead;
    std::vector<std::pair<int, int>> boundary;
};

EventView analyze_event(const Triangulation& t, const SkeletonIndex& sk,
                        const MoveEvent& ev) {
    if (ev.tet < 0 || ev.tet >= static_cast<int>(t.size()))
        throw IllegalMove("event tetrahedron out of range");
    EventView v;
    v.kind = ev.kind;
    auto finish = [&](std::vector<std::pair<int, int>> cand) {
        std::sort(cand.begin(), cand.end());
        cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
        for (auto s : cand)
            if (!contains(v.dead, sk.face_class(s.first, s.second)))
                v.boundary.push_back(s);
    };
    switch (ev.kind) {
        case MoveEvent::Kind::F23: {
            if (ev.slot > 3) throw IllegalMove("face slot out of range");
            int fc = sk.face_class(ev.tet, ev.slot);
            if (!legal_23(sk, fc)) throw IllegalMove("2-3 move blocked");
            v.fr = reloc::frame23(t, sk, fc);
            v.dead = {fc};
            std::vector<std::pair<int, int>> cand;
            for (int x = 0; x < 4; ++x) {
                if (x != v.fr.f) cand.push_back({v.fr.s, x});
                if (x != v.fr.f2) cand.push_back({v.fr.s2, x});
            }
            finish(std::move(cand));
            break;
        }
        case MoveEvent::Kind::E32: {
            if (ev.slot > 5) throw IllegalMove("edge slot out of range");
            int ec = sk.edge_class(ev.tet, ev.slot);
            if (!legal_32(sk, ec)) throw IllegalMove("3-2 move blocked");
            v.ring = sk.edge_ring(ec);
            std::vector<std::pair<int, int>> cand;
            for (const auto& en : v.ring.entries) {
                int wall = sk.face_class(en.tet, en.enter_face);
                if (!contains(v.dead, wall)) v.dead.push_back(wall);
                cand.push_back({en.tet, en.u});
                cand.push_back({en.tet, en.v});
            }
            std::sort(v.dead.begin(), v.dead.end());
            finish(std::move(cand));
            break;
        }
        case MoveEvent::Kind::V14:
            if (!legal_14(sk, ev.tet)) throw IllegalMove("1-4 move blocked");
            v.sigma = ev.tet;
            break;
        case MoveEvent::Kind::V41: {
            if (ev.slot > 3) throw IllegalMove("corner slot out of range");
            int vc = sk.vertex_class(ev.tet, ev.slot);
            if (!legal_41(sk, vc)) throw IllegalMove("4-1 move blocked");
            v.st = reloc::star41_view(t, sk, vc);
            std::vector<std::pair<int, int>> cand;
            for (int k = 0; k < 4; ++k) {
                for (int x = 0; x < 4; ++x) {
                    if (x == v.st.cor[k]) continue;
                    int wall = sk.face_class(v.st.tau[k], x);
                    if (!contains(v.dead, wall)) v.dead.push_back(wall);
                }
                cand.push_back({v.st.tau[k], v.st.cor[k]});
            }
            std::sort(v.dead.begin(), v.dead.end());
            finish(std::move(cand));
            break;
        }
        case MoveEvent::Kind::Arch:
            throw PreconditionViolated("arch events do not transport marks");
    }
    return v;
}

std::pair<int, int> face_after(const EventView& v, const ApplyOutcome& o,
                               std::pair<int, int> s) {
    switch (v.kind) {
        case MoveEvent::Kind::F23:
            return reloc::face_after_23(v.fr, o, s.first, s.second);
        case MoveEvent::Kind::E32:
            return reloc::face_after_32(v.ring, o, s.first, s.second);
        case MoveEvent::Kind::V14:
            return reloc::face_after_14(v.sigma, o, s.first, s.second);
        default:
            return reloc::face_after_41(v.st, o, s.first, s.second);
    }
}

std::pair<int, int> corner_after(const EventView& v, const Triangulation& pre,
                                 const ApplyOutcome& o,
                                 std::pair<int, int> s) {
    switch (v.kind) {
        case MoveEvent::Kind::F23:
            return reloc::corner_after_23(v.fr, o, s.first, s.second);
        case MoveEvent::Kind::E32:
            return reloc::corner_after_32(v.ring, o, s.first, s.second);
        case MoveEvent::Kind::V14:
            return reloc::corner_after_14(v.sigma, o, s.first, s.second);
        default:
            return reloc::corner_after_41(v.st, pre, o, s.first, s.second);
    }
}

bool slot_has_class(const SkeletonIndex& sk, std::pair<int, int> s, int cls) {
    for (int c = 0; c < 4; ++c)
        if (c != s.second && sk.vertex_class(s.first, c) == cls) return true;
    return false;
}

// Least boundary slot whose triangle carries both vertex classes.
std::pair<int, int> pick_boundary(const SkeletonIndex& sk, const EventView& v,
                                  int ca, int cb) {
    for (auto s : v.boundary)
        if (slot_has_class(sk, s, ca) && slot_has_class(sk, s, cb)) return s;
    throw InvariantBroken("no boundary triangle carries the mark's vertices");
}

}  // namespace

MarkedTriangulation transport_pillow_mark(const MarkedTriangulation& m,
                                          const MoveEvent& ev) {
    if (!m.pillow)
        throw PreconditionViolated("no pillow mark to transport");
    if (m.arch)
        throw PreconditionViolated("cannot transport a pillow mark past an arch mark");
    SkeletonIndex sk(m.tri);
    int fc = m.pillow->face_class;
    if (fc < 0 || fc >= sk.face_classes())
        throw PreconditionViolated("marked triangle does not exist");
    EventView v = analyze_event(m.tri, sk, ev);
    std::pair<int, int> slot = sk.face_rep(fc);
    if (contains(v.dead, fc)) {
        if (v.boundary.empty())
            throw InvariantBroken("event leaves no boundary triangle for the mark");
        slot = v.boundary.front();
    }
    ApplyOutcome o = apply_event(m.tri, ev);
    auto [t2, x2] = face_after(v, o, slot);
    SkeletonIndex sk2(o.tri);
    MarkedTriangulation out;
    out.tri = std::move(o.tri);
    out.pillow = PillowMark{sk2.face_class(t2, x2)};
    return out;
}

MarkedTriangulation transport_arch_mark(const MarkedTriangulation& m,
                                        const MoveEvent& ev) {
    if (!m.arch)
        throw PreconditionViolated("no arch mark to transport");
    if (m.pillow)
        throw PreconditionViolated("cannot transport an arch mark past a pillow mark");
    if (ev.kind != MoveEvent::Kind::F23 && ev.kind != MoveEvent::Kind::E32)
        throw PreconditionViolated("arch marks transport through 2-3 and 3-2 events only");
    SkeletonIndex sk(m.tri);
    const ArchMark& am = *m.arch;
    if (am.face_class < 0 || am.face_class >= sk.face_classes())
        throw PreconditionViolated("marked triangle does not exist");
    std::pair<int, int> rep = sk.face_rep(am.face_class);
    if (am.va == am.vb || !slot_has_class(sk, rep, am.va) ||
        !slot_has_class(sk, rep, am.vb))
        throw PreconditionViolated("arch mark vertices must be distinct classes of the marked triangle");
    if (!sk.vertex_material(am.va) && !sk.vertex_material(am.vb))
        throw PreconditionViolated("arch mark must involve a material vertex");

    EventView v = analyze_event(m.tri, sk, ev);
    bool dies = contains(v.dead, am.face_class);
    std::pair<int, int> slot = rep;
    int nva = am.va, nvb = am.vb;
    if (dies && v.kind == MoveEvent::Kind::F23) {
        // the dying triangle's pair survives on a boundary triangle sharing it
        slot = pick_boundary(sk, v, nva, nvb);
    } else if (dies) {
        // which ring crossing carries the mark, and the classes at its poles
        int wj = -1;
        for (int j = 0; j < 3 && wj < 0; ++j)
            if (sk.face_class(v.ring.entries[j].tet,
                              v.ring.entries[j].enter_face) == am.face_class)
                wj = j;
        if (wj < 0) throw InvariantBroken("dying mark not found on the edge ring");
        const auto& en = v.ring.entries[wj];
        int pu = sk.vertex_class(en.tet, en.u);
        int pv = sk.vertex_class(en.tet, en.v);
        bool polar = pu != pv && ((am.va == pu && am.vb == pv) ||
                                  (am.va == pv && am.vb == pu));
        if (!polar) {
            slot = pick_boundary(sk, v, nva, nvb);
        } else {
            // both ends polar: reconnect through the equator, keeping the
            // material pole; if every equator vertex equals that pole, join
            // its equatorial copy to the other pole instead
            int north, south;
            if (sk.vertex_material(pu)) {
                north = pu;
                south = pv;
            } else if (sk.vertex_material(pv)) {
                north = pv;
                south = pu;
            } else {
                throw InvariantBroken("no relocation shares a material vertex");
            }
            int pick = -1;
            for (int j = 0; j < 3 && pick < 0; ++j) {
                const auto& ej = v.ring.entries[j];
                int exl = 6 - ej.u - ej.v - ej.enter_face;
                if (sk.vertex_class(ej.tet, exl) != north) pick = j;
            }
            if (pick >= 0) {
                const auto& ej = v.ring.entries[pick];
                int exl = 6 - ej.u - ej.v - ej.enter_face;
                nva = sk.vertex_class(ej.tet, exl);
                nvb = north;
            } else {
                nva = north;
                nvb = south;
            }
            slot = pick_boundary(sk, v, nva, nvb);
        }
    }

    // first corner slots on the chosen triangle for each class of the pair
    int ca = -1, cb = -1;
    for (int c = 0; c < 4; ++c) {
        if (c == slot.second) continue;
        int cls = sk.vertex_class(slot.first, c);
        if (ca < 0 && cls == nva) ca = c;
        if (cb < 0 && cls == nvb) cb = c;
    }
    if (ca < 0 || cb < 0)
        throw InvariantBroken("relocated mark lost a vertex");

    ApplyOutcome o = apply_event(m.tri, ev);
    auto [ft, fx] = face_after(v, o, slot);
    auto [at, ac] = corner_after(v, m.tri, o, {slot.first, ca});
    auto [bt, bc] = corner_after(v, m.tri, o, {slot.first, cb});
    SkeletonIndex sk2(o.tri);
    ArchMark out{sk2.face_class(ft, fx), sk2.vertex_class(at, ac),
                 sk2.vertex_class(bt, bc)};
    if (out.va == out.vb ||
        (!sk2.vertex_material(out.va) && !sk2.vertex_material(out.vb)))
        throw InvariantBroken("transported arch mark lost its invariants");
    if (dies) {
        // old and new marks must share a material vertex
        auto fwd = [&](int cls) {
            auto s0 = sk.corners_of(cls).front();
            auto [t2, c2] = corner_after(v, m.tri, o, s0);
            return sk2.vertex_class(t2, c2);
        };
        bool shared = false;
        for (int cls : {am.va, am.vb}) {
            int img = fwd(cls);
            if ((img == out.va || img == out.vb) && sk2.vertex_material(img))
                shared = true;
        }
        if (!shared)
            throw InvariantBroken("relocated arch mark does not share a material vertex");
    }
    MarkedTriangulation res;
    res.tri = std::move(o.tri);
    res.arch = out;
    return res;
}

// ---- floor-preserving rewrite ----------------------------------------------
//
// The rewritten script shadows the original: alongside each original state
// T_i it maintains W_i = T_i with one triangular pillow parked on a marked
// triangle, and a correspondence sending tet t of T_i to tet sh.tet[t] of
// W_i with labels mapped by sh.perm[t]. Every gluing of T_i off the marked
// triangle is mirrored exactly in W_i; the pillow sits between the two sides
// of the marked one. Each original event is re-run on its image; when an
// event would delete the marked triangle the pillow first re-parks on a
// surviving boundary triangle (build the new pillow, then unbuild the old,
// so the count never drops).

namespace {

struct Shadow {
    std::vector<int> tet;
    std::vector<Perm4> perm;
};

// Full correspondence check; the marked triangle's two sides are exempt.
void validate_shadow(const Triangulation& to, const Triangulation& tw,
                     const Shadow& sh, const std::pair<int, int>* mark) {
    std::pair<int, int> m1{-1, -1}, m2{-1, -1};
    if (mark) {
        m1 = *mark;
        const FaceGluing& g = to.gluing(m1.first, m1.second);
        if (g.glued()) m2 = {g.tet, g.face};
    }
    for (int t = 0; t < static_cast<int>(to.size()); ++t)
        for (int x = 0; x < 4; ++x) {
            if ((t == m1.first && x == m1.second) ||
                (t == m2.first && x == m2.second))
                continue;
            const FaceGluing& g = to.gluing(t, x);
            if (!g.glued()) continue;
            const FaceGluing& gw = tw.gluing(sh.tet[t], sh.perm[t][x]);
            Perm4 want = sh.perm[g.tet] * g.perm * sh.perm[t].inverse();
            if (!gw.glued() || gw.tet != sh.tet[g.tet] ||
                gw.face != sh.perm[g.tet][g.face] || gw.perm != want)
                throw InvariantBroken("pillow correspondence broken");
        }
}

// Builds a triangular pillow on the working triangulation's face (wt, wf)
// and updates the correspondence. Returns the tracker id of the pillow's
// interior vertex corner.
int insert_pillow(Runner& rw, Shadow& sh, int wt, int wf) {
    SkeletonIndex sk(rw.cur);
    int fc = sk.face_class(wt, wf);
    auto [host, hf] = sk.face_rep(fc);
    if (!rw.cur.gluing(host, hf).glued())
        throw IllegalMove("pillow target is not interior");
    int horig = -1;
    for (int t = 0; t < static_cast<int>(sh.tet.size()); ++t)
        if (sh.tet[t] == host) horig = t;
    if (horig < 0) throw InvariantBroken("pillow host escaped the correspondence");

    // track the host's other faces to recover its rebuilt labeling
    int labels[3], trk[3], n = 0;
    for (int x = 0; x < 4; ++x) {
        if (x == hf) continue;
        labels[n] = x;
        trk[n] = rw.track(Tracked::Face, host, x);
        ++n;
    }
    ApplyOutcome o1 = rw.run14(host);
    int wreg = rw.track(Tracked::Corner, o1.new_tets[hf], hf);
    // collapse the edge from the new vertex to the host's corner hf; the
    // three cones other than cone hf ring it
    int j = hf == 0 ? 1 : 0;
    ApplyOutcome o2 = rw.run32(o1.new_tets[j], edge_slot(j, hf));

    auto [r0, x0] = rw.at(trk[0]);
    auto [r1, x1] = rw.at(trk[1]);
    auto [r2, x2] = rw.at(trk[2]);
    if (r0 != r1 || r1 != r2)
        throw InvariantBroken("pillow host was not rebuilt whole");
    Perm4 rebuild;
    rebuild.im[hf] = 3;
    rebuild.im[labels[0]] = static_cast<std::uint8_t>(x0);
    rebuild.im[labels[1]] = static_cast<std::uint8_t>(x1);
    rebuild.im[labels[2]] = static_cast<std::uint8_t>(x2);
    if (!rebuild.is_valid())
        throw InvariantBroken("pillow host labeling is not a permutation");
    for (int t = 0; t < static_cast<int>(sh.tet.size()); ++t) {
        if (t == horig) continue;
        int w1 = o1.tet_map[sh.tet[t]];
        int w2 = w1 < 0 ? -1 : o2.tet_map[w1];
        if (w2 < 0) throw InvariantBroken("image tetrahedron lost building a pillow");
        sh.tet[t] = w2;
    }
    sh.tet[horig] = r0;
    sh.perm[horig] = rebuild * sh.perm[horig];
    rw.drop(trk[0]);
    rw.drop(trk[1]);
    rw.drop(trk[2]);
    return wreg;
}

// Unbuilds the pillow whose interior vertex is tracked by wreg, healing the
// marked triangle and updating the correspondence.
void remove_pillow(Runner& rw, Shadow& sh, int wreg) {
    auto [pt, pc] = rw.at(wreg);
    SkeletonIndex sk(rw.cur);
    int w = sk.vertex_class(pt, pc);
    const auto& cw = sk.corners_of(w);
    if (cw.size() != 2 || cw[0].first == cw[1].first)
        throw InvariantBroken("pillow vertex star degenerated");
    auto [q1, c1] = cw[0];
    // the face opposite the pillow vertex is the outer face; its partner is
    // the image tetrahedron that gets torn apart and rebuilt
    const FaceGluing& g = rw.cur.gluing(q1, c1);
    if (!g.glued() || g.tet == q1 || g.tet == cw[1].first)
        throw InvariantBroken("pillow outer face misglued");
    int xt = g.tet, xf = g.face;
    int xorig = -1;
    for (int t = 0; t < static_cast<int>(sh.tet.size()); ++t)
        if (sh.tet[t] == xt) xorig = t;
    if (xorig < 0) throw InvariantBroken("pillow neighbor escaped the correspondence");

    int labels[3], trk[3], n = 0;
    for (int y = 0; y < 4; ++y) {
        if (y == xf) continue;
        labels[n] = y;
        trk[n] = rw.track(Tracked::Face, xt, y);
        ++n;
    }
    ApplyOutcome o1 = rw.run23(q1, c1);
    auto [wt2, wc2] = rw.at(wreg);
    rw.drop(wreg);
    ApplyOutcome o2 = rw.run41(wt2, wc2);

    auto [r0, y0] = rw.at(trk[0]);
    auto [r1, y1] = rw.at(trk[1]);
    auto [r2, y2] = rw.at(trk[2]);
    if (r0 != o2.new_tets[0] || r1 != r0 || r2 != r0)
        throw InvariantBroken("pillow neighbor was not rebuilt whole");
    Perm4 rebuild;
    rebuild.im[labels[0]] = static_cast<std::uint8_t>(y0);
    rebuild.im[labels[1]] = static_cast<std::uint8_t>(y1);
    rebuild.im[labels[2]] = static_cast<std::uint8_t>(y2);
    rebuild.im[xf] = static_cast<std::uint8_t>(6 - y0 - y1 - y2);
    if (!rebuild.is_valid())
        throw InvariantBroken("pillow neighbor labeling is not a permutation");
    for (int t = 0; t < static_cast<int>(sh.tet.size()); ++t) {
        if (t == xorig) continue;
        int w1 = o1.tet_map[sh.tet[t]];
        int w2 = w1 < 0 ? -1 : o2.tet_map[w1];
        if (w2 < 0) throw InvariantBroken("image tetrahedron lost removing a pillow");
        sh.tet[t] = w2;
    }
    sh.tet[xorig] = o2.new_tets[0];
    sh.perm[xorig] = rebuild * sh.perm[xorig];
    rw.drop(trk[0]);
    rw.drop(trk[1]);
    rw.drop(trk[2]);
}

// Re-runs one original event on its image and rebuilds the correspondence
// for the event's output tetrahedra.
Shadow parallel_event(const EventView& v, const ApplyOutcome& oo, Runner& rw,
                      const Shadow& sh) {
    Shadow ns;
    ns.tet.assign(oo.tri.size(), -1);
    ns.perm.assign(oo.tri.size(), Perm4());
    auto carry = [&](int torig) {
        int nt = oo.tet_map[torig];
        if (nt < 0) throw InvariantBroken("survivor map broken");
        return nt;
    };
    switch (v.kind) {
        case MoveEvent::Kind::F23: {
            const Frame23& fo = v.fr;
            int ws = sh.tet[fo.s];
            int wface = sh.perm[fo.s][fo.f];
            SkeletonIndex skw(rw.cur);
            Frame23 fw = reloc::frame23(rw.cur, skw, skw.face_class(ws, wface));
            bool flip = !(fw.s == ws && fw.f == wface);
            if (flip && !(fw.s == sh.tet[fo.s2] && fw.f == sh.perm[fo.s2][fo.f2]))
                throw InvariantBroken("2-3 image frame mismatch");
            ApplyOutcome ow = rw.run23(ws, wface, "2-3 image move blocked");
            for (int t = 0; t < static_cast<int>(sh.tet.size()); ++t) {
                if (t == fo.s || t == fo.s2) continue;
                int nt = carry(t);
                ns.tet[nt] = ow.tet_map[sh.tet[t]];
                ns.perm[nt] = sh.perm[t];
            }
            // match each new tet by where its equator pair lands in the image
            Perm4 chi = flip ? sh.perm[fo.s2] * fo.p : sh.perm[fo.s];
            for (int i = 0; i < 3; ++i) {
                int ra = fw.eqpos(chi[fo.eq[Frame23::pa[i]]]);
                int rb = fw.eqpos(chi[fo.eq[Frame23::pb[i]]]);
                int lo = std::min(ra, rb), hi = std::max(ra, rb);
                int k = (lo == 0 && hi == 1) ? 0 : lo == 0 ? 1 : 2;
                int l0 = ra == Frame23::pa[k] ? 0 : 1;
                int l1 = rb == Frame23::pa[k] ? 0 : 1;
                if (l0 == l1) throw InvariantBroken("2-3 image equator mismatch");
                ns.tet[oo.new_tets[i]] = ow.new_tets[k];
                ns.perm[oo.new_tets[i]] =
                    flip ? Perm4(l0, l1, 3, 2) : Perm4(l0, l1, 2, 3);
            }
            break;
        }
        case MoveEvent::Kind::E32: {
            const auto& ro = v.ring;
            const auto& e0 = ro.entries[0];
            int wt0 = sh.tet[e0.tet];
            int wu0 = sh.perm[e0.tet][e0.u], wv0 = sh.perm[e0.tet][e0.v];
            SkeletonIndex skw(rw.cur);
            auto rwng = skw.edge_ring(skw.edge_class(wt0, edge_slot(wu0, wv0)));
            if (rwng.entries.size() != 3 || !rwng.closes)
                throw InvariantBroken("3-2 image ring mismatch");
            auto widx = [&](int wtet) {
                for (int k = 0; k < 3; ++k)
                    if (rwng.entries[k].tet == wtet) return k;
                return -1;
            };
            int k0 = widx(sh.tet[ro.entries[0].tet]);
            int k1 = widx(sh.tet[ro.entries[1].tet]);
            int k2 = widx(sh.tet[ro.entries[2].tet]);
            if (k0 < 0 || k1 < 0 || k2 < 0)
                throw InvariantBroken("3-2 image ring mismatch");
            int d = k1 == (k0 + 1) % 3 ? 1 : 2;
            if (k1 != (k0 + d) % 3 || k2 != (k0 + 2 * d) % 3)
                throw InvariantBroken("3-2 image ring order mismatch");
            bool pole_flip;
            if (wu0 == rwng.entries[k0].u)
                pole_flip = false;
            else if (wu0 == rwng.entries[k0].v)
                pole_flip = true;
            else
                throw InvariantBroken("3-2 image pole mismatch");
            ApplyOutcome ow =
                rw.run32(wt0, edge_slot(wu0, wv0), "3-2 image move blocked");
            for (int t = 0; t < static_cast<int>(sh.tet.size()); ++t) {
                bool ring_tet = false;
                for (int j = 0; j < 3; ++j)
                    if (ro.entries[j].tet == t) ring_tet = true;
                if (ring_tet) continue;
                int nt = carry(t);
                ns.tet[nt] = ow.tet_map[sh.tet[t]];
                ns.perm[nt] = sh.perm[t];
            }
            // equator labels of the merged pair, matched entry by entry
            int lbl[4] = {-1, -1, -1, 3};
            for (int j = 0; j < 3; ++j) {
                const auto& en = ro.entries[j];
                int exl = 6 - en.u - en.v - en.enter_face;
                int k = (k0 + d * j) % 3;
                const auto& wn = rwng.entries[k];
                int wexl = 6 - wn.u - wn.v - wn.enter_face;
                int wvx = sh.perm[en.tet][exl];
                int wl;
                if (wvx == wexl)
                    wl = (k + 1) % 3;
                else if (wvx == wn.enter_face)
                    wl = (k + 2) % 3;
                else
                    throw InvariantBroken("3-2 image equator mismatch");
                int upole = sh.perm[en.tet][en.u];
                if (upole != (pole_flip ? wn.v : wn.u))
                    throw InvariantBroken("3-2 image pole order mismatch");
                lbl[(j + 1) % 3] = wl;
            }
            Perm4 phi(lbl[0], lbl[1], lbl[2], 3);
            if (!phi.is_valid())
                throw InvariantBroken("3-2 image labeling is not a permutation");
            ns.tet[oo.new_tets[0]] = ow.new_tets[pole_flip ? 1 : 0];
            ns.perm[oo.new_tets[0]] = phi;
            ns.tet[oo.new_tets[1]] = ow.new_tets[pole_flip ? 0 : 1];
            ns.perm[oo.new_tets[1]] = phi;
            break;
        }
        case MoveEvent::Kind::V14: {
            int wsig = sh.tet[v.sigma];
            Perm4 pi = sh.perm[v.sigma];
            ApplyOutcome ow = rw.run14(wsig);
            for (int t = 0; t < static_cast<int>(sh.tet.size()); ++t) {
                if (t == v.sigma) continue;
                int nt = carry(t);
                ns.tet[nt] = ow.tet_map[sh.tet[t]];
                ns.perm[nt] = sh.perm[t];
            }
            for (int j = 0; j < 4; ++j) {
                ns.tet[oo.new_tets[j]] = ow.new_tets[pi[j]];
                ns.perm[oo.new_tets[j]] = pi;
            }
            break;
        }
        default: {
            const Star41View& sto = v.st;
            int wt = sh.tet[sto.tau[0]];
            int wc = sh.perm[sto.tau[0]][sto.cor[0]];
            SkeletonIndex skw(rw.cur);
            int vcw = skw.vertex_class(wt, wc);
            if (!legal_41(skw, vcw))
                throw InvariantBroken("4-1 image star mismatch");
            Star41View stw = reloc::star41_view(rw.cur, skw, vcw);
            ApplyOutcome ow = rw.run41(wt, wc, "4-1 image move blocked");
            int mu[4];
            for (int k = 0; k < 4; ++k) {
                mu[k] = stw.index_of(sh.tet[sto.tau[k]]);
                if (mu[k] < 0 ||
                    stw.cor[mu[k]] != sh.perm[sto.tau[k]][sto.cor[k]])
                    throw InvariantBroken("4-1 image star mismatch");
            }
            for (int t = 0; t < static_cast<int>(sh.tet.size()); ++t) {
                if (sto.index_of(t) >= 0) continue;
                int nt = carry(t);
                ns.tet[nt] = ow.tet_map[sh.tet[t]];
                ns.perm[nt] = sh.perm[t];
            }
            int psi[4];
            for (int a = 0; a < 4; ++a) {
                psi[a] = -1;
                for (int a2 = 0; a2 < 4; ++a2)
                    if (stw.cone_of[a2] == mu[sto.cone_of[a]]) psi[a] = a2;
                if (psi[a] < 0) throw InvariantBroken("4-1 image cone mismatch");
            }
            ns.tet[oo.new_tets[0]] = ow.new_tets[0];
            ns.perm[oo.new_tets[0]] = Perm4(psi[0], psi[1], psi[2], psi[3]);
            break;
        }
    }
    for (int t = 0; t < static_cast<int>(ns.tet.size()); ++t)
        if (ns.tet[t] < 0)
            throw InvariantBroken("image correspondence left a hole");
    return ns;
}

}  // namespace

MoveScript pillow_rewrite(const Triangulation& base, const MoveScript& script,
                          int k) {
    for (const MoveEvent& ev : script)
        if (ev.kind == MoveEvent::Kind::Arch)
            throw PreconditionViolated("only bistellar scripts can be rewritten");

    struct Step {
        EventView view;
        ApplyOutcome oo;
        bool sidestep = false;
        std::pair<int, int> park{-1, -1};       // where the pillow re-parks, in T_i
        std::pair<int, int> mark_pre{-1, -1};   // mark while the event fires, in T_i
        std::pair<int, int> mark_post{-1, -1};  // mark after the event, in T_{i+1}
    };
    std::vector<Step> steps;
    steps.reserve(script.size());
    std::vector<int> mats;
    {
        Triangulation cur = base;
        mats.push_back(SkeletonIndex(cur).material_vertex_count());
        for (const MoveEvent& ev : script) {
            SkeletonIndex sk(cur);
            Step s;
            s.view = analyze_event(cur, sk, ev);
            s.oo = apply_event(cur, ev);
            cur = s.oo.tri;
            mats.push_back(SkeletonIndex(cur).material_vertex_count());
            steps.push_back(std::move(s));
        }
    }
    if (*std::min_element(mats.begin(), mats.end()) >= k) return script;
    if (mats.front() != k || mats.back() != k)
        throw PreconditionViolated("dip endpoints must sit exactly on the floor");
    for (std::size_t i = 1; i + 1 < mats.size(); ++i)
        if (mats[i] != k - 1)
            throw PreconditionViolated("not a single dip; split the script at its returns to the floor");

    // chart the mark through the original states
    std::pair<int, int> mark0{-1, -1};
    {
        SkeletonIndex sk0(base);
        for (int t = 0; t < static_cast<int>(base.size()) && mark0.first < 0; ++t)
            for (int x = 0; x < 4 && mark0.first < 0; ++x)
                if (!contains(steps.front().view.dead, sk0.face_class(t, x)) &&
                    base.gluing(t, x).glued())
                    mark0 = {t, x};
        if (mark0.first < 0)
            throw InvariantBroken("no triangle survives the first event");
    }
    {
        Triangulation cur = base;
        std::pair<int, int> mark = mark0;
        for (Step& s : steps) {
            SkeletonIndex sk(cur);
            if (contains(s.view.dead, sk.face_class(mark.first, mark.second))) {
                if (s.view.boundary.empty())
                    throw InvariantBroken("event leaves no boundary triangle for the mark");
                s.sidestep = true;
                s.park = s.view.boundary.front();
                mark = s.park;
            }
            s.mark_pre = mark;
            mark = face_after(s.view, s.oo, mark);
            s.mark_post = mark;
            cur = s.oo.tri;
        }
    }

    // run the shadowed states
    Runner rw(base);
    Shadow sh;
    sh.tet.resize(base.size());
    sh.perm.assign(base.size(), Perm4());
    for (int t = 0; t < static_cast<int>(base.size()); ++t) sh.tet[t] = t;
    int wp = insert_pillow(rw, sh, sh.tet[mark0.first],
                           sh.perm[mark0.first][mark0.second]);
    {
        const Triangulation* origcur = &base;
        validate_shadow(*origcur, rw.cur, sh, &mark0);
        for (Step& s : steps) {
            if (s.sidestep) {
                int wp2 = insert_pillow(rw, sh, sh.tet[s.park.first],
                                        sh.perm[s.park.first][s.park.second]);
                remove_pillow(rw, sh, wp);
                wp = wp2;
                validate_shadow(*origcur, rw.cur, sh, &s.mark_pre);
            }
            sh = parallel_event(s.view, s.oo, rw, sh);
            validate_shadow(s.oo.tri, rw.cur, sh, &s.mark_post);
            origcur = &s.oo.tri;
        }
        remove_pillow(rw, sh, wp);
        validate_shadow(*origcur, rw.cur, sh, nullptr);
    }

    // the output must never dip below the floor
    {
        Triangulation cur = base;
        if (SkeletonIndex(cur).material_vertex_count() < k)
            throw InvariantBroken("rewritten script dips below the floor");
        for (const MoveEvent& ev : rw.script) {
            cur = apply_event(cur, ev).tri;
            if (SkeletonIndex(cur).material_vertex_count() < k)
                throw InvariantBroken("rewritten script dips below the floor");
        }
    }
    return rw.script;
}

MoveScript remove_BBB_triangles(const Triangulation& t, int vertex_class) {
    SkeletonIndex sk0(t);
    if (vertex_class < 0 || vertex_class >= sk0.vertex_classes())
        throw PreconditionViolated("vertex class out of range");
    auto count_full = [](const SkeletonIndex& sk, int v) {
        int n = 0;
        for (int fc = 0; fc < sk.face_classes(); ++fc) {
            auto [ft, fx] = sk.face_rep(fc);
            bool all = true;
            for (int c = 0; c < 4; ++c)
                if (c != fx && sk.vertex_class(ft, c) != v) all = false;
            if (all) ++n;
        }
        return n;
    };
    Runner rw(t);
    auto [vt, vc] = sk0.corners_of(vertex_class).front();
    int vreg = rw.track(Tracked::Corner, vt, vc);
    while (true) {
        SkeletonIndex sk(rw.cur);
        auto [ct, cc] = rw.at(vreg);
        int v = sk.vertex_class(ct, cc);
        int before = count_full(sk, v);
        if (before == 0) break;
        // a tetrahedron with exactly three corners at v exposes one such
        // triangle opposite its remaining corner; splitting it open there
        // trades it for three triangles that each keep that other vertex
        int pick_t = -1, pick_f = -1;
        for (int tt = 0; tt < static_cast<int>(rw.cur.size()) && pick_t < 0;
             ++tt) {
            int nv = 0, other = -1;
            for (int c = 0; c < 4; ++c) {
                if (sk.vertex_class(tt, c) == v)
                    ++nv;
                else
                    other = c;
            }
            if (nv != 3) continue;
            if (!legal_23(sk, sk.face_class(tt, other))) continue;
            pick_t = tt;
            pick_f = other;
        }
        if (pick_t < 0)
            throw InvariantBroken("triangles remain but no tetrahedron exposes one");
        rw.run23(pick_t, pick_f);
        SkeletonIndex sk2(rw.cur);
        auto [ct2, cc2] = rw.at(vreg);
        if (count_full(sk2, sk2.vertex_class(ct2, cc2)) != before - 1)
            throw InvariantBroken("split failed to retire a triangle");
    }
    return rw.script;
}

}  // namespace triflip
