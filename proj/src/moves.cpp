#include "triflip/moves.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "triflip/signature.hpp"

namespace triflip {

bool operator==(const MoveEvent& a, const MoveEvent& b) {
    return a.kind == b.kind && a.tet == b.tet && a.slot == b.slot && a.ca == b.ca && a.cb == b.cb;
}

bool operator==(const ArchPattern& a, const ArchPattern& b) {
    return a.fi == b.fi && a.fj == b.fj && a.fperm == b.fperm && a.k == b.k && a.l == b.l &&
           a.alpha == b.alpha && a.beta == b.beta;
}

namespace {

Perm4 swap2(int a, int b) {
    Perm4 p;
    p.im[a] = static_cast<std::uint8_t>(b);
    p.im[b] = static_cast<std::uint8_t>(a);
    return p;
}

// Cut out `removed`, drop in `new_count` fresh tetrahedra, splice the region
// boundary back together. New tets land on the removed slots in sorted order
// (extras appended, leftover slots compacted away). Adoptions re-route each
// old boundary slot of the region to its new owner through an attach map mu:
// labels(new tet) -> labels(old tet) with mu[new face] == old face; a partner
// inside the removed set is forwarded to that slot's own adopter.
struct SurgeryPlan {
    std::vector<int> removed;  // sorted ascending, no duplicates
    int new_count = 0;
    struct InternalGlue {
        int a, fa, b;
        Perm4 p;  // labels(a) -> labels(b), p[fa] = partner face
    };
    std::vector<InternalGlue> internal_glues;
    struct Adopt {
        int old_tet, old_face;
        int nt, nf;
        Perm4 mu;
    };
    std::vector<Adopt> adoptions;
};

struct SurgeryResult {
    Triangulation tri;
    std::vector<int> tet_map;  // old -> new, -1 removed
    std::vector<int> new_ids;  // abstract new tet -> final index
};

SurgeryResult do_surgery(const Triangulation& T, const SurgeryPlan& plan) {
    const int n = static_cast<int>(T.size());
    const int r = static_cast<int>(plan.removed.size());
    const int m = plan.new_count;

    std::vector<int> newtet_at(n, -1);
    std::vector<char> removed_flag(n, 0), gone(n, 0);
    for (int k = 0; k < r; ++k) {
        removed_flag[plan.removed[k]] = 1;
        if (k < m)
            newtet_at[plan.removed[k]] = k;
        else
            gone[plan.removed[k]] = 1;
    }

    SurgeryResult res;
    res.tet_map.assign(n, -1);
    res.new_ids.assign(m, -1);
    int next = 0;
    for (int i = 0; i < n; ++i) {
        if (gone[i]) continue;
        if (newtet_at[i] >= 0)
            res.new_ids[newtet_at[i]] = next++;
        else
            res.tet_map[i] = next++;
    }
    for (int k = r; k < m; ++k) res.new_ids[k] = next++;

    Triangulation out(static_cast<std::size_t>(next));
    for (int i = 0; i < n; ++i) {
        if (removed_flag[i]) continue;
        for (int f = 0; f < 4; ++f) {
            const FaceGluing& g = T.gluing(i, f);
            if (!g.glued() || removed_flag[g.tet]) continue;
            if (g.tet < i || (g.tet == i && g.face < f)) continue;  // each pair once
            out.glue_faces(res.tet_map[i], f, res.tet_map[g.tet], g.perm);
        }
    }
    for (const auto& ig : plan.internal_glues)
        out.glue_faces(res.new_ids[ig.a], ig.fa, res.new_ids[ig.b], ig.p);

    std::vector<int> adopt_at(static_cast<std::size_t>(4) * n, -1);
    for (std::size_t ai = 0; ai < plan.adoptions.size(); ++ai) {
        const auto& ad = plan.adoptions[ai];
        adopt_at[4 * ad.old_tet + ad.old_face] = static_cast<int>(ai);
    }
    for (const auto& ad : plan.adoptions) {
        const FaceGluing& g = T.gluing(ad.old_tet, ad.old_face);
        if (!g.glued()) continue;  // boundary facet stays boundary
        Perm4 q = g.perm * ad.mu;  // labels(new tet) -> labels(old partner)
        if (!removed_flag[g.tet]) {
            out.glue_faces(res.new_ids[ad.nt], ad.nf, res.tet_map[g.tet], q);
        } else {
            int aj = adopt_at[4 * g.tet + g.face];
            if (aj < 0) throw InvariantBroken("surgery: region boundary glued into its interior");
            const auto& ad2 = plan.adoptions[aj];
            out.glue_faces(res.new_ids[ad.nt], ad.nf, res.new_ids[ad2.nt],
                           ad2.mu.inverse() * q);
        }
    }
    res.tri = std::move(out);
    return res;
}

}  // namespace

bool legal_23(const SkeletonIndex& sk, int fc) {
    if (fc < 0 || fc >= sk.face_classes()) return false;
    if (sk.face_degree(fc) != 2) return false;
    auto [t, f] = sk.face_rep(fc);
    const FaceGluing& g = sk.tri().gluing(t, f);
    return g.glued() && g.tet != t;
}

ApplyOutcome apply_23(const SkeletonIndex& sk, int fc) {
    if (!legal_23(sk, fc))
        throw IllegalMove("2-3: triangle must be interior to two distinct tetrahedra");
    const Triangulation& T = sk.tri();
    auto [s, f] = sk.face_rep(fc);
    const FaceGluing& g = T.gluing(s, f);
    const int s2 = g.tet, f2 = g.face;
    const Perm4 p = g.perm;

    int eq[3], w = 0;
    for (int d = 0; d < 4; ++d)
        if (d != f) eq[w++] = d;
    // New tets D_i around the central edge, labeled (0,1,2,3) = (a,b,N,S)
    // where {a,b} run over equator pairs and c is the leftover equator vertex.
    const int pa[3] = {eq[0], eq[0], eq[1]};
    const int pb[3] = {eq[1], eq[2], eq[2]};
    const int pc[3] = {eq[2], eq[1], eq[0]};

    SurgeryPlan plan;
    plan.removed = {std::min(s, s2), std::max(s, s2)};
    plan.new_count = 3;
    plan.internal_glues = {{0, 1, 1, Perm4()},           // shared (e0,N,S)
                           {0, 0, 2, Perm4(1, 0, 2, 3)},  // shared (e1,N,S)
                           {1, 0, 2, Perm4()}};           // shared (e2,N,S)
    for (int i = 0; i < 3; ++i) {
        Perm4 mu(pa[i], pb[i], f, pc[i]);
        Perm4 nu(p[pa[i]], p[pb[i]], p[pc[i]], f2);
        plan.adoptions.push_back({s, pc[i], i, 3, mu});
        plan.adoptions.push_back({s2, p[pc[i]], i, 2, nu});
    }

    auto sr = do_surgery(T, plan);
    ApplyOutcome out;
    out.tri = std::move(sr.tri);
    out.tet_map = std::move(sr.tet_map);
    out.new_tets = sr.new_ids;
    out.landmark_tet = sr.new_ids[0];
    out.landmark_slot = static_cast<std::uint8_t>(edge_slot(2, 3));  // the N-S edge
    out.inverse = MoveEvent{MoveEvent::Kind::E32, out.landmark_tet, out.landmark_slot, 0, 0};
    out.has_inverse = true;
    return out;
}

bool legal_32(const SkeletonIndex& sk, int ec) {
    if (ec < 0 || ec >= sk.edge_classes()) return false;
    if (sk.edge_degree(ec) != 3 || sk.edge_reversed(ec)) return false;
    auto ring = sk.edge_ring(ec);
    if (!ring.closes || ring.entries.size() != 3) return false;
    int a = ring.entries[0].tet, b = ring.entries[1].tet, c = ring.entries[2].tet;
    return a != b && a != c && b != c;
}

ApplyOutcome apply_32(const SkeletonIndex& sk, int ec) {
    if (!legal_32(sk, ec))
        throw IllegalMove("3-2: edge must be interior of degree three with three distinct tetrahedra");
    const Triangulation& T = sk.tri();
    auto ring = sk.edge_ring(ec);

    // New tets: 0 = (A0,A1,A2,N), 1 = (A0,A1,A2,S) with A_j the equator vertex
    // opposite ring tet j; in tet j the labels are A_{j+1} = exit, A_{j+2} =
    // enter, N = u, S = v.
    SurgeryPlan plan;
    plan.new_count = 2;
    plan.internal_glues = {{0, 3, 1, Perm4()}};
    for (int j = 0; j < 3; ++j) {
        const auto& en = ring.entries[j];
        const int exitl = 6 - en.u - en.v - en.enter_face;
        Perm4 mu, nu;
        mu.im[j] = en.v;
        mu.im[(j + 1) % 3] = static_cast<std::uint8_t>(exitl);
        mu.im[(j + 2) % 3] = en.enter_face;
        mu.im[3] = en.u;
        nu.im[j] = en.u;
        nu.im[(j + 1) % 3] = static_cast<std::uint8_t>(exitl);
        nu.im[(j + 2) % 3] = en.enter_face;
        nu.im[3] = en.v;
        plan.adoptions.push_back({en.tet, en.v, 0, j, mu});
        plan.adoptions.push_back({en.tet, en.u, 1, j, nu});
        plan.removed.push_back(en.tet);
    }
    std::sort(plan.removed.begin(), plan.removed.end());

    auto sr = do_surgery(T, plan);
    ApplyOutcome out;
    out.tri = std::move(sr.tri);
    out.tet_map = std::move(sr.tet_map);
    out.new_tets = sr.new_ids;
    out.landmark_tet = sr.new_ids[0];
    out.landmark_slot = 3;  // the central (A0,A1,A2) triangle
    out.inverse = MoveEvent{MoveEvent::Kind::F23, out.landmark_tet, 3, 0, 0};
    out.has_inverse = true;
    return out;
}

bool legal_14(const SkeletonIndex& sk, int tet) { return tet >= 0 && tet < sk.tet_count(); }

ApplyOutcome apply_14(const SkeletonIndex& sk, int tet) {
    if (!legal_14(sk, tet)) throw IllegalMove("1-4: no such tetrahedron");
    const Triangulation& T = sk.tri();

    // Cone tets: cone_f keeps base face f with the original labels and puts
    // the new vertex at label f; cones meet pairwise along faces through it.
    SurgeryPlan plan;
    plan.removed = {tet};
    plan.new_count = 4;
    for (int f = 0; f < 4; ++f) {
        for (int j = f + 1; j < 4; ++j) plan.internal_glues.push_back({f, j, j, swap2(f, j)});
        plan.adoptions.push_back({tet, f, f, f, Perm4()});
    }

    auto sr = do_surgery(T, plan);
    ApplyOutcome out;
    out.tri = std::move(sr.tri);
    out.tet_map = std::move(sr.tet_map);
    out.new_tets = sr.new_ids;
    out.landmark_tet = sr.new_ids[0];
    out.landmark_slot = 0;  // cone_0 holds the new vertex at label 0
    out.inverse = MoveEvent{MoveEvent::Kind::V41, out.landmark_tet, 0, 0, 0};
    out.has_inverse = true;
    return out;
}

namespace {

// The star of a degree-4 vertex, reconstructed as a coned tetrahedron
// boundary: which ring tet sits over each coarse label, plus per-tet frames
// phi: labels(tet) -> coarse labels. Nullopt when the star has any other
// shape (wrong degree, repeated tets, boundary faces, inconsistent frames).
struct Star41 {
    int tau[4], cor[4];
    int cone_of[4];  // coarse label -> index into tau
    Perm4 phi[4];
};

std::optional<Star41> analyze_41(const SkeletonIndex& sk, int vc) {
    if (vc < 0 || vc >= sk.vertex_classes()) return std::nullopt;
    const auto& corners = sk.corners_of(vc);
    if (corners.size() != 4) return std::nullopt;
    Star41 st;
    for (int i = 0; i < 4; ++i) {
        st.tau[i] = corners[i].first;
        st.cor[i] = corners[i].second;
        for (int j = 0; j < i; ++j)
            if (st.tau[j] == st.tau[i]) return std::nullopt;
    }
    const Triangulation& T = sk.tri();
    auto ring_index = [&](int tet, int corner) {
        for (int i = 0; i < 4; ++i)
            if (st.tau[i] == tet && st.cor[i] == corner) return i;
        return -1;
    };

    st.cone_of[st.cor[0]] = 0;
    st.phi[0] = Perm4();
    for (int j = 0; j < 4; ++j) {
        if (j == st.cor[0]) continue;
        const FaceGluing& g = T.gluing(st.tau[0], j);
        if (!g.glued()) return std::nullopt;
        int k = ring_index(g.tet, g.perm[st.cor[0]]);
        if (k <= 0) return std::nullopt;
        st.cone_of[j] = k;
        st.phi[k] = (g.perm * swap2(st.cor[0], j)).inverse();
    }
    int seen = 0;
    for (int a = 0; a < 4; ++a) seen |= 1 << st.cone_of[a];
    if (seen != 0xF) return std::nullopt;

    // Every interior face of the star must glue corner-to-corner and match
    // the cone pattern in coarse coordinates.
    for (int i = 0; i < 4; ++i) {
        for (int x = 0; x < 4; ++x) {
            if (x == st.cor[i]) continue;
            const FaceGluing& g = T.gluing(st.tau[i], x);
            if (!g.glued()) return std::nullopt;
            int mm = ring_index(g.tet, g.perm[st.cor[i]]);
            if (mm < 0) return std::nullopt;
            int ai = st.phi[i][st.cor[i]], am = st.phi[mm][st.cor[mm]];
            if (ai == am) return std::nullopt;
            if (st.phi[mm] * g.perm != swap2(ai, am) * st.phi[i]) return std::nullopt;
        }
    }
    return st;
}

}  // namespace

bool legal_41(const SkeletonIndex& sk, int vc) { return analyze_41(sk, vc).has_value(); }

ApplyOutcome apply_41(const SkeletonIndex& sk, int vc) {
    auto st = analyze_41(sk, vc);
    if (!st)
        throw IllegalMove("4-1: vertex star is not a coned tetrahedron boundary on four distinct tetrahedra");
    SurgeryPlan plan;
    plan.removed = {st->tau[0], st->tau[1], st->tau[2], st->tau[3]};
    std::sort(plan.removed.begin(), plan.removed.end());
    plan.new_count = 1;
    for (int a = 0; a < 4; ++a) {
        int k = st->cone_of[a];
        plan.adoptions.push_back({st->tau[k], st->cor[k], 0, a, st->phi[k].inverse()});
    }

    auto sr = do_surgery(sk.tri(), plan);
    ApplyOutcome out;
    out.tri = std::move(sr.tri);
    out.tet_map = std::move(sr.tet_map);
    out.new_tets = sr.new_ids;
    out.inverse = MoveEvent{MoveEvent::Kind::V14, sr.new_ids[0], 0, 0, 0};
    out.has_inverse = true;
    return out;
}

namespace {

ApplyOutcome apply_arch_with(const SkeletonIndex& sk, int fc, int va, int vb,
                             const ArchPattern& P) {
    const Triangulation& T = sk.tri();
    auto [s, f] = sk.face_rep(fc);
    const FaceGluing g = T.gluing(s, f);  // copied: the slot is unglued below
    int x = -1, y = -1, z = -1;
    for (int d = 0; d < 4; ++d)
        if (d != f && x < 0 && sk.vertex_class(s, d) == va) x = d;
    for (int d = 0; d < 4; ++d)
        if (d != f && d != x && y < 0 && sk.vertex_class(s, d) == vb) y = d;
    for (int d = 0; d < 4; ++d)
        if (d != f && d != x && d != y) z = d;
    if (x < 0 || y < 0) throw IllegalMove("arch: chosen vertices are not on that triangle");

    Perm4 r1(x, y, z, f);
    Perm4 r2(g.perm[x], g.perm[y], g.perm[z], g.face);
    Triangulation out = T;
    int u = out.add_tet();
    out.unglue_face(s, f);
    out.glue_faces(u, P.fi, u, P.fperm);
    out.glue_faces(u, P.k, s, r1 * P.alpha);
    out.glue_faces(u, P.l, g.tet, r2 * P.beta);

    ApplyOutcome res;
    res.tri = std::move(out);
    res.tet_map.resize(T.size());
    std::iota(res.tet_map.begin(), res.tet_map.end(), 0);
    res.new_tets = {u};
    res.has_inverse = false;
    return res;
}

// A candidate pattern is kept only if, on every reference input, the insert
// keeps the triangulation closed and valid, merges exactly the two chosen
// vertex classes (the merged link is the connected sum of the two old links),
// merges exactly one pair of old edge classes (the two triangle edges at the
// unchosen corner), and adds exactly one new edge class: a degree-1 loop at
// the unchosen corner's vertex.
bool pattern_ok(const ArchPattern& P, const Triangulation& T, int fc, int va, int vb) {
    SkeletonIndex sk(T);
    ApplyOutcome o;
    try {
        o = apply_arch_with(sk, fc, va, vb, P);
        o.tri.check_integrity();
    } catch (const Error&) {
        return false;
    }
    if (T.closed() && !o.tri.closed()) return false;
    SkeletonIndex rs(o.tri);
    if (!rs.valid()) return false;
    if (rs.vertex_classes() != sk.vertex_classes() - 1) return false;

    std::vector<int> vmap(sk.vertex_classes(), -1);
    for (int t = 0; t < static_cast<int>(T.size()); ++t)
        for (int c = 0; c < 4; ++c) {
            int oc = sk.vertex_class(t, c), nc = rs.vertex_class(t, c);
            if (vmap[oc] < 0)
                vmap[oc] = nc;
            else if (vmap[oc] != nc)
                return false;
        }
    if (vmap[va] != vmap[vb]) return false;
    for (int i = 0; i < sk.vertex_classes(); ++i)
        for (int j = i + 1; j < sk.vertex_classes(); ++j)
            if (vmap[i] == vmap[j] && !(i == std::min(va, vb) && j == std::max(va, vb)))
                return false;

    // Corner labels of the marked triangle in the representative tet.
    auto [s, f] = sk.face_rep(fc);
    int x = -1, y = -1, z = -1;
    for (int d = 0; d < 4; ++d)
        if (d != f && x < 0 && sk.vertex_class(s, d) == va) x = d;
    for (int d = 0; d < 4; ++d)
        if (d != f && d != x && y < 0 && sk.vertex_class(s, d) == vb) y = d;
    for (int d = 0; d < 4; ++d)
        if (d != f && d != x && d != y) z = d;
    const int exz = sk.edge_class(s, edge_slot(x, z));
    const int eyz = sk.edge_class(s, edge_slot(y, z));
    const int vz = sk.vertex_class(s, z);

    std::vector<int> emap(sk.edge_classes(), -1);
    for (int t = 0; t < static_cast<int>(T.size()); ++t)
        for (int e = 0; e < 6; ++e) {
            int oc = sk.edge_class(t, e), nc = rs.edge_class(t, e);
            if (emap[oc] < 0)
                emap[oc] = nc;
            else if (emap[oc] != nc)
                return false;
        }
    // Exactly one merged pair of old edge classes: the triangle edges at z.
    for (int i = 0; i < sk.edge_classes(); ++i)
        for (int j = i + 1; j < sk.edge_classes(); ++j)
            if (emap[i] == emap[j] && !(i == std::min(exz, eyz) && j == std::max(exz, eyz)))
                return false;
    if (exz == eyz || emap[exz] != emap[eyz]) return false;
    if (rs.edge_classes() != sk.edge_classes()) return false;

    // Exactly one edge class not carrying any old edge: a degree-1 loop at z.
    std::vector<char> hit(rs.edge_classes(), 0);
    for (int i = 0; i < sk.edge_classes(); ++i) hit[emap[i]] = 1;
    int fresh = -1;
    for (int c = 0; c < rs.edge_classes(); ++c)
        if (!hit[c]) {
            if (fresh >= 0) return false;
            fresh = c;
        }
    if (fresh < 0 || rs.edge_degree(fresh) != 1) return false;
    auto [fa, fb] = rs.edge_endpoints(fresh);
    if (fa != vmap[vz] || fb != vmap[vz]) return false;

    for (int v = 0; v < sk.vertex_classes(); ++v) {
        if (v == va || v == vb) continue;
        const VertexLink &la = sk.link(v), &lb = rs.link(vmap[v]);
        if (la.chi != lb.chi || la.orientable != lb.orientable || la.cls != lb.cls) return false;
    }
    if (rs.link(vmap[va]).chi != sk.link(va).chi + sk.link(vb).chi - 2) return false;
    if (rs.face_classes() != sk.face_classes() + 2) return false;
    return true;
}

}  // namespace

bool legal_arch(const SkeletonIndex& sk, int fc, int va, int vb) {
    if (fc < 0 || fc >= sk.face_classes() || sk.face_degree(fc) != 2) return false;
    if (va == vb || va < 0 || vb < 0 || va >= sk.vertex_classes() || vb >= sk.vertex_classes())
        return false;
    auto [t, f] = sk.face_rep(fc);
    bool hasa = false, hasb = false;
    for (int d = 0; d < 4; ++d) {
        if (d == f) continue;
        int c = sk.vertex_class(t, d);
        hasa |= (c == va);
        hasb |= (c == vb);
    }
    if (!hasa || !hasb) return false;
    return sk.vertex_material(va) || sk.vertex_material(vb);
}

ArchPattern arch_pattern() {
    // First survivor of derive_arch_patterns(), frozen. All survivors are
    // label-equivalent: faces 0,1 of the new tet are glued to each other by
    // the transposition (0 1); faces 2,3 take the two copies of the opened
    // triangle, matching corner assignments on both sides.
    return ArchPattern{0, 1, Perm4(1, 0, 2, 3), 2, 3, Perm4(0, 1, 3, 2), Perm4(0, 1, 2, 3)};
}

std::vector<ArchPattern> derive_arch_patterns() {
    struct Case {
        Triangulation tri;
        int fc, va, vb;
    };
    std::vector<Case> cases;

    // Reference input 1: two tetrahedra glued by the identity on all faces.
    Triangulation dt(2);
    for (int f = 0; f < 4; ++f) dt.glue_faces(0, f, 1, Perm4());
    {
        SkeletonIndex sk(dt);
        int fc = sk.face_class(0, 0);
        int cls[3] = {sk.vertex_class(0, 1), sk.vertex_class(0, 2), sk.vertex_class(0, 3)};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                if (i != j) cases.push_back({dt, fc, cls[i], cls[j]});
    }

    // Reference input 2: its 1-4 subdivision, a handful of triangle/vertex picks.
    {
        SkeletonIndex sk0(dt);
        Triangulation t5 = apply_14(sk0, 0).tri;
        SkeletonIndex sk(t5);
        int added = 0;
        for (int fc = 0; fc < sk.face_classes() && added < 8; ++fc) {
            if (sk.face_degree(fc) != 2) continue;
            auto [t, f] = sk.face_rep(fc);
            for (int d1 = 0; d1 < 4 && added < 8; ++d1)
                for (int d2 = 0; d2 < 4 && added < 8; ++d2) {
                    if (d1 == f || d2 == f || d1 == d2) continue;
                    int va = sk.vertex_class(t, d1), vb = sk.vertex_class(t, d2);
                    if (va == vb) continue;
                    cases.push_back({t5, fc, va, vb});
                    ++added;
                }
        }
    }

    std::vector<ArchPattern> found;
    for (int fi = 0; fi < 4; ++fi)
        for (int fj = fi + 1; fj < 4; ++fj)
            for (int pi = 0; pi < 24; ++pi) {
                Perm4 fperm = Perm4::from_index(pi);
                if (fperm[fi] != fj) continue;
                int rest[2], w = 0;
                for (int d = 0; d < 4; ++d)
                    if (d != fi && d != fj) rest[w++] = d;
                for (int ki = 0; ki < 2; ++ki) {
                    int k = rest[ki], l = rest[1 - ki];
                    for (int ai = 0; ai < 24; ++ai) {
                        Perm4 alpha = Perm4::from_index(ai);
                        if (alpha[k] != 3) continue;
                        for (int bi = 0; bi < 24; ++bi) {
                            Perm4 beta = Perm4::from_index(bi);
                            if (beta[l] != 3) continue;
                            ArchPattern P{static_cast<std::uint8_t>(fi),
                                          static_cast<std::uint8_t>(fj),
                                          fperm,
                                          static_cast<std::uint8_t>(k),
                                          static_cast<std::uint8_t>(l),
                                          alpha,
                                          beta};
                            bool ok = true;
                            for (const Case& c : cases)
                                if (!pattern_ok(P, c.tri, c.fc, c.va, c.vb)) {
                                    ok = false;
                                    break;
                                }
                            if (ok) found.push_back(P);
                        }
                    }
                }
            }
    return found;
}

ApplyOutcome insert_arch(const SkeletonIndex& sk, int fc, int va, int vb) {
    if (!legal_arch(sk, fc, va, vb))
        throw IllegalMove(
            "arch: needs an interior triangle carrying two distinct vertex classes, at least one with sphere link");
    return apply_arch_with(sk, fc, va, vb, arch_pattern());
}

namespace {

void validate_event_address(const Triangulation& t, const MoveEvent& ev) {
    if (ev.tet < 0 || ev.tet >= static_cast<int>(t.size()))
        throw IllegalMove("event addresses a tetrahedron out of range");
    switch (ev.kind) {
        case MoveEvent::Kind::F23:
        case MoveEvent::Kind::V41:
            if (ev.slot > 3) throw IllegalMove("event slot out of range");
            break;
        case MoveEvent::Kind::E32:
            if (ev.slot > 5) throw IllegalMove("event slot out of range");
            break;
        case MoveEvent::Kind::V14:
            break;
        case MoveEvent::Kind::Arch:
            if (ev.slot > 3 || ev.ca > 3 || ev.cb > 3 || ev.ca == ev.slot || ev.cb == ev.slot ||
                ev.ca == ev.cb)
                throw IllegalMove("arch event corners must be two distinct corners of the face");
            break;
    }
}

}  // namespace

ApplyOutcome apply_event(const Triangulation& t, const MoveEvent& ev) {
    validate_event_address(t, ev);
    SkeletonIndex sk(t);
    switch (ev.kind) {
        case MoveEvent::Kind::F23:
            return apply_23(sk, sk.face_class(ev.tet, ev.slot));
        case MoveEvent::Kind::E32:
            return apply_32(sk, sk.edge_class(ev.tet, ev.slot));
        case MoveEvent::Kind::V14:
            return apply_14(sk, ev.tet);
        case MoveEvent::Kind::V41:
            return apply_41(sk, sk.vertex_class(ev.tet, ev.slot));
        case MoveEvent::Kind::Arch: {
            int va = sk.vertex_class(ev.tet, ev.ca), vb = sk.vertex_class(ev.tet, ev.cb);
            return insert_arch(sk, sk.face_class(ev.tet, ev.slot), va, vb);
        }
    }
    throw IllegalMove("unknown event kind");
}

Triangulation replay(const Triangulation& base, const MoveScript& script) {
    Triangulation cur = base;
    for (std::size_t i = 0; i < script.size(); ++i) {
        try {
            cur = apply_event(cur, script[i]).tri;
        } catch (const IllegalMove& e) {
            throw IllegalMove("event " + std::to_string(i) + ": " + e.what());
        }
    }
    return cur;
}

std::string format_script(const Triangulation& base, const MoveScript& script, bool base_header) {
    std::ostringstream os;
    if (base_header) os << "base " << canonical_signature(base) << "\n";
    Triangulation cur = base;
    for (const MoveEvent& ev : script) {
        validate_event_address(cur, ev);
        SkeletonIndex sk(cur);
        ApplyOutcome o;
        switch (ev.kind) {
            case MoveEvent::Kind::F23: {
                int k = sk.face_class(ev.tet, ev.slot);
                os << "23 t" << k << "\n";
                o = apply_23(sk, k);
                break;
            }
            case MoveEvent::Kind::E32: {
                int k = sk.edge_class(ev.tet, ev.slot);
                os << "32 e" << k << "\n";
                o = apply_32(sk, k);
                break;
            }
            case MoveEvent::Kind::V14: {
                os << "14 T" << ev.tet << "\n";
                o = apply_14(sk, ev.tet);
                break;
            }
            case MoveEvent::Kind::V41: {
                int k = sk.vertex_class(ev.tet, ev.slot);
                os << "41 v" << k << "\n";
                o = apply_41(sk, k);
                break;
            }
            case MoveEvent::Kind::Arch: {
                int k = sk.face_class(ev.tet, ev.slot);
                int va = sk.vertex_class(ev.tet, ev.ca), vb = sk.vertex_class(ev.tet, ev.cb);
                os << "arch t" << k << " v" << va << " v" << vb << "\n";
                o = insert_arch(sk, k, va, vb);
                break;
            }
        }
        cur = std::move(o.tri);
    }
    return os.str();
}

namespace {

int class_arg(const std::string& tok, char prefix, int lineno) {
    if (tok.size() < 2 || tok[0] != prefix)
        throw ParseError("line " + std::to_string(lineno) + ": expected " + prefix +
                         "<index>, got '" + tok + "'");
    try {
        std::size_t pos = 0;
        int v = std::stoi(tok.substr(1), &pos);
        if (pos != tok.size() - 1 || v < 0) throw std::invalid_argument("");
        return v;
    } catch (const std::exception&) {
        throw ParseError("line " + std::to_string(lineno) + ": bad index in '" + tok + "'");
    }
}

}  // namespace

MoveScript parse_script(const Triangulation& base, const std::string& text) {
    std::istringstream is(text);
    Triangulation cur = base;
    MoveScript out;
    std::string line;
    int lineno = 0;
    bool seen_event = false;
    while (std::getline(is, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        std::istringstream ls(line);
        std::vector<std::string> tok;
        for (std::string w; ls >> w;) tok.push_back(w);
        if (tok.empty()) continue;

        if (tok[0] == "base") {
            if (seen_event || out.size() || tok.size() != 2)
                throw ParseError("line " + std::to_string(lineno) + ": misplaced base header");
            if (tok[1] != canonical_signature(base))
                throw ParseError("line " + std::to_string(lineno) +
                                 ": base signature does not match the given triangulation");
            continue;
        }

        SkeletonIndex sk(cur);
        MoveEvent ev;
        if (tok[0] == "23" && tok.size() == 2) {
            int k = class_arg(tok[1], 't', lineno);
            if (k >= sk.face_classes())
                throw ParseError("line " + std::to_string(lineno) + ": no such triangle");
            auto [t, f] = sk.face_rep(k);
            ev = MoveEvent{MoveEvent::Kind::F23, t, static_cast<std::uint8_t>(f), 0, 0};
        } else if (tok[0] == "32" && tok.size() == 2) {
            int k = class_arg(tok[1], 'e', lineno);
            if (k >= sk.edge_classes())
                throw ParseError("line " + std::to_string(lineno) + ": no such edge");
            auto [t, e] = sk.edge_rep(k);
            ev = MoveEvent{MoveEvent::Kind::E32, t, static_cast<std::uint8_t>(e), 0, 0};
        } else if (tok[0] == "14" && tok.size() == 2) {
            int k = class_arg(tok[1], 'T', lineno);
            if (k >= static_cast<int>(cur.size()))
                throw ParseError("line " + std::to_string(lineno) + ": no such tetrahedron");
            ev = MoveEvent{MoveEvent::Kind::V14, k, 0, 0, 0};
        } else if (tok[0] == "41" && tok.size() == 2) {
            int k = class_arg(tok[1], 'v', lineno);
            if (k >= sk.vertex_classes())
                throw ParseError("line " + std::to_string(lineno) + ": no such vertex");
            auto [t, c] = sk.vertex_rep(k);
            ev = MoveEvent{MoveEvent::Kind::V41, t, static_cast<std::uint8_t>(c), 0, 0};
        } else if (tok[0] == "arch" && tok.size() == 4) {
            int k = class_arg(tok[1], 't', lineno);
            int va = class_arg(tok[2], 'v', lineno);
            int vb = class_arg(tok[3], 'v', lineno);
            if (k >= sk.face_classes() || va >= sk.vertex_classes() || vb >= sk.vertex_classes())
                throw ParseError("line " + std::to_string(lineno) + ": no such triangle or vertex");
            auto [t, f] = sk.face_rep(k);
            int x = -1, y = -1;
            for (int d = 0; d < 4; ++d)
                if (d != f && x < 0 && sk.vertex_class(t, d) == va) x = d;
            for (int d = 0; d < 4; ++d)
                if (d != f && d != x && y < 0 && sk.vertex_class(t, d) == vb) y = d;
            if (x < 0 || y < 0 || va == vb)
                throw ParseError("line " + std::to_string(lineno) +
                                 ": arch vertices must be two distinct vertices of the triangle");
            ev = MoveEvent{MoveEvent::Kind::Arch, t, static_cast<std::uint8_t>(f),
                           static_cast<std::uint8_t>(x), static_cast<std::uint8_t>(y)};
        } else {
            throw ParseError("line " + std::to_string(lineno) + ": unrecognized event");
        }

        try {
            cur = apply_event(cur, ev).tri;
        } catch (const IllegalMove& e) {
            throw ParseError("line " + std::to_string(lineno) + ": " + e.what());
        }
        out.push_back(ev);
        seen_event = true;
    }
    return out;
}

}  // namespace triflip
