#include "triflip/skeleton.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace triflip {

namespace {

// Union-find with an optional parity bit relative to the parent.
struct ParityUF {
    std::vector<int> parent;
    std::vector<std::uint8_t> par;   // parity relative to parent
    std::vector<std::uint8_t> bad;   // component has a parity contradiction

    explicit ParityUF(std::size_t n) : parent(n), par(n, 0), bad(n, 0) {
        for (std::size_t i = 0; i < n; ++i) parent[i] = static_cast<int>(i);
    }

    std::pair<int, int> find(int x) {
        int p = 0;
        int r = x;
        while (parent[r] != r) {
            p ^= par[r];
            r = parent[r];
        }
        // Path compression.
        int cur = x, cp = p;
        while (parent[cur] != cur) {
            int next = parent[cur];
            int np = cp ^ par[cur];
            parent[cur] = r;
            par[cur] = static_cast<std::uint8_t>(cp);
            cur = next;
            cp = np;
        }
        return {r, p};
    }

    void unite(int a, int b, int rel) {
        auto [ra, pa] = find(a);
        auto [rb, pb] = find(b);
        if (ra == rb) {
            if ((pa ^ pb) != rel) bad[ra] = 1;
            return;
        }
        parent[rb] = ra;
        par[rb] = static_cast<std::uint8_t>(pa ^ pb ^ rel);
        if (bad[rb]) bad[ra] = 1;
    }
};

int sign3(const int a[3]) {
    // Parity of the 3-sequence relative to ascending order: +1 even, -1 odd.
    int inv = 0;
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            if (a[i] > a[j]) ++inv;
    return (inv % 2 == 0) ? 1 : -1;
}

// Dense class ids from union-find roots, numbered by first slot in scan order.
int densify(ParityUF& uf, std::vector<int>& cls, std::vector<int>& rep) {
    const std::size_t n = uf.parent.size();
    cls.assign(n, -1);
    rep.clear();
    std::vector<int> id(n, -1);
    int next = 0;
    for (std::size_t i = 0; i < n; ++i) {
        int r = uf.find(static_cast<int>(i)).first;
        if (id[r] < 0) {
            id[r] = next++;
            rep.push_back(static_cast<int>(i));
        }
        cls[i] = id[r];
    }
    return next;
}

}  // namespace

SkeletonIndex::SkeletonIndex(const Triangulation& tri) : tri_(&tri) {
    const int n = static_cast<int>(tri.size());
    ParityUF vuf(4 * n), euf(6 * n), fuf(4 * n);

    for (int t = 0; t < n; ++t) {
        for (int f = 0; f < 4; ++f) {
            const FaceGluing& g = tri.gluing(t, f);
            if (!g.glued()) continue;
            fuf.unite(4 * t + f, 4 * g.tet + g.face, 0);
            for (int c = 0; c < 4; ++c) {
                if (c == f) continue;
                vuf.unite(4 * t + c, 4 * g.tet + g.perm[c], 0);
            }
            for (int e = 0; e < 6; ++e) {
                int u = kEdgeEnds[e][0], v = kEdgeEnds[e][1];
                if (u == f || v == f) continue;  // not on the glued face
                int pu = g.perm[u], pv = g.perm[v];
                int e2 = edge_slot(pu, pv);
                // Parity 1 when the canonical (lo,hi) direction is flipped.
                euf.unite(6 * t + e, 6 * g.tet + e2, pu > pv ? 1 : 0);
            }
        }
    }

    nv_ = densify(vuf, vclass_, vrep_);
    ne_ = densify(euf, eclass_, erep_);
    nf_ = densify(fuf, fclass_, frep_);

    vdeg_.assign(nv_, 0);
    edeg_.assign(ne_, 0);
    fdeg_.assign(nf_, 0);
    vcorners_.assign(nv_, {});
    eslots_.assign(ne_, {});
    for (int t = 0; t < n; ++t) {
        for (int c = 0; c < 4; ++c) {
            int v = vclass_[4 * t + c];
            ++vdeg_[v];
            vcorners_[v].push_back({t, c});
        }
        for (int e = 0; e < 6; ++e) {
            int k = eclass_[6 * t + e];
            ++edeg_[k];
            eslots_[k].push_back({t, e});
        }
        for (int f = 0; f < 4; ++f) ++fdeg_[fclass_[4 * t + f]];
    }

    ereversed_.assign(ne_, 0);
    for (int s = 0; s < 6 * n; ++s) {
        auto [root, p] = euf.find(s);
        (void)p;
        if (euf.bad[root]) ereversed_[eclass_[s]] = 1;
    }

    // Coherent tet orientations: odd gluings join equal orientations.
    ParityUF ouf(n);
    for (int t = 0; t < n; ++t)
        for (int f = 0; f < 4; ++f) {
            const FaceGluing& g = tri.gluing(t, f);
            if (!g.glued()) continue;
            ouf.unite(t, g.tet, g.perm.sign() > 0 ? 1 : 0);
        }
    orientable_ = true;
    for (int t = 0; t < n; ++t)
        if (ouf.bad[ouf.find(t).first]) orientable_ = false;

    build_links();
}

void SkeletonIndex::build_links() {
    const Triangulation& tri = *tri_;
    const int n = static_cast<int>(tri.size());

    // Link vertices: orbits of (corner, direction) pairs, encoded 16t+4c+d.
    // Link edge sides: (corner, side f), encoded 16t+4c+f; orbits have size
    // 2 (interior) or 1 (boundary).
    ParityUF lv(16 * n);
    ParityUF tri_orient(4 * n);  // corner triangles with orientation parity
    ParityUF conn(4 * n);
    std::vector<std::uint8_t> side_glued(16 * n, 0);

    for (int t = 0; t < n; ++t) {
        for (int f = 0; f < 4; ++f) {
            const FaceGluing& g = tri.gluing(t, f);
            if (!g.glued()) continue;
            for (int c = 0; c < 4; ++c) {
                if (c == f) continue;
                int c2 = g.perm[c];
                side_glued[16 * t + 4 * c + f] = 1;
                conn.unite(4 * t + c, 4 * g.tet + c2, 0);
                for (int d = 0; d < 4; ++d) {
                    if (d == c || d == f) continue;
                    lv.unite(16 * t + 4 * c + d, 16 * g.tet + 4 * c2 + g.perm[d], 0);
                }
                // Orientation: image of the ascending direction triple.
                int dirs[3], k = 0;
                for (int d = 0; d < 4; ++d)
                    if (d != c) dirs[k++] = g.perm[d];
                int s = sign3(dirs);
                // Oriented surfaces glue triangles with an orientation flip in
                // coherent frames: parity differs exactly when the induced
                // label map is even.
                tri_orient.unite(4 * t + c, 4 * g.tet + c2, s > 0 ? 1 : 0);
            }
        }
    }

    // Count link cells per vertex class.
    std::vector<int> lv_count(nv_, 0);
    std::vector<char> lv_seen(16 * n, 0);
    for (int t = 0; t < n; ++t)
        for (int c = 0; c < 4; ++c)
            for (int d = 0; d < 4; ++d) {
                if (d == c) continue;
                int s = 16 * t + 4 * c + d;
                int r = lv.find(s).first;
                if (!lv_seen[r]) {
                    lv_seen[r] = 1;
                    ++lv_count[vclass_[4 * t + c]];
                }
            }

    std::vector<int> le_count(nv_, 0);
    std::vector<int> lb_count(nv_, 0);  // boundary sides
    for (int t = 0; t < n; ++t)
        for (int c = 0; c < 4; ++c)
            for (int f = 0; f < 4; ++f) {
                if (f == c) continue;
                int v = vclass_[4 * t + c];
                if (side_glued[16 * t + 4 * c + f])
                    ++le_count[v];  // counted twice, halved below
                else {
                    ++le_count[v];
                    ++le_count[v];  // boundary side: its own link edge
                    ++lb_count[v];
                }
            }

    std::vector<int> comp_count(nv_, 0);
    std::vector<char> comp_seen(4 * n, 0);
    std::vector<char> comp_bad(nv_, 0);
    for (int t = 0; t < n; ++t)
        for (int c = 0; c < 4; ++c) {
            int v = vclass_[4 * t + c];
            int r = conn.find(4 * t + c).first;
            if (!comp_seen[r]) {
                comp_seen[r] = 1;
                ++comp_count[v];
            }
            int ro = tri_orient.find(4 * t + c).first;
            if (tri_orient.bad[ro]) comp_bad[v] = 1;
        }

    links_.assign(nv_, {});
    material_.assign(nv_, false);
    material_count_ = 0;
    for (int v = 0; v < nv_; ++v) {
        VertexLink& L = links_[v];
        int F = vdeg_[v];
        int E = le_count[v] / 2;
        int V = lv_count[v];
        L.chi = V - E + F;
        L.connected = comp_count[v] == 1;
        L.has_boundary = lb_count[v] > 0;
        L.orientable = !comp_bad[v];
        if (!L.has_boundary && L.connected && L.chi == 2)
            L.cls = LinkClass::Sphere;
        else if (!L.has_boundary && L.connected && L.chi == 0)
            L.cls = L.orientable ? LinkClass::Torus : LinkClass::KleinBottle;
        else
            L.cls = LinkClass::Other;
        material_[v] = (L.cls == LinkClass::Sphere);
        if (material_[v]) ++material_count_;
    }
}

std::pair<int, int> SkeletonIndex::edge_endpoints(int e) const {
    auto [t, slot] = edge_rep(e);
    return {vertex_class(t, kEdgeEnds[slot][0]), vertex_class(t, kEdgeEnds[slot][1])};
}

SkeletonIndex::EdgeRing SkeletonIndex::edge_ring(int e) const {
    // The slots of an edge class form one cycle (or one path, on the
    // boundary) under the "adjacent across a face" relation: every slot has
    // exactly two face incidences. Walk that cycle from the representative.
    EdgeRing ring;
    auto [t0, s0] = edge_rep(e);
    const int u0 = kEdgeEnds[s0][0], v0 = kEdgeEnds[s0][1];
    int other[2], k = 0;
    for (int d = 0; d < 4; ++d)
        if (d != u0 && d != v0) other[k++] = d;

    int t = t0, cu = u0, cv = v0;
    int enter = other[1];  // pretend-entry so the first exit is other[0]
    for (int step = 0; step < edge_degree(e); ++step) {
        ring.entries.push_back({t, edge_slot(cu, cv), static_cast<std::uint8_t>(cu),
                                static_cast<std::uint8_t>(cv), static_cast<std::uint8_t>(enter)});
        int exit_face = -1;
        for (int d = 0; d < 4; ++d)
            if (d != cu && d != cv && d != enter) exit_face = d;
        const FaceGluing& g = tri_->gluing(t, exit_face);
        if (!g.glued()) return ring;  // boundary edge: one-sided open walk
        int nu = g.perm[cu], nv = g.perm[cv];
        if (g.tet == t0 && edge_slot(nu, nv) == s0) {
            ring.closes = (nu == u0 && nv == v0);
            return ring;
        }
        t = g.tet;
        cu = nu;
        cv = nv;
        enter = g.face;
    }
    return ring;  // cannot close within `degree` steps: inconsistent index
}

int SkeletonIndex::euler_characteristic() const {
    return nv_ - ne_ + nf_ - tet_count();
}

std::optional<int> SkeletonIndex::first_reversed_edge() const {
    for (int e = 0; e < ne_; ++e)
        if (ereversed_[e]) return e;
    return std::nullopt;
}

bool SkeletonIndex::is_simplicial() const {
    const int n = tet_count();
    // Condition 1: each simplex embeds, i.e. within every tetrahedron all
    // vertex, edge and face classes are pairwise distinct.
    for (int t = 0; t < n; ++t) {
        for (int a = 0; a < 4; ++a)
            for (int b = a + 1; b < 4; ++b) {
                if (vclass_[4 * t + a] == vclass_[4 * t + b]) return false;
                if (fclass_[4 * t + a] == fclass_[4 * t + b]) return false;
            }
        for (int a = 0; a < 6; ++a)
            for (int b = a + 1; b < 6; ++b)
                if (eclass_[6 * t + a] == eclass_[6 * t + b]) return false;
    }

    // Condition 2: two tetrahedra intersect in the closure of at most one
    // common simplex. (Pairs within one embedded tetrahedron are automatic,
    // and faces of distinct tetrahedra reduce to the tetrahedron pairs.)
    std::vector<std::vector<int>> sub(n);  // tagged ids: 4*id + dim
    for (int t = 0; t < n; ++t) {
        auto& s = sub[t];
        for (int c = 0; c < 4; ++c) s.push_back(vclass_[4 * t + c] * 4 + 0);
        for (int e = 0; e < 6; ++e) s.push_back(eclass_[6 * t + e] * 4 + 1);
        for (int f = 0; f < 4; ++f) s.push_back(fclass_[4 * t + f] * 4 + 2);
        std::sort(s.begin(), s.end());
    }

    // For closure comparison we need, per class, its own subsimplex closure.
    auto face_closure = [&](int fc) {
        auto [t, f] = face_rep(fc);
        std::vector<int> out{fc * 4 + 2};
        for (int c = 0; c < 4; ++c)
            if (c != f) out.push_back(vclass_[4 * t + c] * 4 + 0);
        for (int e = 0; e < 6; ++e) {
            int u = kEdgeEnds[e][0], v = kEdgeEnds[e][1];
            if (u != f && v != f) out.push_back(eclass_[6 * t + e] * 4 + 1);
        }
        std::sort(out.begin(), out.end());
        return out;
    };
    auto edge_closure = [&](int ec) {
        auto [t, es] = edge_rep(ec);
        int u = kEdgeEnds[es][0], v = kEdgeEnds[es][1];
        std::vector<int> out{ec * 4 + 1, vclass_[4 * t + u] * 4, vclass_[4 * t + v] * 4};
        std::sort(out.begin(), out.end());
        return out;
    };

    std::vector<int> common;
    for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
            common.clear();
            std::set_intersection(sub[a].begin(), sub[a].end(), sub[b].begin(), sub[b].end(),
                                  std::back_inserter(common));
            if (common.empty()) continue;
            // The maximal element must be unique and its closure must be
            // exactly the common set.
            int best_dim = -1, best = -1;
            for (int tagged : common) {
                int dim = tagged % 4;
                if (dim > best_dim) {
                    best_dim = dim;
                    best = tagged;
                }
            }
            int count_max = 0;
            for (int tagged : common)
                if (tagged % 4 == best_dim) ++count_max;
            if (count_max != 1) return false;
            std::vector<int> clo;
            if (best_dim == 0)
                clo = {best};
            else if (best_dim == 1)
                clo = edge_closure(best / 4);
            else
                clo = face_closure(best / 4);
            if (clo != common) return false;
        }
    }
    return true;
}

VertexSplit classify_vertices(const SkeletonIndex& sk) {
    VertexSplit out;
    for (int v = 0; v < sk.vertex_classes(); ++v) {
        if (sk.vertex_material(v))
            out.material.push_back(v);
        else
            out.ideal.push_back(v);
    }
    return out;
}

}  // namespace triflip
