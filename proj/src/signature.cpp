#include "triflip/signature.hpp"

#include <algorithm>
#include <cstdint>

namespace triflip {

namespace {

// One BFS relabeling of a connected component, encoded as bytes:
//   u16 LE tet count, then for each canonical tet 0..k-1 and face 0..3:
//   u16 LE canonical partner index + one byte Perm4 rank of the induced
//   gluing perm (0xFFFF + 0xFF when unglued).
// Discovery rule: a partner first reached through perm p from tet t gets
// relabel = relabel[t] * p^-1, so the induced perm at the discovering slot is
// the identity. This makes the encoding depend only on the isomorphism class
// of the start choice.
struct Encoding {
    std::vector<std::uint8_t> bytes;
    std::vector<int> order;      // canonical index -> old tet
    std::vector<Perm4> relabel;  // old tet -> perm of its labels into canonical labels
};

void push_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
    out.push_back(static_cast<std::uint8_t>(v & 0xff));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
}

// Encode the component of `start`; abort with nullopt as soon as the bytes
// compare greater than `best` (same component, so same length).
std::optional<Encoding> encode_from(const Triangulation& t, int start, const Perm4& sp,
                                    std::size_t comp_size, const std::vector<std::uint8_t>* best) {
    Encoding enc;
    enc.order.reserve(comp_size);
    enc.relabel.assign(t.size(), Perm4());
    std::vector<int> new_of_old(t.size(), -1);

    enc.order.push_back(start);
    new_of_old[start] = 0;
    enc.relabel[start] = sp;

    enc.bytes.reserve(2 + comp_size * 12);
    push_u16(enc.bytes, static_cast<std::uint16_t>(comp_size));

    bool strictly_better = false;
    auto emit = [&](std::uint8_t b) {
        if (!strictly_better && best) {
            std::uint8_t ref = (*best)[enc.bytes.size()];
            if (b > ref) return false;
            if (b < ref) strictly_better = true;
        }
        enc.bytes.push_back(b);
        return true;
    };

    for (std::size_t i = 0; i < enc.order.size(); ++i) {
        int told = enc.order[i];
        Perm4 inv = enc.relabel[told].inverse();
        for (int fc = 0; fc < 4; ++fc) {
            int fold = inv[fc];  // face of the old tet shown at canonical face fc
            const FaceGluing& g = t.tet(told).glue[fold];
            if (!g.glued()) {
                if (!emit(0xff) || !emit(0xff) || !emit(0xff)) return std::nullopt;
                continue;
            }
            int po = g.tet;
            if (new_of_old[po] < 0) {
                new_of_old[po] = static_cast<int>(enc.order.size());
                enc.order.push_back(po);
                enc.relabel[po] = enc.relabel[told] * g.perm.inverse();
            }
            std::uint16_t pn = static_cast<std::uint16_t>(new_of_old[po]);
            Perm4 q = enc.relabel[po] * g.perm * inv;
            if (!emit(static_cast<std::uint8_t>(pn & 0xff)) ||
                !emit(static_cast<std::uint8_t>(pn >> 8)) ||
                !emit(static_cast<std::uint8_t>(q.index())))
                return std::nullopt;
        }
    }
    return enc;
}

std::vector<std::vector<int>> components(const Triangulation& t) {
    int n = static_cast<int>(t.size());
    std::vector<int> comp(n, -1);
    std::vector<std::vector<int>> out;
    for (int s = 0; s < n; ++s) {
        if (comp[s] >= 0) continue;
        int id = static_cast<int>(out.size());
        out.emplace_back();
        std::vector<int> stack{s};
        comp[s] = id;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            out[id].push_back(v);
            for (const FaceGluing& g : t.tet(v).glue)
                if (g.glued() && comp[g.tet] < 0) {
                    comp[g.tet] = id;
                    stack.push_back(g.tet);
                }
        }
        std::sort(out[id].begin(), out[id].end());
    }
    return out;
}

Encoding canonical_component(const Triangulation& t, const std::vector<int>& comp) {
    std::optional<Encoding> best;
    for (int start : comp)
        for (int pi = 0; pi < 24; ++pi) {
            auto cand = encode_from(t, start, Perm4::from_index(pi), comp.size(),
                                    best ? &best->bytes : nullptr);
            if (cand && (!best || cand->bytes < best->bytes)) best = std::move(cand);
        }
    return std::move(*best);  // comp is nonempty, so at least one candidate exists
}

std::string to_hex(const std::vector<std::uint8_t>& bytes) {
    static const char* digits = "0123456789abcdef";
    std::string s;
    s.reserve(bytes.size() * 2);
    for (std::uint8_t b : bytes) {
        s.push_back(digits[b >> 4]);
        s.push_back(digits[b & 0xf]);
    }
    return s;
}

}  // namespace

std::string canonical_signature(const Triangulation& t) {
    std::vector<std::vector<std::uint8_t>> parts;
    for (const auto& comp : components(t)) parts.push_back(canonical_component(t, comp).bytes);
    std::sort(parts.begin(), parts.end());
    std::vector<std::uint8_t> all;
    for (const auto& p : parts) all.insert(all.end(), p.begin(), p.end());
    return to_hex(all);
}

bool isomorphic(const Triangulation& a, const Triangulation& b) {
    if (a.size() != b.size()) return false;
    return canonical_signature(a) == canonical_signature(b);
}

std::optional<Isomorphism> find_isomorphism(const Triangulation& a, const Triangulation& b) {
    if (a.size() != b.size()) return std::nullopt;
    auto ca = components(a);
    auto cb = components(b);
    if (ca.size() != cb.size()) return std::nullopt;

    std::vector<Encoding> ea, eb;
    for (const auto& c : ca) ea.push_back(canonical_component(a, c));
    for (const auto& c : cb) eb.push_back(canonical_component(b, c));

    std::vector<std::size_t> ia(ea.size()), ib(eb.size());
    for (std::size_t i = 0; i < ea.size(); ++i) ia[i] = i, ib[i] = i;
    auto by_bytes = [](const std::vector<Encoding>& e) {
        return [&e](std::size_t x, std::size_t y) { return e[x].bytes < e[y].bytes; };
    };
    std::sort(ia.begin(), ia.end(), by_bytes(ea));
    std::sort(ib.begin(), ib.end(), by_bytes(eb));

    Isomorphism iso;
    iso.tet_map.assign(a.size(), -1);
    iso.vperm.assign(a.size(), Perm4());
    for (std::size_t k = 0; k < ia.size(); ++k) {
        const Encoding& xa = ea[ia[k]];
        const Encoding& xb = eb[ib[k]];
        if (xa.bytes != xb.bytes) return std::nullopt;
        for (std::size_t i = 0; i < xa.order.size(); ++i) {
            int ta = xa.order[i];
            int tb = xb.order[i];
            iso.tet_map[ta] = tb;
            iso.vperm[ta] = xb.relabel[tb].inverse() * xa.relabel[ta];
        }
    }
    return iso;
}

}  // namespace triflip
