#include "triflip/triangulation.hpp"

#include <algorithm>
#include <sstream>

namespace triflip {

void Triangulation::glue_faces(int t, int f, int t2, const Perm4& p) {
    if (t == t2 && p[f] == f)
        throw InvariantBroken("face glued to itself");
    tets_[t].glue[f] = FaceGluing{t2, static_cast<std::uint8_t>(p[f]), p};
    tets_[t2].glue[p[f]] = FaceGluing{t, static_cast<std::uint8_t>(f), p.inverse()};
}

void Triangulation::unglue_face(int t, int f) {
    const FaceGluing& g = tets_[t].glue[f];
    if (g.glued()) {
        tets_[g.tet].glue[g.face] = FaceGluing{};
        tets_[t].glue[f] = FaceGluing{};
    }
}

std::vector<int> Triangulation::remove_tets(std::vector<int> victims) {
    std::sort(victims.begin(), victims.end());
    victims.erase(std::unique(victims.begin(), victims.end()), victims.end());
    std::vector<int> map(tets_.size());
    std::size_t vi = 0;
    int next = 0;
    for (std::size_t t = 0; t < tets_.size(); ++t) {
        if (vi < victims.size() && static_cast<int>(t) == victims[vi]) {
            map[t] = -1;
            ++vi;
        } else {
            map[t] = next++;
        }
    }
    std::vector<Tetrahedron> out(next);
    for (std::size_t t = 0; t < tets_.size(); ++t) {
        if (map[t] < 0) continue;
        Tetrahedron nt = tets_[t];
        for (int f = 0; f < 4; ++f) {
            if (!nt.glue[f].glued()) continue;
            int p = map[nt.glue[f].tet];
            if (p < 0)
                throw InvariantBroken("removing a tetrahedron that is still glued to a survivor");
            nt.glue[f].tet = p;
        }
        out[map[t]] = nt;
    }
    tets_ = std::move(out);
    return map;
}

bool Triangulation::closed() const {
    for (const auto& t : tets_)
        for (const auto& g : t.glue)
            if (!g.glued()) return false;
    return true;
}

void Triangulation::check_integrity() const {
    const int n = static_cast<int>(tets_.size());
    for (int t = 0; t < n; ++t) {
        for (int f = 0; f < 4; ++f) {
            const FaceGluing& g = tets_[t].glue[f];
            if (!g.glued()) continue;
            if (g.tet >= n) throw InvariantBroken("gluing partner out of range");
            if (!g.perm.is_valid()) throw InvariantBroken("gluing permutation invalid");
            if (g.perm[f] != g.face) throw InvariantBroken("gluing permutation does not carry the face");
            if (g.tet == t && g.face == f) throw InvariantBroken("face glued to itself");
            const FaceGluing& back = tets_[g.tet].glue[g.face];
            if (!back.glued() || back.tet != t || back.face != f || back.perm != g.perm.inverse())
                throw InvariantBroken("gluing is not involutive");
        }
    }
}

bool Triangulation::connected() const {
    if (tets_.empty()) return true;
    std::vector<char> seen(tets_.size(), 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    std::size_t count = 1;
    while (!stack.empty()) {
        int t = stack.back();
        stack.pop_back();
        for (const auto& g : tets_[t].glue) {
            if (g.glued() && !seen[g.tet]) {
                seen[g.tet] = 1;
                ++count;
                stack.push_back(g.tet);
            }
        }
    }
    return count == tets_.size();
}

bool operator==(const Triangulation& a, const Triangulation& b) {
    if (a.tets_.size() != b.tets_.size()) return false;
    for (std::size_t t = 0; t < a.tets_.size(); ++t)
        for (int f = 0; f < 4; ++f) {
            const FaceGluing& x = a.tets_[t].glue[f];
            const FaceGluing& y = b.tets_[t].glue[f];
            if (x.glued() != y.glued()) return false;
            if (x.glued() && (x.tet != y.tet || x.face != y.face || !(x.perm == y.perm))) return false;
        }
    return true;
}

namespace {

[[noreturn]] void bad(const std::string& what, int lineno) {
    std::ostringstream os;
    os << "parse error at line " << lineno << ": " << what;
    throw ParseError(os.str());
}

// Strips comments and surrounding whitespace; returns false for blank lines.
bool clean_line(std::string& line) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto b = line.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return false;
    auto e = line.find_last_not_of(" \t\r\n");
    line = line.substr(b, e - b + 1);
    return true;
}

}  // namespace

Triangulation parse_triangulation(std::istream& in) {
    std::string line;
    int lineno = 0;
    long n = -1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!clean_line(line)) continue;
        std::istringstream ls(line);
        std::string kw;
        ls >> kw >> n;
        if (kw != "tets" || ls.fail() || n < 0) bad("expected `tets <n>`", lineno);
        break;
    }
    if (n < 0) throw ParseError("missing `tets <n>` header");

    Triangulation tri(static_cast<std::size_t>(n));
    std::vector<char> have(static_cast<std::size_t>(n), 0);
    long rows = 0;
    while (rows < n && std::getline(in, line)) {
        ++lineno;
        if (!clean_line(line)) continue;
        std::istringstream ls(line);
        long idx;
        char colon;
        ls >> idx >> colon;
        if (ls.fail() || colon != ':' || idx < 0 || idx >= n) bad("expected `<i>: ...`", lineno);
        if (have[idx]) bad("duplicate row", lineno);
        have[idx] = 1;
        for (int f = 0; f < 4; ++f) {
            std::string tok;
            ls >> tok;
            if (ls.fail()) bad("expected four gluing entries", lineno);
            if (tok == "-") continue;
            auto open = tok.find('(');
            if (open == std::string::npos || tok.back() != ')') bad("expected `<t>(<perm>)` or `-`", lineno);
            long t2;
            try {
                std::size_t used = 0;
                t2 = std::stol(tok.substr(0, open), &used);
                if (used != open) bad("bad partner index", lineno);
            } catch (const std::exception&) {
                bad("bad partner index", lineno);
            }
            if (t2 < 0 || t2 >= n) bad("partner index out of range", lineno);
            Perm4 p;
            if (!Perm4::parse(tok.substr(open + 1, tok.size() - open - 2), p))
                bad("bad gluing permutation", lineno);
            if (t2 == idx && p[f] == f) bad("face glued to itself", lineno);
            tri.tet(static_cast<int>(idx)).glue[f] =
                FaceGluing{static_cast<int>(t2), static_cast<std::uint8_t>(p[f]), p};
        }
        ++rows;
    }
    if (rows < n) throw ParseError("missing gluing rows");
    while (std::getline(in, line)) {
        ++lineno;
        if (clean_line(line)) bad("trailing content after gluing rows", lineno);
    }
    try {
        tri.check_integrity();
    } catch (const InvariantBroken& e) {
        throw ParseError(std::string("inconsistent gluing table: ") + e.what());
    }
    return tri;
}

Triangulation parse_triangulation(const std::string& text) {
    std::istringstream in(text);
    return parse_triangulation(in);
}

std::string format_triangulation(const Triangulation& t) {
    std::ostringstream os;
    os << "tets " << t.size() << "\n";
    for (std::size_t i = 0; i < t.size(); ++i) {
        os << i << ":";
        for (int f = 0; f < 4; ++f) {
            const FaceGluing& g = t.gluing(static_cast<int>(i), f);
            if (g.glued())
                os << " " << g.tet << "(" << g.perm.str() << ")";
            else
                os << " -";
        }
        os << "\n";
    }
    return os.str();
}

}  // namespace triflip
