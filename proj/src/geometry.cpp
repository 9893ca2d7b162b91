#include "gridlab/geometry.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "gridlab/errors.hpp"

namespace gridlab {

bool intersects(const Segment& a, const Segment& b) {
    if (a.orientation == b.orientation) return false;
    const Segment& h = a.is_horizontal() ? a : b;
    const Segment& v = a.is_horizontal() ? b : a;
    return h.anchor.x <= v.anchor.x && v.anchor.x <= h.anchor.x + h.length && v.anchor.y <= h.anchor.y &&
           h.anchor.y <= v.anchor.y + v.length;
}

std::vector<std::string> validate(const Representation& rep) {
    std::vector<std::string> out;
    for (Vertex v = 0; v < rep.size(); ++v) {
        const auto& s = rep[v];
        if (s.length <= Rational(0)) out.push_back("vertex " + std::to_string(v) + " has non-positive length");
        if (rep.unit_mode && s.length != Rational(1)) {
            out.push_back("vertex " + std::to_string(v) + " has length " + s.length.str() + " in unit mode");
        }
    }
    // Parallel segments on a common line must be disjoint (touching included).
    std::map<std::pair<Orientation, Rational>, std::vector<Vertex>> lines;
    for (Vertex v = 0; v < rep.size(); ++v) lines[{rep[v].orientation, rep[v].fixed()}].push_back(v);
    for (auto& [key, members] : lines) {
        std::sort(members.begin(), members.end(), [&](Vertex a, Vertex b) {
            return std::tie(rep[a].start(), a) < std::tie(rep[b].start(), b);
        });
        for (std::size_t i = 1; i < members.size(); ++i) {
            Vertex a = members[i - 1];
            Vertex b = members[i];
            if (rep[b].start() <= rep[a].stop()) {
                out.push_back("parallel segments " + std::to_string(a) + " and " + std::to_string(b) +
                              " share a point");
            }
        }
    }
    return out;
}

void require_valid(const Representation& rep) {
    auto problems = validate(rep);
    if (!problems.empty()) throw InvalidRepresentation(problems.front());
}

Graph extract_graph(const Representation& rep) {
    require_valid(rep);
    const int n = rep.size();
    Graph g(n);
    std::vector<Vertex> hs;
    std::vector<Vertex> vs;
    for (Vertex v = 0; v < n; ++v) (rep[v].is_horizontal() ? hs : vs).push_back(v);
    // Sweep in x: vertical segments sorted by x, each horizontal segment only
    // scans the verticals inside its x-range.
    std::sort(vs.begin(), vs.end(), [&](Vertex a, Vertex b) { return rep[a].anchor.x < rep[b].anchor.x; });
    for (Vertex h : hs) {
        const auto& sh = rep[h];
        auto lo = std::lower_bound(vs.begin(), vs.end(), sh.anchor.x,
                                   [&](Vertex v, const Rational& x) { return rep[v].anchor.x < x; });
        Rational right = sh.anchor.x + sh.length;
        for (auto it = lo; it != vs.end() && rep[*it].anchor.x <= right; ++it) {
            if (intersects(sh, rep[*it])) g.add_edge(h, *it);
        }
    }
    return g;
}

VerificationReport verify(const Representation& rep, const Graph& g) {
    if (rep.size() != g.size()) {
        throw VertexMismatch("representation has " + std::to_string(rep.size()) + " vertices, graph has " +
                             std::to_string(g.size()));
    }
    Graph actual = extract_graph(rep);
    VerificationReport report;
    for (Vertex u = 0; u < g.size(); ++u) {
        const auto& want = g.neighbors(u);
        const auto& have = actual.neighbors(u);
        for (Vertex v : want) {
            if (u < v && !std::binary_search(have.begin(), have.end(), v)) {
                report.mismatches.push_back({Mismatch::Kind::MissingIntersection, u, v});
            }
        }
        for (Vertex v : have) {
            if (u < v && !std::binary_search(want.begin(), want.end(), v)) {
                report.mismatches.push_back({Mismatch::Kind::SpuriousIntersection, u, v});
            }
        }
    }
    return report;
}

Box bounding_box(const Representation& rep) {
    if (rep.empty()) throw EmptyRepresentation("bounding box of an empty representation");
    Box b{rep[0].anchor.x, rep[0].anchor.y, rep[0].end().x, rep[0].end().y};
    for (const auto& s : rep.segments) {
        auto e = s.end();
        b.xmin = min(b.xmin, s.anchor.x);
        b.ymin = min(b.ymin, s.anchor.y);
        b.xmax = max(b.xmax, e.x);
        b.ymax = max(b.ymax, e.y);
    }
    return b;
}

Rational boundary_size(const Representation& rep) {
    Box b = bounding_box(rep);
    return b.width() + b.height();
}

std::string describe(const Mismatch& m) {
    std::string pair = std::to_string(m.u) + "-" + std::to_string(m.v);
    return m.kind == Mismatch::Kind::MissingIntersection ? "edge " + pair + " has no intersection"
                                                        : "segments " + pair + " intersect without an edge";
}

}  // namespace gridlab
