#include "gridlab/treebound.hpp"

#include <algorithm>
#include <queue>

#include "gridlab/errors.hpp"

namespace gridlab {

namespace {

// Appends a copy of T_level rooted at `root` (already present in g).
void grow(Graph& g, Vertex root, int level, TreeInfo* top) {
    for (int i = 0; i < 16 * level + 1; ++i) {
        Vertex child = g.add_vertex();
        g.add_edge(root, child);
        Vertex grand = g.add_vertex();
        g.add_edge(child, grand);
        if (top) {
            top->children.push_back(child);
            top->grandchildren.push_back(grand);
        }
        if (level > 2) grow(g, grand, level - 1, nullptr);
    }
}

std::string trace_name(std::size_t i) { return "P_" + std::to_string(i + 1); }

// Staircase layout on the 1/67 grid: children cross the root left to
// right with rising bottoms; each leaf runs right from just before its
// child, below every later child's span.
Representation t2_layout(const TreeInfo& t) {
    const std::int64_t q = t.graph.size();
    Representation rep;
    rep.segments.resize(static_cast<std::size_t>(q));
    const std::int64_t k = static_cast<std::int64_t>(t.children.size());
    rep[t.root] = Segment::horizontal(0, Rational(2 * k, q));
    for (std::int64_t i = 0; i < k; ++i) {
        rep[t.children[i]] = Segment::vertical(Rational(2 * i + 2, q), Rational(2 * i, q));
        rep[t.grandchildren[i]] = Segment::horizontal(Rational(2 * i + 1, q), Rational(2 * i + 1, q));
    }
    return rep;
}

}  // namespace

TreeInfo gen_tree(int n) {
    if (n < 2) throw LevelTooSmall("tree level must be at least 2, got " + std::to_string(n));
    TreeInfo t;
    t.level = n;
    t.graph = Graph(1);
    t.root = 0;
    grow(t.graph, 0, n, &t);
    return t;
}

int tree_depth(const Graph& g, Vertex root) {
    std::vector<int> dist(static_cast<std::size_t>(g.size()), -1);
    std::queue<Vertex> bfs;
    dist[root] = 0;
    bfs.push(root);
    int depth = 0;
    while (!bfs.empty()) {
        Vertex v = bfs.front();
        bfs.pop();
        depth = std::max(depth, dist[v]);
        for (Vertex w : g.neighbors(v))
            if (dist[w] < 0) dist[w] = dist[v] + 1, bfs.push(w);
    }
    return depth;
}

NestingReport verify_nesting(const Representation& rep, const std::vector<PathTrace>& traces) {
    NestingReport report;
    if (traces.empty()) return report;
    const Graph g = extract_graph(rep);
    std::vector<Rational> low(traces.size()), low_h(traces.size());
    std::vector<bool> has_h(traces.size(), false);
    for (std::size_t i = 0; i < traces.size(); ++i) {
        const auto& path = traces[i];
        if (path.empty()) throw InvalidTrace(trace_name(i) + " is empty");
        for (std::size_t j = 0; j < path.size(); ++j) {
            Vertex v = path[j];
            if (v < 0 || v >= rep.size()) throw InvalidTrace(trace_name(i) + " names unknown vertex " + std::to_string(v));
            if (j > 0 && !g.has_edge(path[j - 1], v)) {
                throw InvalidTrace(trace_name(i) + ": " + std::to_string(path[j - 1]) + " and " + std::to_string(v) +
                                   " do not intersect");
            }
            const Rational& y = rep[v].anchor.y;
            if (j == 0 || y < low[i]) low[i] = y;
            if (rep[v].is_horizontal() && (!has_h[i] || y < low_h[i])) {
                low_h[i] = y;
                has_h[i] = true;
            }
        }
    }
    for (std::size_t i = 1; i < traces.size(); ++i) {
        bool even = (i + 1) % 2 == 0;
        if (even) {
            if (!has_h[i]) {
                report.violations.push_back(trace_name(i) + " has no horizontal segment");
            } else if (!(low_h[i] < low[i - 1])) {
                report.violations.push_back("lowest horizontal of " + trace_name(i) + " at y=" + low_h[i].str() +
                                            " is not below " + trace_name(i - 1) + " (y=" + low[i - 1].str() + ")");
            }
        } else if (!(low[i] < low[i - 1] - 1)) {
            report.violations.push_back(trace_name(i) + " bottoms out at y=" + low[i].str() + ", not below " +
                                        trace_name(i - 1) + " minus one (y=" + (low[i - 1] - 1).str() + ")");
        }
    }
    return report;
}

BoundEstimate empirical_bound(int n, const SearchOptions& opts) {
    if (n < 2) throw LevelTooSmall("tree level must be at least 2");
    if (n > 2) throw BudgetExceeded("T_" + std::to_string(n) + " is beyond exhaustive search");
    TreeInfo t = gen_tree(n);
    BoundEstimate est;
    // Any tree with an edge needs one unit in each direction.
    est.lower = Rational(2);
    auto seed = t2_layout(t);
    auto s = bound_search(t.graph, Rational(2 * (t.graph.size() + 1)), opts, seed);
    est.nodes = s.nodes;
    if (s.best) {
        est.upper = s.best->size;
        est.witness = s.best->rep;
    }
    if (s.complete && s.best) {
        est.lower = s.best->size;
        est.exact = true;
    }
    return est;
}

}  // namespace gridlab
