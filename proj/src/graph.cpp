#include "gridlab/graph.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>
#include <string>

namespace gridlab {

Graph::Graph(int n, const std::vector<Edge>& edges) : Graph(n) {
    for (auto [u, v] : edges) add_edge(u, v);
}

bool Graph::has_edge(Vertex u, Vertex v) const {
    const auto& nu = neighbors(u);
    return std::binary_search(nu.begin(), nu.end(), v);
}

bool Graph::add_edge(Vertex u, Vertex v) {
    if (u < 0 || v < 0 || u >= size() || v >= size()) {
        throw std::invalid_argument("edge " + std::to_string(u) + "-" + std::to_string(v) + " out of range");
    }
    if (u == v) throw std::invalid_argument("loop at vertex " + std::to_string(u));
    auto& nu = adj_[static_cast<std::size_t>(u)];
    auto it = std::lower_bound(nu.begin(), nu.end(), v);
    if (it != nu.end() && *it == v) return false;
    nu.insert(it, v);
    auto& nv = adj_[static_cast<std::size_t>(v)];
    nv.insert(std::lower_bound(nv.begin(), nv.end(), u), u);
    ++edges_;
    return true;
}

Vertex Graph::add_vertex() {
    adj_.emplace_back();
    return size() - 1;
}

std::vector<Edge> Graph::edges() const {
    std::vector<Edge> out;
    out.reserve(edges_);
    for (Vertex u = 0; u < size(); ++u) {
        for (Vertex v : neighbors(u)) {
            if (u < v) out.emplace_back(u, v);
        }
    }
    return out;
}

int girth(const Graph& g) {
    // BFS from every root; a non-tree edge closing at depths (du, dv) gives a
    // closed walk of length du + dv + 1 through the root, and the minimum over
    // all roots is exactly the girth.
    const int n = g.size();
    int best = kInfiniteGirth;
    std::vector<int> dist(static_cast<std::size_t>(n));
    std::vector<Vertex> parent(static_cast<std::size_t>(n));
    std::vector<Vertex> queue;
    queue.reserve(static_cast<std::size_t>(n));
    for (Vertex root = 0; root < n; ++root) {
        std::fill(dist.begin(), dist.end(), -1);
        queue.clear();
        dist[static_cast<std::size_t>(root)] = 0;
        parent[static_cast<std::size_t>(root)] = -1;
        queue.push_back(root);
        for (std::size_t head = 0; head < queue.size(); ++head) {
            Vertex u = queue[head];
            int du = dist[static_cast<std::size_t>(u)];
            if (best != kInfiniteGirth && 2 * du >= best) break;
            for (Vertex w : g.neighbors(u)) {
                auto& dw = dist[static_cast<std::size_t>(w)];
                if (dw < 0) {
                    dw = du + 1;
                    parent[static_cast<std::size_t>(w)] = u;
                    queue.push_back(w);
                } else if (parent[static_cast<std::size_t>(u)] != w) {
                    int len = du + dw + 1;
                    if (best == kInfiniteGirth || len < best) best = len;
                }
            }
        }
    }
    return best;
}

int max_degree(const Graph& g) {
    int d = 0;
    for (Vertex v = 0; v < g.size(); ++v) d = std::max(d, g.degree(v));
    return d;
}

std::optional<std::vector<int>> bipartition(const Graph& g) {
    std::vector<int> color(static_cast<std::size_t>(g.size()), -1);
    std::queue<Vertex> q;
    for (Vertex s = 0; s < g.size(); ++s) {
        if (color[static_cast<std::size_t>(s)] >= 0) continue;
        color[static_cast<std::size_t>(s)] = 0;
        q.push(s);
        while (!q.empty()) {
            Vertex u = q.front();
            q.pop();
            for (Vertex w : g.neighbors(u)) {
                auto& cw = color[static_cast<std::size_t>(w)];
                if (cw < 0) {
                    cw = 1 - color[static_cast<std::size_t>(u)];
                    q.push(w);
                } else if (cw == color[static_cast<std::size_t>(u)]) {
                    return std::nullopt;
                }
            }
        }
    }
    return color;
}

std::vector<int> components(const Graph& g) {
    std::vector<int> comp(static_cast<std::size_t>(g.size()), -1);
    int next = 0;
    std::vector<Vertex> stack;
    for (Vertex s = 0; s < g.size(); ++s) {
        if (comp[static_cast<std::size_t>(s)] >= 0) continue;
        comp[static_cast<std::size_t>(s)] = next;
        stack.push_back(s);
        while (!stack.empty()) {
            Vertex u = stack.back();
            stack.pop_back();
            for (Vertex w : g.neighbors(u)) {
                if (comp[static_cast<std::size_t>(w)] < 0) {
                    comp[static_cast<std::size_t>(w)] = next;
                    stack.push_back(w);
                }
            }
        }
        ++next;
    }
    return comp;
}

bool is_connected(const Graph& g) {
    auto comp = components(g);
    return std::all_of(comp.begin(), comp.end(), [](int c) { return c == 0; });
}

bool is_acyclic(const Graph& g) {
    auto comp = components(g);
    int k = comp.empty() ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
    return g.edge_count() + static_cast<std::size_t>(k) == static_cast<std::size_t>(g.size());
}

}  // namespace gridlab
