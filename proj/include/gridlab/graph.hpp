#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace gridlab {

using Vertex = int;
using Edge = std::pair<Vertex, Vertex>;

/// Simple undirected graph on vertices 0..n-1 with sorted adjacency lists.
class Graph {
public:
    Graph() = default;
    explicit Graph(int n) : adj_(static_cast<std::size_t>(n)) {}
    Graph(int n, const std::vector<Edge>& edges);

    [[nodiscard]] int size() const { return static_cast<int>(adj_.size()); }
    [[nodiscard]] std::size_t edge_count() const { return edges_; }
    [[nodiscard]] const std::vector<Vertex>& neighbors(Vertex v) const { return adj_.at(static_cast<std::size_t>(v)); }
    [[nodiscard]] int degree(Vertex v) const { return static_cast<int>(neighbors(v).size()); }
    [[nodiscard]] bool has_edge(Vertex u, Vertex v) const;

    /// Adds uv. Returns false if the edge already exists; throws
    /// std::invalid_argument on loops or out-of-range ids.
    bool add_edge(Vertex u, Vertex v);
    Vertex add_vertex();

    /// Edges with u < v, lexicographically sorted.
    [[nodiscard]] std::vector<Edge> edges() const;

    friend bool operator==(const Graph&, const Graph&) = default;

private:
    std::vector<std::vector<Vertex>> adj_;
    std::size_t edges_ = 0;
};

/// Marker for the girth of an acyclic graph.
inline constexpr int kInfiniteGirth = -1;

/// Length of a shortest cycle, or kInfiniteGirth for forests.
int girth(const Graph& g);
int max_degree(const Graph& g);
/// Proper 2-coloring (0/1 per vertex; the lowest id of each component gets
/// 0), or nullopt if the graph has an odd cycle.
std::optional<std::vector<int>> bipartition(const Graph& g);
/// Component index per vertex, numbered in order of lowest vertex id.
std::vector<int> components(const Graph& g);
bool is_connected(const Graph& g);
bool is_acyclic(const Graph& g);

}  // namespace gridlab
