#ifndef SPARSITY_GRAPH_HPP
#define SPARSITY_GRAPH_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace sparsity {

// Sorted set of vertex ids within a named graph.
using VertexSubset = std::vector<int>;

bool is_sorted_unique(const VertexSubset& s);
VertexSubset sorted_unique(VertexSubset s);
bool subset_contains(const VertexSubset& s, int v);
VertexSubset subset_union(const VertexSubset& a, const VertexSubset& b);
VertexSubset subset_intersect(const VertexSubset& a, const VertexSubset& b);
VertexSubset subset_minus(const VertexSubset& a, const VertexSubset& b);

// Simple undirected finite graph, vertices 0..n-1. No loops, no parallel
// edges.
class Graph {
public:
    Graph() = default;
    explicit Graph(int n) : n_(n), adj_(n) {}

    int n() const { return n_; }
    int m() const { return static_cast<int>(edges_.size()); }

    bool has_edge(int u, int v) const;
    void add_edge(int u, int v);
    const std::vector<int>& neighbors(int u) const { return adj_[u]; }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }

    Graph induced(const VertexSubset& keep,
                  std::vector<int>* old_of_new = nullptr) const;
    Graph removed(const VertexSubset& drop) const;

    bool connected() const;
    bool is_tree() const;
    bool is_forest() const;
    bool edgeless() const { return edges_.empty(); }

    // Parses the text format: line 1 "n m", then m lines "u v".
    // Throws std::runtime_error on malformed input, duplicate edges, loops,
    // or out-of-range endpoints.
    static Graph parse(std::istream& in);
    static Graph parse_string(const std::string& text);
    std::string format() const;

private:
    int n_ = 0;
    std::vector<std::vector<int>> adj_;
    std::vector<std::pair<int, int>> edges_;
};

Graph disjoint_union(const Graph& a, const Graph& b);
// K1 + G with the apex labeled n.
Graph apex(const Graph& g);

// Maximal connected pieces, ordered by minimum vertex id.
std::vector<VertexSubset> connected_components(const Graph& g);
std::vector<VertexSubset> components_within(const Graph& g,
                                            const VertexSubset& alive);

// Blocks (maximal 2-connected subgraphs, bridges, isolated vertices) and cut
// vertices. Blocks are returned as vertex sets ordered by minimum vertex id;
// together they cover every edge exactly once.
struct BlockCutResult {
    std::vector<VertexSubset> blocks;
    VertexSubset cut_vertices;
};
BlockCutResult blocks_and_cut_vertices(const Graph& g);

// Shortest u-v path, ties broken by lexicographically smallest vertex
// sequence; nullopt when u and v are disconnected.
std::optional<std::vector<int>> geodesic(const Graph& g, int u, int v);

std::vector<int> bfs_distances(const Graph& g, int source,
                               const std::vector<char>* alive = nullptr);

// Layers of pairwise-disjoint vertex sets covering V(G); every edge joins
// vertices in the same or consecutive layers.
struct Layering {
    std::vector<VertexSubset> layers;
};
bool layering_valid(const Graph& g, const Layering& l, std::string* why = nullptr);

// Layer i = vertices at distance i from root. Throws on disconnected input.
Layering bfs_layering(const Graph& g, int root);

enum class GraphClass { Null, Edgeless, LinearForest, Forest, Other };
GraphClass classify(const Graph& g);
std::string to_string(GraphClass c);

} // namespace sparsity

#endif
