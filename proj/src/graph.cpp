#include "sparsity/graph.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace sparsity {

bool is_sorted_unique(const VertexSubset& s) {
    for (size_t i = 1; i < s.size(); ++i)
        if (s[i - 1] >= s[i]) return false;
    return true;
}

VertexSubset sorted_unique(VertexSubset s) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
}

bool subset_contains(const VertexSubset& s, int v) {
    return std::binary_search(s.begin(), s.end(), v);
}

VertexSubset subset_union(const VertexSubset& a, const VertexSubset& b) {
    VertexSubset out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

VertexSubset subset_intersect(const VertexSubset& a, const VertexSubset& b) {
    VertexSubset out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                          std::back_inserter(out));
    return out;
}

VertexSubset subset_minus(const VertexSubset& a, const VertexSubset& b) {
    VertexSubset out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(out));
    return out;
}

bool Graph::has_edge(int u, int v) const {
    if (u < 0 || v < 0 || u >= n_ || v >= n_) return false;
    const auto& a = adj_[u].size() <= adj_[v].size() ? adj_[u] : adj_[v];
    int w = adj_[u].size() <= adj_[v].size() ? v : u;
    return std::find(a.begin(), a.end(), w) != a.end();
}

void Graph::add_edge(int u, int v) {
    if (u == v) throw std::runtime_error("graph: loop rejected");
    if (u < 0 || v < 0 || u >= n_ || v >= n_)
        throw std::runtime_error("graph: endpoint out of range");
    if (has_edge(u, v)) throw std::runtime_error("graph: duplicate edge rejected");
    adj_[u].push_back(v);
    adj_[v].push_back(u);
    edges_.emplace_back(std::min(u, v), std::max(u, v));
}

Graph Graph::induced(const VertexSubset& keep, std::vector<int>* old_of_new) const {
    std::vector<int> new_of_old(n_, -1);
    for (size_t i = 0; i < keep.size(); ++i) new_of_old[keep[i]] = static_cast<int>(i);
    Graph h(static_cast<int>(keep.size()));
    for (const auto& [u, v] : edges_)
        if (new_of_old[u] >= 0 && new_of_old[v] >= 0)
            h.add_edge(new_of_old[u], new_of_old[v]);
    if (old_of_new) *old_of_new = keep;
    return h;
}

Graph Graph::removed(const VertexSubset& drop) const {
    VertexSubset all(n_);
    for (int i = 0; i < n_; ++i) all[i] = i;
    return induced(subset_minus(all, drop));
}

bool Graph::connected() const {
    if (n_ == 0) return false; // connected graphs are nonnull
    return static_cast<int>(connected_components(*this).size()) == 1;
}

bool Graph::is_forest() const {
    auto comps = connected_components(*this);
    return m() == n_ - static_cast<int>(comps.size());
}

bool Graph::is_tree() const { return connected() && m() == n_ - 1; }

Graph Graph::parse(std::istream& in) {
    int n, m;
    if (!(in >> n >> m)) throw std::runtime_error("graph: bad header");
    if (n < 0 || m < 0) throw std::runtime_error("graph: negative header");
    Graph g(n);
    for (int i = 0; i < m; ++i) {
        int u, v;
        if (!(in >> u >> v)) throw std::runtime_error("graph: bad edge line");
        g.add_edge(u, v);
    }
    return g;
}

Graph Graph::parse_string(const std::string& text) {
    std::istringstream ss(text);
    return parse(ss);
}

std::string Graph::format() const {
    std::ostringstream ss;
    ss << n_ << " " << m() << "\n";
    auto sorted_edges = edges_;
    std::sort(sorted_edges.begin(), sorted_edges.end());
    for (const auto& [u, v] : sorted_edges) ss << u << " " << v << "\n";
    return ss.str();
}

Graph disjoint_union(const Graph& a, const Graph& b) {
    Graph g(a.n() + b.n());
    for (const auto& [u, v] : a.edges()) g.add_edge(u, v);
    for (const auto& [u, v] : b.edges()) g.add_edge(u + a.n(), v + a.n());
    return g;
}

Graph apex(const Graph& g) {
    Graph h(g.n() + 1);
    for (const auto& [u, v] : g.edges()) h.add_edge(u, v);
    for (int u = 0; u < g.n(); ++u) h.add_edge(u, g.n());
    return h;
}

std::vector<VertexSubset> connected_components(const Graph& g) {
    std::vector<char> alive(g.n(), 1);
    VertexSubset all(g.n());
    for (int i = 0; i < g.n(); ++i) all[i] = i;
    return components_within(g, all);
}

std::vector<VertexSubset> components_within(const Graph& g,
                                            const VertexSubset& alive) {
    std::vector<char> in(g.n(), 0), seen(g.n(), 0);
    for (int v : alive) in[v] = 1;
    std::vector<VertexSubset> comps;
    for (int s : alive) {
        if (seen[s]) continue;
        VertexSubset comp;
        std::deque<int> q{s};
        seen[s] = 1;
        while (!q.empty()) {
            int u = q.front();
            q.pop_front();
            comp.push_back(u);
            for (int w : g.neighbors(u))
                if (in[w] && !seen[w]) {
                    seen[w] = 1;
                    q.push_back(w);
                }
        }
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
    }
    std::sort(comps.begin(), comps.end(),
              [](const VertexSubset& a, const VertexSubset& b) { return a[0] < b[0]; });
    return comps;
}

namespace {

// Hopcroft-Tarjan lowpoint block decomposition, iterative to keep deep paths
// safe.
struct BlockFinder {
    const Graph& g;
    std::vector<int> num, low, parent;
    std::vector<char> is_cut;
    std::vector<std::pair<int, int>> edge_stack;
    std::vector<VertexSubset> blocks;
    int counter = 0;

    explicit BlockFinder(const Graph& graph)
        : g(graph), num(graph.n(), -1), low(graph.n(), 0), parent(graph.n(), -1),
          is_cut(graph.n(), 0) {}

    void pop_block(int u, int v) {
        std::set<int> verts;
        while (!edge_stack.empty()) {
            auto e = edge_stack.back();
            edge_stack.pop_back();
            verts.insert(e.first);
            verts.insert(e.second);
            if (e == std::make_pair(u, v) || e == std::make_pair(v, u)) break;
        }
        blocks.emplace_back(verts.begin(), verts.end());
    }

    void run_from(int root) {
        struct Frame {
            int u;
            size_t idx;
        };
        std::vector<Frame> stack{{root, 0}};
        num[root] = low[root] = counter++;
        int root_children = 0;
        while (!stack.empty()) {
            auto& fr = stack.back();
            int u = fr.u;
            if (fr.idx < g.neighbors(u).size()) {
                int w = g.neighbors(u)[fr.idx++];
                if (num[w] == -1) {
                    parent[w] = u;
                    edge_stack.emplace_back(u, w);
                    num[w] = low[w] = counter++;
                    if (u == root) ++root_children;
                    stack.push_back({w, 0});
                } else if (w != parent[u] && num[w] < num[u]) {
                    edge_stack.emplace_back(u, w);
                    low[u] = std::min(low[u], num[w]);
                }
            } else {
                stack.pop_back();
                if (!stack.empty()) {
                    int p = stack.back().u;
                    low[p] = std::min(low[p], low[u]);
                    if (low[u] >= num[p]) {
                        if (p != root) is_cut[p] = 1;
                        pop_block(p, u);
                    }
                }
            }
        }
        if (root_children > 1) is_cut[root] = 1;
    }
};

} // namespace

BlockCutResult blocks_and_cut_vertices(const Graph& g) {
    BlockFinder bf(g);
    for (int v = 0; v < g.n(); ++v) {
        if (bf.num[v] == -1) {
            if (g.neighbors(v).empty()) {
                bf.num[v] = bf.counter++;
                bf.blocks.push_back({v});
            } else {
                bf.run_from(v);
            }
        }
    }
    BlockCutResult out;
    out.blocks = std::move(bf.blocks);
    std::sort(out.blocks.begin(), out.blocks.end(),
              [](const VertexSubset& a, const VertexSubset& b) { return a[0] < b[0]; });
    for (int v = 0; v < g.n(); ++v)
        if (bf.is_cut[v]) out.cut_vertices.push_back(v);
    return out;
}

std::vector<int> bfs_distances(const Graph& g, int source,
                               const std::vector<char>* alive) {
    std::vector<int> dist(g.n(), -1);
    if (alive && !(*alive)[source]) return dist;
    std::deque<int> q{source};
    dist[source] = 0;
    while (!q.empty()) {
        int u = q.front();
        q.pop_front();
        for (int w : g.neighbors(u)) {
            if (alive && !(*alive)[w]) continue;
            if (dist[w] == -1) {
                dist[w] = dist[u] + 1;
                q.push_back(w);
            }
        }
    }
    return dist;
}

std::optional<std::vector<int>> geodesic(const Graph& g, int u, int v) {
    if (u < 0 || v < 0 || u >= g.n() || v >= g.n()) return std::nullopt;
    if (u == v) return std::vector<int>{u};
    auto du = bfs_distances(g, u);
    if (du[v] == -1) return std::nullopt;
    auto dv = bfs_distances(g, v);
    // Walk from u toward v, always taking the smallest-id neighbor that stays
    // on a shortest path. This yields the lexicographically least sequence.
    std::vector<int> path{u};
    int cur = u;
    while (cur != v) {
        int best = -1;
        for (int w : g.neighbors(cur)) {
            if (dv[w] == dv[cur] - 1 && (best == -1 || w < best)) best = w;
        }
        path.push_back(best);
        cur = best;
    }
    return path;
}

bool layering_valid(const Graph& g, const Layering& l, std::string* why) {
    std::vector<int> layer_of(g.n(), -1);
    for (size_t i = 0; i < l.layers.size(); ++i) {
        if (!is_sorted_unique(l.layers[i])) {
            if (why) *why = "layer " + std::to_string(i) + " not sorted/unique";
            return false;
        }
        for (int v : l.layers[i]) {
            if (v < 0 || v >= g.n() || layer_of[v] != -1) {
                if (why) *why = "vertex " + std::to_string(v) + " repeated or out of range";
                return false;
            }
            layer_of[v] = static_cast<int>(i);
        }
    }
    for (int v = 0; v < g.n(); ++v)
        if (layer_of[v] == -1) {
            if (why) *why = "vertex " + std::to_string(v) + " uncovered";
            return false;
        }
    for (const auto& [u, v] : g.edges())
        if (std::abs(layer_of[u] - layer_of[v]) > 1) {
            if (why)
                *why = "edge " + std::to_string(u) + "-" + std::to_string(v) +
                       " spans non-consecutive layers";
            return false;
        }
    return true;
}

Layering bfs_layering(const Graph& g, int root) {
    if (!g.connected()) throw std::runtime_error("bfs_layering: disconnected input");
    auto dist = bfs_distances(g, root);
    int maxd = *std::max_element(dist.begin(), dist.end());
    Layering l;
    l.layers.assign(maxd + 1, {});
    for (int v = 0; v < g.n(); ++v) l.layers[dist[v]].push_back(v);
    return l;
}

GraphClass classify(const Graph& g) {
    if (g.n() == 0) return GraphClass::Null;
    if (g.edgeless()) return GraphClass::Edgeless;
    if (!g.is_forest()) return GraphClass::Other;
    for (int v = 0; v < g.n(); ++v)
        if (g.neighbors(v).size() > 2) return GraphClass::Forest;
    return GraphClass::LinearForest;
}

std::string to_string(GraphClass c) {
    switch (c) {
        case GraphClass::Null: return "null";
        case GraphClass::Edgeless: return "edgeless";
        case GraphClass::LinearForest: return "linear_forest";
        case GraphClass::Forest: return "forest";
        case GraphClass::Other: return "other";
    }
    return "other";
}

} // namespace sparsity
