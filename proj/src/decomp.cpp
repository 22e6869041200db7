#include "sparsity/decomp.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>
#include <sstream>

namespace sparsity {

namespace {

std::string vtos(long long v) { return std::to_string(v); }

std::string set_to_string(const VertexSubset& s) {
    std::ostringstream ss;
    ss << "{";
    for (size_t i = 0; i < s.size(); ++i) ss << (i ? "," : "") << s[i];
    ss << "}";
    return ss.str();
}

ValidationReport fail(const std::string& clause, const std::string& detail) {
    return ValidationReport{false, clause, detail};
}

// Checks that, for every vertex, the nodes whose bags contain it induce a
// connected subgraph of the (forest-shaped) index graph.
bool bag_subtrees_connected(const Graph& tree, const std::vector<VertexSubset>& bags,
                            int nvertices, int* bad_vertex) {
    for (int v = 0; v < nvertices; ++v) {
        std::vector<int> holder;
        for (size_t x = 0; x < bags.size(); ++x)
            if (subset_contains(bags[x], v)) holder.push_back(static_cast<int>(x));
        if (holder.empty()) {
            if (bad_vertex) *bad_vertex = v;
            return false;
        }
        if (components_within(tree, holder).size() != 1) {
            if (bad_vertex) *bad_vertex = v;
            return false;
        }
    }
    return true;
}

} // namespace

int TreeDecomposition::width() const {
    int w = -1;
    for (const auto& b : bags) w = std::max(w, static_cast<int>(b.size()) - 1);
    return w;
}

int TreeDecomposition::adhesion() const {
    int a = 0;
    for (const auto& [x, y] : tree.edges())
        a = std::max(a, static_cast<int>(subset_intersect(bags[x], bags[y]).size()));
    return a;
}

int PathDecomposition::width() const {
    int w = -1;
    for (const auto& b : bags) w = std::max(w, static_cast<int>(b.size()) - 1);
    return w;
}

// ---------------------------------------------------------------------------
// Validators
// ---------------------------------------------------------------------------

ValidationReport validate(const TreeDecomposition& d, const Graph& g) {
    if (static_cast<int>(d.bags.size()) != d.tree.n())
        return fail("schema", "bag count " + vtos(d.bags.size()) + " != node count " +
                                  vtos(d.tree.n()));
    if (!d.tree.is_forest()) return fail("schema", "index graph is not a forest");
    if (d.root && (*d.root < 0 || *d.root >= d.tree.n()))
        return fail("schema", "root node " + vtos(*d.root) + " out of range");
    for (size_t x = 0; x < d.bags.size(); ++x) {
        if (!is_sorted_unique(d.bags[x]))
            return fail("schema", "bag of node " + vtos(x) + " not sorted/unique");
        for (int v : d.bags[x])
            if (v < 0 || v >= g.n())
                return fail("schema", "bag of node " + vtos(x) + " has foreign vertex " + vtos(v));
    }
    int bad = -1;
    if (!bag_subtrees_connected(d.tree, d.bags, g.n(), &bad))
        return fail("vertex-connectivity",
                    "nodes holding vertex " + vtos(bad) + " are empty or disconnected");
    for (const auto& [u, v] : g.edges()) {
        bool covered = false;
        for (const auto& b : d.bags)
            if (subset_contains(b, u) && subset_contains(b, v)) {
                covered = true;
                break;
            }
        if (!covered)
            return fail("edge-coverage", "edge " + vtos(u) + "-" + vtos(v) + " in no bag");
    }
    return {};
}

ValidationReport validate(const PathDecomposition& d, const Graph& g) {
    std::vector<int> first(g.n(), -1), last(g.n(), -1);
    for (size_t i = 0; i < d.bags.size(); ++i) {
        if (!is_sorted_unique(d.bags[i]))
            return fail("schema", "bag " + vtos(i) + " not sorted/unique");
        for (int v : d.bags[i]) {
            if (v < 0 || v >= g.n())
                return fail("schema", "bag " + vtos(i) + " has foreign vertex " + vtos(v));
            if (first[v] == -1) first[v] = static_cast<int>(i);
            last[v] = static_cast<int>(i);
        }
    }
    for (int v = 0; v < g.n(); ++v) {
        if (first[v] == -1) return fail("coverage", "vertex " + vtos(v) + " in no bag");
        for (int i = first[v]; i <= last[v]; ++i)
            if (!subset_contains(d.bags[i], v))
                return fail("interval", "vertex " + vtos(v) + " missing from bag " + vtos(i) +
                                            " inside its interval");
    }
    for (const auto& [u, v] : g.edges()) {
        bool covered = false;
        for (const auto& b : d.bags)
            if (subset_contains(b, u) && subset_contains(b, v)) {
                covered = true;
                break;
            }
        if (!covered)
            return fail("edge-coverage", "edge " + vtos(u) + "-" + vtos(v) + " in no bag");
    }
    return {};
}

ValidationReport validate(const TreePartition& d, const Graph& g) {
    if (static_cast<int>(d.parts.size()) != d.tree.n())
        return fail("schema", "part count != node count");
    if (!d.tree.is_tree() && d.tree.n() > 0)
        return fail("schema", "index graph is not a tree");
    if (d.tree.n() == 0) return fail("schema", "empty index tree");
    if (d.root < 0 || d.root >= d.tree.n()) return fail("schema", "root out of range");
    if (!is_sorted_unique(d.focus)) return fail("schema", "focus set not sorted/unique");
    std::vector<int> part_of(g.n(), -1);
    for (size_t x = 0; x < d.parts.size(); ++x) {
        if (d.parts[x].empty()) return fail("parts", "part of node " + vtos(x) + " empty");
        for (int v : d.parts[x]) {
            if (v < 0 || v >= g.n() || part_of[v] != -1)
                return fail("parts", "vertex " + vtos(v) + " repeated or out of range");
            part_of[v] = static_cast<int>(x);
        }
    }
    for (int v : d.focus)
        if (v < 0 || v >= g.n() || part_of[v] == -1)
            return fail("parts", "focus vertex " + vtos(v) + " not covered by parts");
    for (int v = 0; v < g.n(); ++v)
        if (part_of[v] != -1 && !subset_contains(d.focus, v))
            return fail("parts", "part vertex " + vtos(v) + " outside focus");
    for (const auto& [u, v] : g.edges()) {
        if (part_of[u] == -1 || part_of[v] == -1) continue;
        if (part_of[u] != part_of[v] && !d.tree.has_edge(part_of[u], part_of[v]))
            return fail("edge-confinement",
                        "edge " + vtos(u) + "-" + vtos(v) + " joins parts " +
                            vtos(part_of[u]) + "," + vtos(part_of[v]) + " not adjacent in tree");
    }
    // component neighborhoods confined to a tree edge (or a single part when
    // the tree has one node)
    VertexSubset rest;
    for (int v = 0; v < g.n(); ++v)
        if (!subset_contains(d.focus, v)) rest.push_back(v);
    for (const auto& comp : components_within(g, rest)) {
        std::set<int> touched;
        for (int v : comp)
            for (int w : g.neighbors(v))
                if (part_of[w] != -1) touched.insert(part_of[w]);
        bool ok = false;
        if (touched.empty()) ok = true;
        if (touched.size() == 1) ok = true;
        if (touched.size() == 2) {
            auto it = touched.begin();
            int a = *it++, b = *it;
            ok = d.tree.has_edge(a, b);
        }
        if (!ok)
            return fail("component-neighborhood",
                        "component containing vertex " + vtos(comp[0]) +
                            " touches parts of non-adjacent nodes");
    }
    return {};
}

ValidationReport validate(const RootedForestDecomposition& d, const Graph& g,
                          const ClassOracle& oracle) {
    int k = static_cast<int>(d.parents.size());
    if (static_cast<int>(d.bags.size()) != k)
        return fail("schema", "bag count != node count");
    if (d.variant != 'R' && d.variant != 'S')
        return fail("schema", std::string("unknown variant '") + d.variant + "'");
    if (d.level < 0) return fail("schema", "negative level");
    // parent map must describe a forest
    Graph forest(k);
    for (int x = 0; x < k; ++x) {
        if (d.parents[x] == -1) continue;
        if (d.parents[x] < 0 || d.parents[x] >= k || d.parents[x] == x)
            return fail("schema", "bad parent of node " + vtos(x));
        forest.add_edge(x, d.parents[x]);
    }
    if (!forest.is_forest() || forest.m() != k - static_cast<int>(std::count(
                                                     d.parents.begin(), d.parents.end(), -1)))
        return fail("schema", "parent map is not a forest");
    for (int x = 0; x < k; ++x)
        for (int v : d.bags[x])
            if (v < 0 || v >= g.n())
                return fail("schema", "bag of node " + vtos(x) + " has foreign vertex " + vtos(v));
    int bad = -1;
    if (!bag_subtrees_connected(forest, d.bags, g.n(), &bad))
        return fail("vertex-connectivity",
                    "nodes holding vertex " + vtos(bad) + " are empty or disconnected");
    for (const auto& [u, v] : g.edges()) {
        bool covered = false;
        for (const auto& b : d.bags)
            if (subset_contains(b, u) && subset_contains(b, v)) {
                covered = true;
                break;
            }
        if (!covered)
            return fail("edge-coverage", "edge " + vtos(u) + "-" + vtos(v) + " in no bag");
    }
    for (const auto& [x, y] : forest.edges())
        if (subset_intersect(d.bags[x], d.bags[y]).size() > 1)
            return fail("adhesion", "adhesion of nodes " + vtos(x) + "," + vtos(y) + " exceeds 1");
    for (int x = 0; x < k; ++x)
        if (d.parents[x] == -1 && d.bags[x].size() > 1)
            return fail("root-bag", "root node " + vtos(x) + " has bag " + set_to_string(d.bags[x]));
    // residual class membership
    for (int x = 0; x < k; ++x) {
        if (d.parents[x] == -1) continue;
        VertexSubset residual_vertices = subset_minus(d.bags[x], d.bags[d.parents[x]]);
        Graph residual = g.induced(residual_vertices);
        int sub_level = d.level - 1;
        // direct decisions at the named base classes
        GraphClass c = classify(residual);
        bool decided = false, member = false;
        if (sub_level <= 0) {
            decided = true;
            member = c == GraphClass::Null;
        } else if (sub_level == 1) {
            decided = true;
            member = c == GraphClass::Null || c == GraphClass::Edgeless;
        } else if (sub_level == 2) {
            decided = true;
            member = d.variant == 'R'
                         ? c != GraphClass::Other
                         : (c == GraphClass::Null || c == GraphClass::Edgeless ||
                            c == GraphClass::LinearForest);
        } else {
            auto it = d.residuals.find(x);
            if (it != d.residuals.end() && it->second) {
                auto sub = *it->second;
                if (sub.variant != d.variant || sub.level > sub_level)
                    return fail("residual",
                                "nested certificate of node " + vtos(x) + " claims variant " +
                                    std::string(1, sub.variant) + " level " + vtos(sub.level));
                auto rep = validate(sub, residual, oracle);
                decided = true;
                member = rep.ok;
                if (!rep.ok)
                    return fail("residual", "nested certificate of node " + vtos(x) +
                                                " invalid: " + rep.clause + " (" + rep.detail + ")");
            } else if (oracle) {
                auto ans = oracle(residual, d.variant, sub_level);
                if (ans) {
                    decided = true;
                    member = *ans;
                }
            }
        }
        if (!decided)
            return fail("residual", "membership of residual at node " + vtos(x) +
                                        " unverifiable (no nested certificate, no oracle)");
        if (!member)
            return fail("residual", "residual graph at node " + vtos(x) + " not in " +
                                        std::string(1, d.variant) + "_" + vtos(sub_level));
    }
    return {};
}

ValidationReport validate(const LayeredRSDecomposition& d, const Graph& g) {
    int k = d.tree.n();
    if (static_cast<int>(d.W.size()) != k || static_cast<int>(d.A.size()) != k ||
        static_cast<int>(d.D.size()) != k || static_cast<int>(d.L.size()) != k)
        return fail("schema", "per-node sequences disagree with |V(T)|");
    if (k == 0) return fail("schema", "empty index tree");
    if (!d.tree.is_tree()) return fail("schema", "index graph is not a tree");
    TreeDecomposition outer{d.tree, d.W, std::nullopt};
    auto rep = validate(outer, g);
    if (!rep.ok) return fail("lrs1", "outer decomposition invalid: " + rep.clause + " (" + rep.detail + ")");
    if (outer.adhesion() > d.c)
        return fail("lrs1", "adhesion " + vtos(outer.adhesion()) + " exceeds c=" + vtos(d.c));
    for (int x = 0; x < k; ++x) {
        if (!subset_minus(d.A[x], d.W[x]).empty())
            return fail("lrs2", "A_" + vtos(x) + " not inside W_" + vtos(x));
        if (static_cast<int>(d.A[x].size()) > d.c)
            return fail("lrs2", "|A_" + vtos(x) + "| = " + vtos(d.A[x].size()) + " exceeds c");
    }
    for (int x = 0; x < k; ++x) {
        Graph t = torso(g, outer, x); // torso labels follow sorted W_x
        // relabel torso-A to local ids for the validators
        VertexSubset keep = subset_minus(d.W[x], d.A[x]);
        std::vector<int> local_of(g.n(), -1);
        for (size_t i = 0; i < keep.size(); ++i) local_of[keep[i]] = static_cast<int>(i);
        const VertexSubset& wx = d.W[x];
        Graph local(static_cast<int>(keep.size()));
        for (const auto& [u, v] : t.edges()) {
            int hu = wx[u], hv = wx[v];
            if (local_of[hu] >= 0 && local_of[hv] >= 0)
                local.add_edge(local_of[hu], local_of[hv]);
        }
        // D_x must be a tree decomposition of torso - A_x
        TreeDecomposition dx = d.D[x];
        // bags of D are given in host labels; relabel
        for (auto& b : dx.bags) {
            VertexSubset nb;
            for (int v : b) {
                if (v < 0 || v >= g.n() || local_of[v] == -1)
                    return fail("lrs3", "D_{" + vtos(x) + "} bag vertex " + vtos(v) +
                                            " outside torso-A");
                nb.push_back(local_of[v]);
            }
            b = sorted_unique(nb);
        }
        auto drep = validate(dx, local);
        if (!drep.ok)
            return fail("lrs3", "D_{" + vtos(x) + "} invalid: " + drep.clause + " (" + drep.detail + ")");
        // L_x must be a layering of torso - A_x (given in host labels)
        Layering lx;
        for (const auto& layer : d.L[x].layers) {
            VertexSubset nl;
            for (int v : layer) {
                if (v < 0 || v >= g.n() || local_of[v] == -1)
                    return fail("lrs4", "L_{" + vtos(x) + "} vertex " + vtos(v) + " outside torso-A");
                nl.push_back(local_of[v]);
            }
            lx.layers.push_back(sorted_unique(nl));
        }
        std::string why;
        if (!layering_valid(local, lx, &why))
            return fail("lrs4", "L_{" + vtos(x) + "} invalid: " + why);
        for (size_t z = 0; z < dx.bags.size(); ++z)
            for (size_t i = 0; i < lx.layers.size(); ++i)
                if (static_cast<int>(subset_intersect(dx.bags[z], lx.layers[i]).size()) > d.c)
                    return fail("lrs5", "|D_{" + vtos(x) + "," + vtos(z) + "} cap L_{" + vtos(x) +
                                            "," + vtos(i) + "}| exceeds c=" + vtos(d.c));
    }
    return {};
}

ValidationReport validate_certificate(const Certificate& c, const Graph& g,
                                      const ClassOracle& oracle) {
    return std::visit(
        [&](const auto& d) -> ValidationReport {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, RootedForestDecomposition>)
                return validate(d, g, oracle);
            else
                return validate(d, g);
        },
        c);
}

// ---------------------------------------------------------------------------
// Rooted-tree helpers
// ---------------------------------------------------------------------------

std::vector<int> tree_parents(const Graph& tree, int root) {
    std::vector<int> parent(tree.n(), -2);
    std::deque<int> q{root};
    parent[root] = -1;
    while (!q.empty()) {
        int u = q.front();
        q.pop_front();
        for (int w : tree.neighbors(u))
            if (parent[w] == -2) {
                parent[w] = u;
                q.push_back(w);
            }
    }
    return parent;
}

std::vector<int> tree_depths(const Graph& tree, int root) {
    auto parent = tree_parents(tree, root);
    std::vector<int> depth(tree.n(), -1);
    for (int u : tree_topdown(tree, root)) depth[u] = parent[u] == -1 ? 0 : depth[parent[u]] + 1;
    return depth;
}

std::vector<int> tree_topdown(const Graph& tree, int root) {
    auto parent = tree_parents(tree, root);
    std::vector<int> order;
    std::deque<int> q{root};
    while (!q.empty()) {
        int u = q.front();
        q.pop_front();
        order.push_back(u);
        std::vector<int> kids;
        for (int w : tree.neighbors(u))
            if (parent[w] == u) kids.push_back(w);
        std::sort(kids.begin(), kids.end());
        for (int w : kids) q.push_back(w);
    }
    return order;
}

int tree_lca(const std::vector<int>& parent, const std::vector<int>& depth, int u, int v) {
    while (depth[u] > depth[v]) u = parent[u];
    while (depth[v] > depth[u]) v = parent[v];
    while (u != v) {
        u = parent[u];
        v = parent[v];
    }
    return u;
}

// ---------------------------------------------------------------------------
// Elimination orderings
// ---------------------------------------------------------------------------

VertexOrdering elimination_ordering(const TreeDecomposition& d, const Graph& g) {
    auto rep = validate(d, g);
    if (!rep.ok) throw std::runtime_error("elimination_ordering: invalid decomposition: " + rep.clause);
    VertexOrdering out;
    std::vector<char> placed(g.n(), 0);
    for (const auto& comp : connected_components(d.tree)) {
        int root = d.root && subset_contains(comp, d.root_or_default()) ? d.root_or_default()
                                                                        : comp[0];
        // walk the whole component top-down from its root
        std::vector<int> order;
        {
            auto parent = tree_parents(d.tree, root);
            std::deque<int> q{root};
            while (!q.empty()) {
                int u = q.front();
                q.pop_front();
                order.push_back(u);
                std::vector<int> kids;
                for (int w : d.tree.neighbors(u))
                    if (parent[w] == u) kids.push_back(w);
                std::sort(kids.begin(), kids.end());
                for (int w : kids) q.push_back(w);
            }
        }
        for (int x : order)
            for (int v : d.bags[x])
                if (!placed[v]) {
                    placed[v] = 1;
                    out.sequence.push_back(v);
                }
    }
    return out;
}

bool elimination_ordering_valid(const TreeDecomposition& d, const Graph& g,
                                const VertexOrdering& ord, std::string* why) {
    if (static_cast<int>(ord.sequence.size()) != g.n()) {
        if (why) *why = "not a permutation of V(G)";
        return false;
    }
    std::vector<int> pos(g.n(), -1);
    for (size_t i = 0; i < ord.sequence.size(); ++i) {
        int v = ord.sequence[i];
        if (v < 0 || v >= g.n() || pos[v] != -1) {
            if (why) *why = "not a permutation of V(G)";
            return false;
        }
        pos[v] = static_cast<int>(i);
    }
    for (int i = 0; i < g.n(); ++i) {
        int u = ord.sequence[i];
        // union of bags holding u, restricted to earlier vertices
        VertexSubset earlier;
        for (size_t x = 0; x < d.bags.size(); ++x)
            if (subset_contains(d.bags[x], u))
                for (int w : d.bags[x])
                    if (pos[w] < i) earlier.push_back(w);
        earlier = sorted_unique(earlier);
        bool fits = false;
        for (const auto& b : d.bags)
            if (subset_minus(earlier, b).empty()) {
                fits = true;
                break;
            }
        if (!fits) {
            if (why) *why = "prefix neighborhood of vertex " + vtos(u) + " fits in no bag";
            return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// make_natural / refine_natural
// ---------------------------------------------------------------------------

bool is_natural(const Graph& g, const TreeDecomposition& d) {
    for (const auto& [x, y] : d.tree.edges()) {
        for (int side = 0; side < 2; ++side) {
            int a = side ? y : x, b = side ? x : y;
            // component of a in tree - ab
            std::vector<char> blocked(d.tree.n(), 0);
            std::vector<int> nodes;
            std::deque<int> q{a};
            std::vector<char> seen(d.tree.n(), 0);
            seen[a] = 1;
            while (!q.empty()) {
                int u = q.front();
                q.pop_front();
                nodes.push_back(u);
                for (int w : d.tree.neighbors(u)) {
                    if (u == a && w == b) continue;
                    if (!seen[w]) {
                        seen[w] = 1;
                        q.push_back(w);
                    }
                }
            }
            VertexSubset side_vertices;
            for (int u : nodes) side_vertices = subset_union(side_vertices, d.bags[u]);
            if (side_vertices.empty()) continue;
            if (components_within(g, side_vertices).size() != 1) return false;
        }
    }
    return true;
}

namespace {

struct NormalPair {
    TreeDecomposition dec;
    std::vector<std::vector<int>> classes; // subtree partition
    std::vector<int> node_map;             // to the original decomposition's nodes
    std::vector<int> class_map;            // to the original partition's classes
};

// bag-size profile n(W), compared lexicographically from large sizes down
std::vector<long long> size_profile(const TreeDecomposition& d, int nvertices) {
    std::vector<long long> prof(nvertices + 1, 0);
    for (const auto& b : d.bags) prof[nvertices - static_cast<int>(b.size())]++;
    return prof;
}

// One splitting round: returns true when a split happened.
bool split_once(const Graph& g, NormalPair& np) {
    const TreeDecomposition& d = np.dec;
    auto edges = d.tree.edges();
    std::sort(edges.begin(), edges.end());
    for (const auto& e : edges) {
        for (int side = 0; side < 2; ++side) {
            int x = side ? e.second : e.first;
            int y = side ? e.first : e.second;
            // nodes of T_{x|y}
            std::vector<int> xside;
            {
                std::vector<char> seen(d.tree.n(), 0);
                std::deque<int> q{x};
                seen[x] = 1;
                while (!q.empty()) {
                    int u = q.front();
                    q.pop_front();
                    xside.push_back(u);
                    for (int w : d.tree.neighbors(u)) {
                        if (u == x && w == y) continue;
                        if (!seen[w]) {
                            seen[w] = 1;
                            q.push_back(w);
                        }
                    }
                }
                std::sort(xside.begin(), xside.end());
            }
            VertexSubset side_vertices;
            for (int u : xside) side_vertices = subset_union(side_vertices, d.bags[u]);
            if (side_vertices.empty()) continue;
            auto comps = components_within(g, side_vertices);
            if (comps.size() <= 1) continue;

            // split: y-side nodes persist, x-side nodes become per-component copies
            std::vector<char> on_xside(d.tree.n(), 0);
            for (int u : xside) on_xside[u] = 1;
            std::vector<int> keep; // y-side nodes, old ids
            for (int u = 0; u < d.tree.n(); ++u)
                if (!on_xside[u]) keep.push_back(u);
            int nkeep = static_cast<int>(keep.size());
            int ncomp = static_cast<int>(comps.size());
            int nnodes = nkeep + ncomp * static_cast<int>(xside.size());
            std::vector<int> new_of_keep(d.tree.n(), -1), new_of_xside(d.tree.n(), -1);
            for (int i = 0; i < nkeep; ++i) new_of_keep[keep[i]] = i;
            for (size_t i = 0; i < xside.size(); ++i)
                new_of_xside[xside[i]] = static_cast<int>(i);

            TreeDecomposition nd;
            nd.tree = Graph(nnodes);
            nd.bags.assign(nnodes, {});
            std::vector<int> nmap(nnodes, -1);
            auto copy_id = [&](int c, int old) {
                return nkeep + c * static_cast<int>(xside.size()) + new_of_xside[old];
            };
            for (int i = 0; i < nkeep; ++i) {
                nd.bags[i] = d.bags[keep[i]];
                nmap[i] = np.node_map[keep[i]];
            }
            for (int c = 0; c < ncomp; ++c)
                for (int old : xside) {
                    int id = copy_id(c, old);
                    nd.bags[id] = subset_intersect(d.bags[old], comps[c]);
                    nmap[id] = np.node_map[old];
                }
            for (const auto& [a, b] : d.tree.edges()) {
                if (a == e.first && b == e.second) continue; // rebuilt below
                if (!on_xside[a] && !on_xside[b]) {
                    nd.tree.add_edge(new_of_keep[a], new_of_keep[b]);
                } else if (on_xside[a] && on_xside[b]) {
                    for (int c = 0; c < ncomp; ++c) nd.tree.add_edge(copy_id(c, a), copy_id(c, b));
                } else {
                    // impossible: xy is the only edge across the split
                    throw std::logic_error("make_natural: side computation broken");
                }
            }
            for (int c = 0; c < ncomp; ++c) nd.tree.add_edge(copy_id(c, x), new_of_keep[y]);
            if (d.root) {
                int r = *d.root;
                nd.root = on_xside[r] ? copy_id(0, r) : new_of_keep[r];
            }

            // rebuild the subtree partition and its class map
            std::vector<std::vector<int>> nclasses;
            std::vector<int> ncmap;
            for (size_t ci = 0; ci < np.classes.size(); ++ci) {
                const auto& cls = np.classes[ci];
                bool meets_yside = false;
                for (int u : cls)
                    if (!on_xside[u]) meets_yside = true;
                if (meets_yside) {
                    std::vector<int> nc;
                    for (int u : cls) {
                        if (!on_xside[u])
                            nc.push_back(new_of_keep[u]);
                        else
                            for (int c = 0; c < ncomp; ++c) nc.push_back(copy_id(c, u));
                    }
                    std::sort(nc.begin(), nc.end());
                    nclasses.push_back(std::move(nc));
                    ncmap.push_back(np.class_map[ci]);
                } else {
                    for (int c = 0; c < ncomp; ++c) {
                        std::vector<int> nc;
                        for (int u : cls) nc.push_back(copy_id(c, u));
                        std::sort(nc.begin(), nc.end());
                        nclasses.push_back(std::move(nc));
                        ncmap.push_back(np.class_map[ci]);
                    }
                }
            }
            np.dec = std::move(nd);
            np.classes = std::move(nclasses);
            np.node_map = std::move(nmap);
            np.class_map = std::move(ncmap);
            return true;
        }
    }
    return false;
}

NormalPair refine_impl(const Graph& g, const TreeDecomposition& u, const SubtreePartition& p) {
    if (!g.connected()) throw std::runtime_error("refine_natural: disconnected input rejected");
    auto rep = validate(u, g);
    if (!rep.ok) throw std::runtime_error("refine_natural: invalid decomposition: " + rep.clause);
    if (!u.tree.is_tree()) throw std::runtime_error("refine_natural: index graph must be a tree");
    // check the subtree partition
    std::vector<int> cls_of(u.tree.n(), -1);
    for (size_t i = 0; i < p.classes.size(); ++i) {
        if (p.classes[i].empty()) throw std::runtime_error("refine_natural: empty class");
        for (int x : p.classes[i]) {
            if (x < 0 || x >= u.tree.n() || cls_of[x] != -1)
                throw std::runtime_error("refine_natural: classes do not partition the nodes");
            cls_of[x] = static_cast<int>(i);
        }
        VertexSubset nodes(p.classes[i].begin(), p.classes[i].end());
        std::sort(nodes.begin(), nodes.end());
        if (components_within(u.tree, nodes).size() != 1)
            throw std::runtime_error("refine_natural: class not connected in the tree");
    }
    for (int x = 0; x < u.tree.n(); ++x)
        if (cls_of[x] == -1) throw std::runtime_error("refine_natural: node uncovered by classes");

    NormalPair np;
    np.dec = u;
    np.classes = p.classes;
    np.node_map.resize(u.tree.n());
    std::iota(np.node_map.begin(), np.node_map.end(), 0);
    np.class_map.resize(p.classes.size());
    std::iota(np.class_map.begin(), np.class_map.end(), 0);
    auto profile = size_profile(np.dec, g.n());
    while (split_once(g, np)) {
        auto next = size_profile(np.dec, g.n());
        if (!(next < profile))
            throw std::logic_error("make_natural: termination measure did not decrease");
        profile = std::move(next);
    }
    return np;
}

} // namespace

TreeDecomposition make_natural(const Graph& g, const TreeDecomposition& d) {
    SubtreePartition whole;
    whole.classes.push_back({});
    for (int x = 0; x < d.tree.n(); ++x) whole.classes[0].push_back(x);
    return refine_impl(g, d, whole).dec;
}

RefineResult refine_natural(const Graph& g, const TreeDecomposition& u,
                            const SubtreePartition& p) {
    auto np = refine_impl(g, u, p);
    RefineResult out;
    out.decomposition = std::move(np.dec);
    out.partition.classes = std::move(np.classes);
    out.node_map = std::move(np.node_map);
    out.class_map = std::move(np.class_map);
    return out;
}

// ---------------------------------------------------------------------------
// LCA closure and friends
// ---------------------------------------------------------------------------

std::vector<int> lca_closure(const Graph& tree, int root, const std::vector<int>& nodes) {
    if (nodes.empty()) throw std::runtime_error("lca_closure: empty node set");
    for (int u : nodes)
        if (u < 0 || u >= tree.n()) throw std::runtime_error("lca_closure: node outside tree");
    auto parent = tree_parents(tree, root);
    auto depth = tree_depths(tree, root);
    for (int u : nodes)
        if (depth[u] < 0) throw std::runtime_error("lca_closure: node outside the rooted tree");
    std::set<int> closure;
    for (int u : nodes)
        for (int v : nodes) closure.insert(tree_lca(parent, depth, u, v));
    return {closure.begin(), closure.end()};
}

SmallInterfaces small_interfaces(const Graph& g, const TreeDecomposition& d,
                                 const std::vector<int>& nodes) {
    auto rep = validate(d, g);
    if (!rep.ok) throw std::runtime_error("small_interfaces: invalid decomposition: " + rep.clause);
    auto closure = lca_closure(d.tree, d.root_or_default(), nodes);
    SmallInterfaces out;
    out.closure = closure;
    for (int x : closure) out.z = subset_union(out.z, d.bags[x]);
    return out;
}

// ---------------------------------------------------------------------------
// Helly pack-or-cover
// ---------------------------------------------------------------------------

PackOrCover helly_pack_or_cover(const Graph& g, const TreeDecomposition& d,
                                const SubgraphFamily& f, int dbound) {
    auto rep = validate(d, g);
    if (!rep.ok) throw std::runtime_error("helly_pack_or_cover: invalid decomposition: " + rep.clause);
    std::string why;
    if (!family_valid(g, f, &why))
        throw std::runtime_error("helly_pack_or_cover: invalid family: " + why);
    if (dbound < 0) throw std::runtime_error("helly_pack_or_cover: negative d");
    int root = d.root_or_default();
    // root each tree component at its minimum node (or the given root)
    std::vector<int> depth(d.tree.n(), -1), parent(d.tree.n(), -2);
    for (const auto& comp : connected_components(d.tree)) {
        int r = subset_contains(comp, root) ? root : comp[0];
        auto par = tree_parents(d.tree, r);
        for (int u : comp) parent[u] = par[u];
        auto dep = tree_depths(d.tree, r);
        for (int u : comp) depth[u] = dep[u];
    }
    // subtree root (shallowest holder node) per member
    std::vector<int> member_root(f.members.size(), -1);
    for (size_t i = 0; i < f.members.size(); ++i) {
        int best = -1;
        for (int x = 0; x < d.tree.n(); ++x) {
            if (subset_intersect(d.bags[x], f.members[i]).empty()) continue;
            if (best == -1 || depth[x] < depth[best] || (depth[x] == depth[best] && x < best))
                best = x;
        }
        if (best == -1)
            throw std::runtime_error("helly_pack_or_cover: member " + vtos(i) + " meets no bag");
        member_root[i] = best;
    }
    std::vector<char> discarded(f.members.size(), 0);
    Packing packing;
    Cover cover;
    for (;;) {
        int pick = -1;
        for (size_t i = 0; i < f.members.size(); ++i) {
            if (discarded[i]) continue;
            if (pick == -1 || depth[member_root[i]] > depth[member_root[pick]] ||
                (depth[member_root[i]] == depth[member_root[pick]] &&
                 member_root[i] < member_root[pick]))
                pick = static_cast<int>(i);
        }
        if (pick == -1) break;
        int node = member_root[pick];
        packing.member_indices.push_back(pick);
        cover.nodes.push_back(node);
        for (size_t i = 0; i < f.members.size(); ++i)
            if (!discarded[i] && !subset_intersect(d.bags[node], f.members[i]).empty())
                discarded[i] = 1;
        if (static_cast<int>(packing.member_indices.size()) > dbound) return packing;
    }
    return cover;
}

// ---------------------------------------------------------------------------
// Torsos
// ---------------------------------------------------------------------------

Graph torso(const Graph& g, const TreeDecomposition& d, int node) {
    if (node < 0 || node >= d.tree.n()) throw std::runtime_error("torso: invalid node");
    const VertexSubset& w = d.bags[node];
    std::vector<int> local_of(g.n(), -1);
    for (size_t i = 0; i < w.size(); ++i) local_of[w[i]] = static_cast<int>(i);
    Graph t(static_cast<int>(w.size()));
    for (const auto& [u, v] : g.edges())
        if (local_of[u] >= 0 && local_of[v] >= 0) t.add_edge(local_of[u], local_of[v]);
    for (int y : d.tree.neighbors(node)) {
        auto adh = subset_intersect(w, d.bags[y]);
        for (size_t i = 0; i < adh.size(); ++i)
            for (size_t j = i + 1; j < adh.size(); ++j) {
                int a = local_of[adh[i]], b = local_of[adh[j]];
                if (!t.has_edge(a, b)) t.add_edge(a, b);
            }
    }
    return t;
}

bool torso_connectivity_check(const Graph& g, const TreeDecomposition& d, int node,
                              const VertexSubset& h_vertices) {
    Graph t = torso(g, d, node);
    const VertexSubset& w = d.bags[node];
    std::vector<int> local_of(g.n(), -1);
    for (size_t i = 0; i < w.size(); ++i) local_of[w[i]] = static_cast<int>(i);
    VertexSubset trace;
    for (int v : h_vertices)
        if (v >= 0 && v < g.n() && local_of[v] >= 0) trace.push_back(local_of[v]);
    trace = sorted_unique(trace);
    if (trace.empty()) return false;
    return components_within(t, trace).size() == 1;
}

// ---------------------------------------------------------------------------
// LCA / subtree-partition compatibility
// ---------------------------------------------------------------------------

namespace {

std::set<int> classes_meeting(const SubtreePartition& q, const std::vector<int>& nodes) {
    std::set<int> out;
    for (size_t i = 0; i < q.classes.size(); ++i)
        for (int x : q.classes[i])
            if (std::find(nodes.begin(), nodes.end(), x) != nodes.end()) {
                out.insert(static_cast<int>(i));
                break;
            }
    return out;
}

} // namespace

bool lca_stuff_check(const Graph& tree, int root, const SubtreePartition& q,
                     const std::vector<int>& x, const std::vector<int>& y) {
    // preconditions: X subset of Y, LCA(T,X) = X, Q(X) = Q(Y)
    for (int u : x)
        if (std::find(y.begin(), y.end(), u) == y.end())
            throw std::runtime_error("lca_stuff_check: X not inside Y");
    auto xc = lca_closure(tree, root, x);
    if (VertexSubset(xc.begin(), xc.end()) != sorted_unique(VertexSubset(x.begin(), x.end())))
        throw std::runtime_error("lca_stuff_check: X not LCA-closed");
    if (classes_meeting(q, x) != classes_meeting(q, y))
        throw std::runtime_error("lca_stuff_check: Q(X) != Q(Y)");
    auto yc = lca_closure(tree, root, y);
    return classes_meeting(q, y) == classes_meeting(q, yc);
}

} // namespace sparsity
