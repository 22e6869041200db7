#ifndef SPARSITY_DECOMP_HPP
#define SPARSITY_DECOMP_HPP

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "sparsity/graph.hpp"
#include "sparsity/minor.hpp"

namespace sparsity {

// ---------------------------------------------------------------------------
// Certificate types
// ---------------------------------------------------------------------------

struct TreeDecomposition {
    Graph tree;                    // a tree/forest on nodes 0..k-1
    std::vector<VertexSubset> bags; // one bag per node
    std::optional<int> root;       // defaults to node 0 where a root is needed

    int width() const;
    int adhesion() const;
    int root_or_default() const { return root.value_or(0); }
};

struct PathDecomposition {
    std::vector<VertexSubset> bags;
    int width() const;
};

struct TreePartition {
    Graph tree;
    int root = 0;
    std::vector<VertexSubset> parts; // nonempty, one per tree node
    VertexSubset focus;              // the set S being partitioned
};

struct RootedForestDecomposition {
    std::vector<int> parents; // -1 for roots
    std::vector<VertexSubset> bags;
    char variant = 'R'; // 'R' or 'S'
    int level = 0;      // claimed t
    // Optional nested certificates for residual graphs G[W_x \ W_parent(x)],
    // keyed by node; residual vertices are relabeled by sorted order.
    std::map<int, std::shared_ptr<RootedForestDecomposition>> residuals;
};

struct LayeredRSDecomposition {
    Graph tree;                            // T
    std::vector<VertexSubset> W;           // bags of the outer decomposition
    std::vector<VertexSubset> A;           // apex sets
    std::vector<TreeDecomposition> D;      // per-node decompositions of torso-A
    std::vector<Layering> L;               // per-node layerings of torso-A
    int c = 0;                             // claimed width
};

using Certificate = std::variant<TreeDecomposition, PathDecomposition, TreePartition,
                                 RootedForestDecomposition, LayeredRSDecomposition>;

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

struct ValidationReport {
    bool ok = true;
    std::string clause;  // first violated clause, empty when ok
    std::string detail;  // concrete counterexample (vertex/edge/node ids)
};

// Decides membership of a residual graph in R_t / S_t when no nested
// certificate is available; returns nullopt when undecidable (e.g. guard).
using ClassOracle = std::function<std::optional<bool>(const Graph&, char variant, int level)>;

ValidationReport validate(const TreeDecomposition& d, const Graph& g);
ValidationReport validate(const PathDecomposition& d, const Graph& g);
ValidationReport validate(const TreePartition& d, const Graph& g);
ValidationReport validate(const RootedForestDecomposition& d, const Graph& g,
                          const ClassOracle& oracle = nullptr);
ValidationReport validate(const LayeredRSDecomposition& d, const Graph& g);
ValidationReport validate_certificate(const Certificate& c, const Graph& g,
                                      const ClassOracle& oracle = nullptr);

// ---------------------------------------------------------------------------
// Rooted-tree helpers
// ---------------------------------------------------------------------------

// Parent array of `tree` rooted at `root` (parent[root] = -1).
std::vector<int> tree_parents(const Graph& tree, int root);
std::vector<int> tree_depths(const Graph& tree, int root);
// Nodes in root-down order (parents before children, children by id).
std::vector<int> tree_topdown(const Graph& tree, int root);
int tree_lca(const std::vector<int>& parent, const std::vector<int>& depth, int u, int v);

// ---------------------------------------------------------------------------
// Transformations
// ---------------------------------------------------------------------------

struct VertexOrdering {
    std::vector<int> sequence;
};

// Root-down bag sweep; the result satisfies the bag-compatibility condition
// (earlier vertices sharing a bag with u_i all fit in one bag).
VertexOrdering elimination_ordering(const TreeDecomposition& d, const Graph& g);
// Independent definition-level checker for elimination orderings.
bool elimination_ordering_valid(const TreeDecomposition& d, const Graph& g,
                                const VertexOrdering& ord, std::string* why = nullptr);

// Subtree partition of a tree decomposition's tree: connected node sets.
struct SubtreePartition {
    std::vector<std::vector<int>> classes; // node ids, pairwise disjoint, covering
};

struct RefineResult {
    TreeDecomposition decomposition;      // natural refinement V
    SubtreePartition partition;           // Q
    std::vector<int> node_map;            // f : nodes of V -> nodes of U
    std::vector<int> class_map;           // g : classes of Q -> classes of P
};

// Splits offending tree sides into per-component copies until every side of
// every tree edge induces a connected host subgraph. Requires G connected.
TreeDecomposition make_natural(const Graph& g, const TreeDecomposition& d);
RefineResult refine_natural(const Graph& g, const TreeDecomposition& u,
                            const SubtreePartition& p);
bool is_natural(const Graph& g, const TreeDecomposition& d);

// X = {lca(u,v) : u,v in Y}; |X| <= 2|Y|-1 and every component of T-X has at
// most 2 neighbors in T.
std::vector<int> lca_closure(const Graph& tree, int root, const std::vector<int>& nodes);

struct SmallInterfaces {
    VertexSubset z;               // union of bags over the closure
    std::vector<int> closure;     // the closed node set
};
SmallInterfaces small_interfaces(const Graph& g, const TreeDecomposition& d,
                                 const std::vector<int>& nodes);

struct Packing {
    std::vector<int> member_indices; // >= d+1 pairwise disjoint members
};
struct Cover {
    std::vector<int> nodes; // <= d nodes whose bag union hits every member
};
using PackOrCover = std::variant<Packing, Cover>;

// Deepest-subtree-root greedy; ties by node id. Returns a packing of d+1
// pairwise disjoint members or a cover of <= d nodes.
PackOrCover helly_pack_or_cover(const Graph& g, const TreeDecomposition& d,
                                const SubgraphFamily& f, int dbound);

Graph torso(const Graph& g, const TreeDecomposition& d, int node);

// V(H) cap W_x induces a connected subgraph of the torso (true for every
// connected H meeting the bag).
bool torso_connectivity_check(const Graph& g, const TreeDecomposition& d, int node,
                              const VertexSubset& h_vertices);

// Q(Y) = Q(LCA(T,Y)) under the stated preconditions.
bool lca_stuff_check(const Graph& tree, int root, const SubtreePartition& q,
                     const std::vector<int>& x, const std::vector<int>& y);

} // namespace sparsity

#endif
