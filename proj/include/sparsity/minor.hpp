#ifndef SPARSITY_MINOR_HPP
#define SPARSITY_MINOR_HPP

#include <map>
#include <optional>
#include <string>

#include "sparsity/graph.hpp"

namespace sparsity {

// Branch sets of a minor model: minor-vertex id -> host vertex set.
struct MinorModel {
    std::map<int, VertexSubset> branch_sets;
};

// Family F of connected subgraphs of a named host graph, stored as vertex
// sets; each member must be nonempty and induce a connected subgraph.
struct SubgraphFamily {
    std::vector<VertexSubset> members;
};

bool family_valid(const Graph& g, const SubgraphFamily& f, std::string* why = nullptr);

// Checks the three model invariants (pairwise disjoint, connected branch
// sets, one host edge per minor edge), plus the rooted/rich side conditions
// when given.
bool model_valid(const Graph& g, const Graph& x, const MinorModel& m,
                 const VertexSubset* rooted_at = nullptr,
                 const SubgraphFamily* rich = nullptr,
                 std::string* why = nullptr);

struct ModelSearchLimits {
    int max_minor = -1; // override for the |V(X)| <= 6 default
    int max_host = -1;  // override for the |V(G)| <= 14 default
};

// Exhaustive branch-set search with connectivity pruning. Deterministic: the
// first model in enumeration order is returned; absence is exhaustive.
// Throws GuardError past the size guard.
std::optional<MinorModel> find_model(const Graph& g, const Graph& x,
                                     const VertexSubset* rooted_at = nullptr,
                                     ModelSearchLimits limits = {});

// Model where every branch set contains some member of F.
std::optional<MinorModel> find_frich_model(const Graph& g, const SubgraphFamily& f,
                                           const Graph& x,
                                           ModelSearchLimits limits = {});

bool has_model(const Graph& g, const Graph& x,
               const VertexSubset* rooted_at = nullptr, ModelSearchLimits limits = {});
bool has_frich_model(const Graph& g, const SubgraphFamily& f, const Graph& x,
                     ModelSearchLimits limits = {});

// All connected vertex sets of g[allowed], ascending enumeration order.
std::vector<VertexSubset> connected_subsets(const Graph& g, const VertexSubset& allowed);

} // namespace sparsity

#endif
