#ifndef SPARSITY_ORACLE_HPP
#define SPARSITY_ORACLE_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sparsity/decomp.hpp"
#include "sparsity/graph.hpp"

namespace sparsity {

using Rational = boost::rational<boost::multiprecision::cpp_int>;

Rational parse_rational(const std::string& s);
std::string rational_to_string(const Rational& r);

// ---------------------------------------------------------------------------
// Witness-side domain types
// ---------------------------------------------------------------------------

struct Coloring {
    std::map<int, int> assignment; // total on its domain
    int palette_size = 0;
};

struct WeightFunction {
    std::map<int, Rational> weights; // total on V(G)
};

struct FragilityWitness {
    std::vector<VertexSubset> sets; // Y subsets of S
    std::vector<Rational> probs;    // exact, summing to 1
    int q = 1;
    int k = 0; // claimed bound
};

// Rooted forest on the vertices of a graph (parent[v] = -1 for roots).
struct EliminationForest {
    std::vector<int> parent;
    int vertex_height() const;
    bool closure_contains(const Graph& g, std::string* why = nullptr) const;
};

struct SolverLimits {
    int max_n = -1; // explicit override of the default guard
};

// ---------------------------------------------------------------------------
// Weak coloring numbers
// ---------------------------------------------------------------------------

// Weakly q-reachable set from u under an ordering of S.
VertexSubset wreach(const Graph& g, const VertexSubset& s, const VertexOrdering& sigma,
                    int u, int q);
int wcol_eval(const Graph& g, const VertexSubset& s, const VertexOrdering& sigma, int q);

// max_u |WReach| minimized over orderings; branch and bound with component
// splitting. Guard default n <= 12.
std::pair<int, VertexOrdering> wcol_exact(const Graph& g, int q, SolverLimits lim = {});
std::pair<int, VertexOrdering> wcol_focused_exact(const Graph& g, const VertexSubset& s,
                                                  int q, SolverLimits lim = {});

// ---------------------------------------------------------------------------
// Centered chromatic numbers
// ---------------------------------------------------------------------------

bool cen_check(const Graph& g, const Coloring& phi, int q, SolverLimits lim = {});
std::pair<int, Coloring> cen_exact(const Graph& g, int q, SolverLimits lim = {});

// Focused, precolored variant: psi on S, three-clause definition.
bool cen_focused_check(const Graph& g, const Coloring& phi, const VertexSubset& s,
                       const Coloring& psi, int q, SolverLimits lim = {});
std::pair<int, Coloring> cen_focused_exact(const Graph& g, const Coloring& phi,
                                           const VertexSubset& s, int q,
                                           SolverLimits lim = {});

// ---------------------------------------------------------------------------
// Treedepth family
// ---------------------------------------------------------------------------

std::pair<int, EliminationForest> td_exact(const Graph& g, SolverLimits lim = {});
int ftd_exact(const Graph& g, const VertexSubset& s, SolverLimits lim = {});
int wtd_exact(const Graph& g, const WeightFunction& t, SolverLimits lim = {});

int td2_exact(const Graph& g, SolverLimits lim = {});
int rtd2_exact(const Graph& g, SolverLimits lim = {});
int srtd2_exact(const Graph& g, SolverLimits lim = {});
// Exhaustive rooted-forest-decomposition search certifying S_t membership.
int srtd2_bruteforce(const Graph& g, SolverLimits lim = {});
// Same machinery for R_t, used as the independent route for rtd2.
int rtd2_bruteforce(const Graph& g, SolverLimits lim = {});

// ---------------------------------------------------------------------------
// Fragility rates
// ---------------------------------------------------------------------------

std::pair<int, FragilityWitness> frate_exact(const Graph& g, const VertexSubset& s, int q,
                                             SolverLimits lim = {});

// Exact-rational verification of the FragilityWitness invariants against its
// graph context: probabilities sum to 1, per-vertex coverage <= 1/q, and
// (when check_ftd) ftd(G-Y, S\Y) <= k for every Y.
bool qthin_check(const Graph& g, const VertexSubset& s, const FragilityWitness& w,
                 bool check_ftd = true, std::string* why = nullptr);

// ---------------------------------------------------------------------------
// Width parameters
// ---------------------------------------------------------------------------

std::pair<int, TreeDecomposition> tw_exact(const Graph& g, SolverLimits lim = {});
std::pair<int, PathDecomposition> pw_exact(const Graph& g, SolverLimits lim = {});

long long binomial(int n, int k);
int ceil_log2(long long x); // smallest s with 2^s >= x, log base 2 throughout

} // namespace sparsity

#endif
