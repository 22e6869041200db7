#include <algorithm>
#include <deque>
#include <numeric>

#include "sparsity/guard.hpp"
#include "sparsity/oracle.hpp"

namespace sparsity {

namespace {

using Mask = uint32_t;

// vertices outside W u {v} reachable from v through W
int through_degree(const Graph& g, Mask w, int v) {
    Mask seen = Mask(1) << v;
    std::deque<int> q{v};
    int count = 0;
    while (!q.empty()) {
        int u = q.front();
        q.pop_front();
        for (int x : g.neighbors(u)) {
            if (seen >> x & 1) continue;
            seen |= Mask(1) << x;
            if (w >> x & 1)
                q.push_back(x); // pass through eliminated vertices
            else
                ++count;
        }
    }
    return count;
}

std::vector<int> reconstruct_order(const Graph& g, const std::vector<int>& dp, bool pathwidth) {
    int n = g.n();
    std::vector<int> order(n, -1);
    Mask u = (n >= 32 ? ~Mask(0) : (Mask(1) << n) - 1);
    auto boundary = [&](Mask m) {
        int b = 0;
        for (Mask f = m; f;) {
            int v = __builtin_ctz(f);
            f &= f - 1;
            for (int w : g.neighbors(v))
                if (!(m >> w & 1)) {
                    ++b;
                    break;
                }
        }
        return b;
    };
    for (int i = n - 1; i >= 0; --i) {
        int pick = -1;
        for (int v = 0; v < n; ++v) {
            if (!(u >> v & 1)) continue;
            Mask rest = u & ~(Mask(1) << v);
            int step = pathwidth ? boundary(u) : through_degree(g, rest, v);
            if (std::max(dp[rest], step) == dp[u]) {
                pick = v;
                break;
            }
        }
        if (pick == -1) throw std::logic_error("width witness reconstruction failed");
        order[i] = pick;
        u &= ~(Mask(1) << pick);
    }
    return order;
}

} // namespace

std::pair<int, TreeDecomposition> tw_exact(const Graph& g, SolverLimits lim) {
    check_guard(g.n(), 12, lim.max_n, "tw_exact");
    if (g.n() >= 31) throw GuardError("tw_exact: mask overflow");
    int n = g.n();
    if (n == 0) {
        TreeDecomposition d;
        d.tree = Graph(1);
        d.bags = {{}};
        return {-1, d};
    }
    Mask full = (Mask(1) << n) - 1;
    std::vector<int> dp(full + 1, 0);
    for (Mask m = 1; m <= full; ++m) {
        int best = n + 1;
        for (Mask rest = m; rest;) {
            int v = __builtin_ctz(rest);
            rest &= rest - 1;
            Mask prev = m & ~(Mask(1) << v);
            best = std::min(best, std::max(dp[prev], through_degree(g, prev, v)));
        }
        dp[m] = best;
    }
    int width = dp[full];
    auto order = reconstruct_order(g, dp, false);

    // build bags by simulated elimination with fill-in
    std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
    for (const auto& [u, v] : g.edges()) adj[u][v] = adj[v][u] = 1;
    std::vector<int> pos(n);
    for (int i = 0; i < n; ++i) pos[order[i]] = i;
    TreeDecomposition d;
    d.tree = Graph(n);
    d.bags.assign(n, {});
    std::vector<char> gone(n, 0);
    for (int i = 0; i < n; ++i) {
        int v = order[i];
        VertexSubset bag{v};
        std::vector<int> later;
        for (int w = 0; w < n; ++w)
            if (!gone[w] && w != v && adj[v][w]) later.push_back(w);
        for (int w : later) bag.push_back(w);
        d.bags[v] = sorted_unique(bag);
        for (size_t a = 0; a < later.size(); ++a)
            for (size_t b = a + 1; b < later.size(); ++b)
                adj[later[a]][later[b]] = adj[later[b]][later[a]] = 1;
        gone[v] = 1;
        if (!later.empty()) {
            int parent = *std::min_element(later.begin(), later.end(),
                                           [&](int a, int b) { return pos[a] < pos[b]; });
            d.tree.add_edge(v, parent);
        }
    }
    return {width, d};
}

std::pair<int, PathDecomposition> pw_exact(const Graph& g, SolverLimits lim) {
    check_guard(g.n(), 12, lim.max_n, "pw_exact");
    if (g.n() >= 31) throw GuardError("pw_exact: mask overflow");
    int n = g.n();
    if (n == 0) {
        PathDecomposition d;
        d.bags = {{}};
        return {-1, d};
    }
    Mask full = (Mask(1) << n) - 1;
    auto boundary = [&](Mask m) {
        int b = 0;
        for (Mask f = m; f;) {
            int v = __builtin_ctz(f);
            f &= f - 1;
            for (int w : g.neighbors(v))
                if (!(m >> w & 1)) {
                    ++b;
                    break;
                }
        }
        return b;
    };
    std::vector<int> dp(full + 1, 0);
    for (Mask m = 1; m <= full; ++m) {
        int bd = boundary(m);
        int best = n + 1;
        for (Mask rest = m; rest;) {
            int v = __builtin_ctz(rest);
            rest &= rest - 1;
            best = std::min(best, dp[m & ~(Mask(1) << v)]);
        }
        dp[m] = std::max(bd, best);
    }
    int width = dp[full];
    auto order = reconstruct_order(g, dp, true);
    PathDecomposition d;
    Mask prefix = 0;
    for (int i = 0; i < n; ++i) {
        // boundary of the previous prefix plus the vertex being introduced
        VertexSubset bag{order[i]};
        for (Mask f = prefix; f;) {
            int v = __builtin_ctz(f);
            f &= f - 1;
            for (int w : g.neighbors(v))
                if (!(prefix >> w & 1)) {
                    bag.push_back(v);
                    break;
                }
        }
        d.bags.push_back(sorted_unique(bag));
        prefix |= Mask(1) << order[i];
    }
    return {width, d};
}

} // namespace sparsity
