#include <algorithm>
#include <deque>
#include <numeric>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "sparsity/guard.hpp"
#include "sparsity/oracle.hpp"

namespace sparsity {

long long binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    long long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

int ceil_log2(long long x) {
    int s = 0;
    long long p = 1;
    while (p < x) {
        p <<= 1;
        ++s;
    }
    return s;
}

Rational parse_rational(const std::string& s) {
    auto slash = s.find('/');
    using Int = boost::multiprecision::cpp_int;
    if (slash == std::string::npos) return Rational(Int(s));
    Int num(s.substr(0, slash)), den(s.substr(slash + 1));
    return Rational(num, den);
}

std::string rational_to_string(const Rational& r) {
    std::ostringstream ss;
    ss << r.numerator();
    if (r.denominator() != 1) ss << "/" << r.denominator();
    return ss.str();
}

namespace {

void require_orders(const Graph& g, const VertexSubset& s, const VertexOrdering& sigma) {
    if (sigma.sequence.size() != s.size())
        throw std::runtime_error("ordering does not cover the focus set");
    VertexSubset seq = sorted_unique(sigma.sequence);
    if (seq != s) throw std::runtime_error("ordering is not a permutation of the focus set");
    for (int v : s)
        if (v < 0 || v >= g.n()) throw std::runtime_error("focus vertex outside the graph");
}

} // namespace

VertexSubset wreach(const Graph& g, const VertexSubset& s, const VertexOrdering& sigma,
                    int u, int q) {
    if (u < 0 || u >= g.n()) throw std::runtime_error("wreach: vertex outside the graph");
    require_orders(g, s, sigma);
    std::vector<int> pos(g.n(), -1);
    for (size_t i = 0; i < sigma.sequence.size(); ++i) pos[sigma.sequence[i]] = static_cast<int>(i);
    VertexSubset out;
    for (int v : s) {
        // u weakly reaches v iff u-v distance <= q avoiding S-vertices before v
        std::vector<char> alive(g.n(), 1);
        for (int w : s)
            if (pos[w] < pos[v]) alive[w] = 0;
        if (!alive[u]) continue;
        std::deque<std::pair<int, int>> bfs{{v, 0}};
        std::vector<char> seen(g.n(), 0);
        seen[v] = 1;
        bool hit = v == u;
        while (!bfs.empty() && !hit) {
            auto [x, dist] = bfs.front();
            bfs.pop_front();
            if (dist == q) continue;
            for (int w : g.neighbors(x)) {
                if (!alive[w] || seen[w]) continue;
                seen[w] = 1;
                if (w == u) {
                    hit = true;
                    break;
                }
                bfs.emplace_back(w, dist + 1);
            }
        }
        if (hit) out.push_back(v);
    }
    return out;
}

int wcol_eval(const Graph& g, const VertexSubset& s, const VertexOrdering& sigma, int q) {
    require_orders(g, s, sigma);
    if (g.n() == 0) return 0;
    std::vector<int> count(g.n(), 0);
    std::vector<char> alive(g.n(), 1);
    // process v in sigma order; all later S vertices and all non-S vertices
    // stay alive, so each BFS counts exactly the u's that weakly reach v
    for (int v : sigma.sequence) {
        std::vector<int> dist(g.n(), -1);
        std::deque<int> bfs{v};
        dist[v] = 0;
        count[v]++;
        while (!bfs.empty()) {
            int x = bfs.front();
            bfs.pop_front();
            if (dist[x] == q) continue;
            for (int w : g.neighbors(x)) {
                if (!alive[w] || dist[w] != -1) continue;
                dist[w] = dist[x] + 1;
                count[w]++;
                bfs.push_back(w);
            }
        }
        alive[v] = 0;
    }
    return *std::max_element(count.begin(), count.end());
}

// ---------------------------------------------------------------------------
// Exact minimization, feasibility branch and bound with component splitting
// ---------------------------------------------------------------------------

namespace {

struct WcolSolver {
    const Graph& g;
    std::vector<char> in_s;
    int q, bound;
    std::unordered_set<std::string> infeasible;

    WcolSolver(const Graph& graph, const VertexSubset& s, int q_, int bound_)
        : g(graph), in_s(graph.n(), 0), q(q_), bound(bound_) {
        for (int v : s) in_s[v] = 1;
    }

    std::string key(const VertexSubset& comp, const std::vector<int>& count) const {
        std::string k;
        k.reserve(comp.size() * 3);
        int prev = 0;
        for (int v : comp) {
            k += static_cast<char>(v - prev); // delta-encode, components are sorted
            prev = v;
            k += static_cast<char>(count[v]);
        }
        return k;
    }

    // forest components admit an isomorphism-invariant key: AHU canonical
    // encoding with (count, in_s) vertex labels; distances and future counts
    // are isomorphism-invariant, so feasibility is too
    std::string forest_key(const VertexSubset& comp, const std::vector<int>& count) const {
        Graph sub = g.induced(comp);
        std::vector<std::pair<int, int>> label(comp.size());
        for (size_t i = 0; i < comp.size(); ++i)
            label[i] = {count[comp[i]], in_s[comp[i]]};
        // canonical rooted encoding from the tree centroid(s), per tree
        std::vector<std::string> tree_codes;
        for (const auto& tc : connected_components(sub)) {
            tree_codes.push_back(canonical_tree_code(sub, tc, label));
        }
        std::sort(tree_codes.begin(), tree_codes.end());
        std::string k = "F";
        for (auto& c : tree_codes) k += c + "|";
        return k;
    }

    static std::string canonical_tree_code(const Graph& t, const VertexSubset& verts,
                                           const std::vector<std::pair<int, int>>& label) {
        // centroid-rooted AHU encoding; for two centroids take the lexicographic min
        if (verts.size() == 1) return encode_rooted(t, verts[0], -1, label);
        std::vector<int> size(t.n(), 0);
        std::function<int(int, int)> calc = [&](int u, int p) {
            size[u] = 1;
            for (int w : t.neighbors(u))
                if (w != p) size[u] += calc(w, u);
            return size[u];
        };
        int total = calc(verts[0], -1);
        std::vector<int> centroids;
        for (int u : verts) {
            int heaviest = total - size[u];
            for (int w : t.neighbors(u))
                if (size[w] < size[u]) heaviest = std::max(heaviest, size[w]);
            if (heaviest <= total / 2) centroids.push_back(u);
        }
        std::string best;
        for (int c : centroids) {
            auto code = encode_rooted(t, c, -1, label);
            if (best.empty() || code < best) best = code;
        }
        return best;
    }

    static std::string encode_rooted(const Graph& t, int u, int p,
                                     const std::vector<std::pair<int, int>>& label) {
        std::vector<std::string> kids;
        for (int w : t.neighbors(u))
            if (w != p) kids.push_back(encode_rooted(t, w, u, label));
        std::sort(kids.begin(), kids.end());
        std::string code = "(";
        code += static_cast<char>('a' + label[u].first);
        code += static_cast<char>('0' + label[u].second);
        for (auto& k : kids) code += k;
        code += ")";
        return code;
    }

    // Feasibility for one connected component; count is indexed by original
    // vertex id. When order != nullptr, the placements are appended.
    bool feasible(const VertexSubset& comp, std::vector<int>& count,
                  std::vector<int>* order) {
        VertexSubset todo;
        for (int v : comp)
            if (in_s[v]) todo.push_back(v);
        if (todo.empty()) {
            for (int v : comp)
                if (count[v] > bound) return false;
            return true;
        }
        for (int v : comp) {
            if (in_s[v] && count[v] >= bound) return false;
            if (!in_s[v] && count[v] > bound) return false;
        }
        Graph sub = g.induced(comp);
        bool forest = sub.is_forest();
        std::string k = forest ? forest_key(comp, count) : key(comp, count);
        if (!order && infeasible.count(k)) return false;

        // twin reduction: candidates with identical closed neighborhoods in
        // the component, equal count, need only one representative
        std::vector<int> local_of(g.n(), -1);
        for (size_t i = 0; i < comp.size(); ++i) local_of[comp[i]] = static_cast<int>(i);
        std::unordered_set<std::string> tried;
        for (int v : todo) {
            std::string sig;
            {
                std::vector<int> nb;
                for (int w : g.neighbors(v))
                    if (local_of[w] >= 0) nb.push_back(local_of[w]);
                nb.push_back(local_of[v]);
                std::sort(nb.begin(), nb.end());
                sig = std::to_string(count[v]) + ":";
                for (int x : nb) sig += std::to_string(x) + ",";
            }
            if (!tried.insert(sig).second) continue;

            // place v: every unplaced vertex within distance q in G[comp] gains 1
            std::vector<int> dist(g.n(), -1);
            std::deque<int> bfs{v};
            dist[v] = 0;
            std::vector<int> hit{v};
            while (!bfs.empty()) {
                int x = bfs.front();
                bfs.pop_front();
                if (dist[x] == q) continue;
                for (int w : g.neighbors(x)) {
                    if (local_of[w] < 0 || dist[w] != -1) continue;
                    dist[w] = dist[x] + 1;
                    hit.push_back(w);
                    bfs.push_back(w);
                }
            }
            bool ok = true;
            for (int w : hit) {
                count[w]++;
                if (in_s[w] && w != v && count[w] >= bound + 1) ok = false;
                if (!in_s[w] && count[w] > bound) ok = false;
            }
            if (count[v] > bound) ok = false;
            if (ok) {
                // unplaced S vertices must still be placeable
                for (int w : hit)
                    if (in_s[w] && w != v && count[w] >= bound) ok = false;
            }
            if (ok) {
                if (order) order->push_back(v);
                VertexSubset rest;
                for (int w : comp)
                    if (w != v) rest.push_back(w);
                bool all = true;
                for (const auto& sc : components_within(g, rest)) {
                    if (!feasible(sc, count, order)) {
                        all = false;
                        break;
                    }
                }
                if (all) return true;
                if (order && !order->empty()) {
                    // rewind placements made below this choice point
                    while (order->back() != v) order->pop_back();
                    order->pop_back();
                }
            }
            for (int w : hit) count[w]--;
        }
        if (!order) infeasible.insert(k);
        return false;
    }
};

} // namespace

std::pair<int, VertexOrdering> wcol_focused_exact(const Graph& g, const VertexSubset& s,
                                                  int q, SolverLimits lim) {
    check_guard(g.n(), 12, lim.max_n, "wcol_exact");
    if (!is_sorted_unique(s)) throw std::runtime_error("wcol_focused_exact: focus not sorted");
    if (g.n() == 0 || s.empty()) return {0, VertexOrdering{}};
    for (int lower = 1;; ++lower) {
        WcolSolver solver(g, s, q, lower);
        std::vector<int> count(g.n(), 0);
        bool ok = true;
        std::vector<int> order;
        for (const auto& comp : connected_components(g))
            if (!solver.feasible(comp, count, &order)) {
                ok = false;
                break;
            }
        if (ok) {
            VertexOrdering sigma;
            sigma.sequence = order;
            return {lower, sigma};
        }
        if (lower > static_cast<int>(s.size()))
            throw std::logic_error("wcol_focused_exact: search failed past the trivial bound");
    }
}

std::pair<int, VertexOrdering> wcol_exact(const Graph& g, int q, SolverLimits lim) {
    VertexSubset all(g.n());
    std::iota(all.begin(), all.end(), 0);
    return wcol_focused_exact(g, all, q, lim);
}

} // namespace sparsity
