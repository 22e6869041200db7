#include <algorithm>
#include <map>
#include <set>

#include "sparsity/guard.hpp"
#include "sparsity/oracle.hpp"

namespace sparsity {

namespace {

using Mask = uint32_t;

bool mask_connected(const Graph& g, Mask m) {
    if (!m) return false;
    int start = __builtin_ctz(m);
    Mask seen = Mask(1) << start, frontier = seen;
    while (frontier) {
        Mask next = 0;
        for (Mask f = frontier; f;) {
            int u = __builtin_ctz(f);
            f &= f - 1;
            for (int w : g.neighbors(u))
                if ((m >> w & 1) && !(seen >> w & 1)) next |= Mask(1) << w;
        }
        seen |= next;
        frontier = next;
    }
    return seen == m;
}

std::vector<Mask> connected_masks(const Graph& g) {
    std::vector<Mask> out;
    Mask full = g.n() >= 32 ? ~Mask(0) : (Mask(1) << g.n()) - 1;
    for (Mask m = 1; m <= full && m != 0; ++m)
        if (mask_connected(g, m)) out.push_back(m);
    return out;
}

void require_total(const Graph& g, const Coloring& phi) {
    for (int v = 0; v < g.n(); ++v)
        if (!phi.assignment.count(v))
            throw std::runtime_error("coloring not total on V(G)");
}

// true when the vertex set has a color appearing exactly once
template <typename ColorOf>
bool has_center(const std::vector<int>& verts, ColorOf color_of) {
    for (size_t i = 0; i < verts.size(); ++i) {
        bool unique = true;
        for (size_t j = 0; j < verts.size(); ++j)
            if (j != i && color_of(verts[j]) == color_of(verts[i])) {
                unique = false;
                break;
            }
        if (unique) return true;
    }
    return false;
}

std::vector<int> mask_vertices(Mask m) {
    std::vector<int> out;
    for (int v = 0; m; ++v, m >>= 1)
        if (m & 1) out.push_back(v);
    return out;
}

} // namespace

bool cen_check(const Graph& g, const Coloring& phi, int q, SolverLimits lim) {
    check_guard(g.n(), 20, lim.max_n, "cen_check");
    require_total(g, phi);
    for (Mask m : connected_masks(g)) {
        auto verts = mask_vertices(m);
        std::set<int> colors;
        for (int v : verts) colors.insert(phi.assignment.at(v));
        if (static_cast<int>(colors.size()) > q) continue;
        if (!has_center(verts, [&](int v) { return phi.assignment.at(v); })) return false;
    }
    return true;
}

namespace {

struct CenSearch {
    const Graph& g;
    int q, k;
    // connected masks grouped by their highest vertex
    std::vector<std::vector<Mask>> by_top;
    std::vector<int> color;

    CenSearch(const Graph& graph, int q_, const std::vector<Mask>& masks)
        : g(graph), q(q_), k(0), by_top(graph.n()), color(graph.n(), -1) {
        for (Mask m : masks) by_top[31 - __builtin_clz(m)].push_back(m);
    }

    bool violated(Mask m) const {
        auto verts = mask_vertices(m);
        std::set<int> colors;
        for (int v : verts) colors.insert(color[v]);
        if (static_cast<int>(colors.size()) > q) return false;
        return !has_center(verts, [&](int v) { return color[v]; });
    }

    bool dfs(int v, int used) {
        if (v == g.n()) return true;
        int limit = std::min(k - 1, used); // allow one fresh color
        for (int c = 0; c <= limit; ++c) {
            color[v] = c;
            bool ok = true;
            for (Mask m : by_top[v])
                if (violated(m)) {
                    ok = false;
                    break;
                }
            if (ok && dfs(v + 1, std::max(used, c + 1))) return true;
        }
        color[v] = -1;
        return false;
    }
};

} // namespace

std::pair<int, Coloring> cen_exact(const Graph& g, int q, SolverLimits lim) {
    check_guard(g.n(), 8, lim.max_n, "cen_exact");
    if (g.n() == 0) return {0, Coloring{}};
    auto masks = connected_masks(g);
    CenSearch search(g, q, masks);
    for (int k = 1; k <= g.n(); ++k) {
        search.k = k;
        std::fill(search.color.begin(), search.color.end(), -1);
        if (search.dfs(0, 0)) {
            Coloring out;
            out.palette_size = k;
            for (int v = 0; v < g.n(); ++v) out.assignment[v] = search.color[v];
            return {k, out};
        }
    }
    throw std::logic_error("cen_exact: no coloring up to n colors");
}

bool cen_focused_check(const Graph& g, const Coloring& phi, const VertexSubset& s,
                       const Coloring& psi, int q, SolverLimits lim) {
    check_guard(g.n(), 20, lim.max_n, "cen_focused_check");
    require_total(g, phi);
    for (int v : s)
        if (!psi.assignment.count(v))
            throw std::runtime_error("focused coloring not total on S");
    std::vector<char> in_s(g.n(), 0);
    for (int v : s) in_s[v] = 1;
    for (Mask m : connected_masks(g)) {
        auto verts = mask_vertices(m);
        std::vector<int> s_verts;
        for (int v : verts)
            if (in_s[v]) s_verts.push_back(v);
        if (s_verts.empty()) continue;
        std::set<int> phis;
        for (int v : verts) phis.insert(phi.assignment.at(v));
        if (static_cast<int>(phis.size()) > q) continue;
        std::set<std::pair<int, int>> pairs;
        for (int v : s_verts) pairs.insert({phi.assignment.at(v), psi.assignment.at(v)});
        if (static_cast<int>(pairs.size()) > q) continue;
        if (!has_center(s_verts, [&](int v) {
                return std::pair(phi.assignment.at(v), psi.assignment.at(v));
            }))
            return false;
    }
    return true;
}

namespace {

struct CenFocusedSearch {
    const Graph& g;
    const Coloring& phi;
    int q, k;
    std::vector<int> s; // ordered focus vertices
    std::vector<int> rank_in_s;
    // constraining masks grouped by the highest-rank S vertex they contain
    std::vector<std::vector<Mask>> by_top;
    std::vector<int> psi; // indexed by vertex id, -1 off S or unassigned

    CenFocusedSearch(const Graph& graph, const Coloring& phi_, const VertexSubset& s_, int q_)
        : g(graph), phi(phi_), q(q_), k(0), s(s_), rank_in_s(graph.n(), -1),
          by_top(s_.size()), psi(graph.n(), -1) {
        for (size_t i = 0; i < s.size(); ++i) rank_in_s[s[i]] = static_cast<int>(i);
        for (Mask m : connected_masks(g)) {
            auto verts = mask_vertices(m);
            int top = -1;
            std::set<int> phis;
            for (int v : verts) {
                phis.insert(phi.assignment.at(v));
                top = std::max(top, rank_in_s[v]);
            }
            if (top < 0) continue;                            // misses S
            if (static_cast<int>(phis.size()) > q) continue; // clause 1 holds forever
            by_top[top].push_back(m);
        }
    }

    bool violated(Mask m) const {
        auto verts = mask_vertices(m);
        std::vector<int> s_verts;
        for (int v : verts)
            if (rank_in_s[v] >= 0) s_verts.push_back(v);
        std::set<std::pair<int, int>> pairs;
        for (int v : s_verts) pairs.insert({phi.assignment.at(v), psi[v]});
        if (static_cast<int>(pairs.size()) > q) return false;
        return !has_center(s_verts, [&](int v) {
            return std::pair(phi.assignment.at(v), psi[v]);
        });
    }

    bool dfs(size_t i, int used) {
        if (i == s.size()) return true;
        int v = s[i];
        int limit = std::min(k - 1, used);
        for (int c = 0; c <= limit; ++c) {
            psi[v] = c;
            bool ok = true;
            for (Mask m : by_top[i])
                if (violated(m)) {
                    ok = false;
                    break;
                }
            if (ok && dfs(i + 1, std::max(used, c + 1))) return true;
        }
        psi[v] = -1;
        return false;
    }
};

} // namespace

std::pair<int, Coloring> cen_focused_exact(const Graph& g, const Coloring& phi,
                                           const VertexSubset& s, int q, SolverLimits lim) {
    check_guard(g.n(), 8, lim.max_n, "cen_focused_exact");
    require_total(g, phi);
    if (s.empty()) return {0, Coloring{}};
    CenFocusedSearch search(g, phi, s, q);
    for (int k = 1; k <= static_cast<int>(s.size()); ++k) {
        search.k = k;
        std::fill(search.psi.begin(), search.psi.end(), -1);
        if (search.dfs(0, 0)) {
            Coloring out;
            out.palette_size = k;
            for (int v : s) out.assignment[v] = search.psi[v];
            return {k, out};
        }
    }
    throw std::logic_error("cen_focused_exact: no coloring up to |S| colors");
}

} // namespace sparsity
