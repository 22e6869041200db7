#include <algorithm>
#include <numeric>
#include <unordered_map>

#include "sparsity/guard.hpp"
#include "sparsity/oracle.hpp"

namespace sparsity {

namespace {

using Mask = uint32_t;

Mask full_mask(int n) { return n >= 32 ? ~Mask(0) : (Mask(1) << n) - 1; }

std::vector<Mask> component_masks(const Graph& g, Mask m) {
    std::vector<Mask> out;
    Mask left = m;
    while (left) {
        int start = __builtin_ctz(left);
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
        out.push_back(seen);
        left &= ~seen;
    }
    return out;
}

VertexSubset mask_to_set(Mask m) {
    VertexSubset s;
    for (int v = 0; m; ++v, m >>= 1)
        if (m & 1) s.push_back(v);
    return s;
}

// ---------------------------------------------------------------------------
// treedepth
// ---------------------------------------------------------------------------

struct TdSolver {
    const Graph& g;
    std::unordered_map<Mask, int> memo;

    explicit TdSolver(const Graph& graph) : g(graph) {}

    int solve(Mask m) {
        if (!m) return 0;
        auto it = memo.find(m);
        if (it != memo.end()) return it->second;
        auto comps = component_masks(g, m);
        int value;
        if (comps.size() > 1) {
            value = 0;
            for (Mask c : comps) value = std::max(value, solve(c));
        } else {
            value = g.n() + 1;
            for (Mask rest = m; rest;) {
                int v = __builtin_ctz(rest);
                rest &= rest - 1;
                value = std::min(value, 1 + solve(m & ~(Mask(1) << v)));
            }
        }
        memo[m] = value;
        return value;
    }

    // rebuilds an optimal elimination forest from the memo
    void witness(Mask m, int parent_vertex, std::vector<int>& parent) {
        if (!m) return;
        auto comps = component_masks(g, m);
        if (comps.size() > 1) {
            for (Mask c : comps) witness(c, parent_vertex, parent);
            return;
        }
        int target = solve(m);
        for (Mask rest = m; rest;) {
            int v = __builtin_ctz(rest);
            rest &= rest - 1;
            if (1 + solve(m & ~(Mask(1) << v)) == target) {
                parent[v] = parent_vertex;
                witness(m & ~(Mask(1) << v), v, parent);
                return;
            }
        }
        throw std::logic_error("td witness reconstruction failed");
    }
};

} // namespace

int EliminationForest::vertex_height() const {
    int n = static_cast<int>(parent.size());
    std::vector<int> h(n, -1);
    int best = 0;
    for (int v = 0; v < n; ++v) {
        // walk to the root
        int len = 0, x = v;
        while (x != -1) {
            ++len;
            x = parent[x];
        }
        h[v] = len;
        best = std::max(best, len);
    }
    return best;
}

bool EliminationForest::closure_contains(const Graph& g, std::string* why) const {
    if (static_cast<int>(parent.size()) != g.n()) {
        if (why) *why = "forest size mismatch";
        return false;
    }
    for (const auto& [u, v] : g.edges()) {
        bool related = false;
        for (int x = u; x != -1; x = parent[x])
            if (x == v) related = true;
        for (int x = v; x != -1; x = parent[x])
            if (x == u) related = true;
        if (!related) {
            if (why)
                *why = "edge " + std::to_string(u) + "-" + std::to_string(v) +
                       " not in ancestor relation";
            return false;
        }
    }
    return true;
}

std::pair<int, EliminationForest> td_exact(const Graph& g, SolverLimits lim) {
    check_guard(g.n(), 16, lim.max_n, "td_exact");
    TdSolver solver(g);
    int value = solver.solve(full_mask(g.n()));
    EliminationForest forest;
    forest.parent.assign(g.n(), -1);
    solver.witness(full_mask(g.n()), -1, forest.parent);
    return {value, forest};
}

// ---------------------------------------------------------------------------
// focused treedepth: eliminate only vertices of S, one per step on connected
// graphs
// ---------------------------------------------------------------------------

namespace {

struct FtdSolver {
    const Graph& g;
    Mask s_mask;
    std::unordered_map<Mask, int> memo;

    FtdSolver(const Graph& graph, Mask s) : g(graph), s_mask(s) {}

    int solve(Mask m) {
        if (!(m & s_mask)) return 0;
        auto it = memo.find(m);
        if (it != memo.end()) return it->second;
        auto comps = component_masks(g, m);
        int value;
        if (comps.size() > 1) {
            value = 0;
            for (Mask c : comps) value = std::max(value, solve(c));
        } else {
            value = g.n() + 1;
            for (Mask rest = m & s_mask; rest;) {
                int u = __builtin_ctz(rest);
                rest &= rest - 1;
                value = std::min(value, 1 + solve(m & ~(Mask(1) << u)));
            }
        }
        memo[m] = value;
        return value;
    }
};

} // namespace

int ftd_exact(const Graph& g, const VertexSubset& s, SolverLimits lim) {
    check_guard(g.n(), 12, lim.max_n, "ftd_exact");
    Mask sm = 0;
    for (int v : s) {
        if (v < 0 || v >= g.n()) throw std::runtime_error("ftd_exact: focus outside graph");
        sm |= Mask(1) << v;
    }
    FtdSolver solver(g, sm);
    return solver.solve(full_mask(g.n()));
}

int wtd_exact(const Graph& g, const WeightFunction& t, SolverLimits lim) {
    check_guard(g.n(), 12, lim.max_n, "wtd_exact");
    std::vector<long long> w(g.n(), 0);
    for (int v = 0; v < g.n(); ++v) {
        auto it = t.weights.find(v);
        if (it == t.weights.end()) throw std::runtime_error("wtd_exact: weight not total");
        if (it->second.denominator() != 1 || it->second < 0)
            throw std::runtime_error("wtd_exact: weights must be nonnegative integers");
        w[v] = static_cast<long long>(it->second.numerator());
    }
    std::unordered_map<Mask, long long> memo;
    std::function<long long(Mask)> solve = [&](Mask m) -> long long {
        if (!m) return 0;
        auto it = memo.find(m);
        if (it != memo.end()) return it->second;
        auto comps = component_masks(g, m);
        long long value;
        if (comps.size() > 1) {
            value = 0;
            for (Mask c : comps) value = std::max(value, solve(c));
        } else {
            value = -1;
            for (Mask rest = m; rest;) {
                int u = __builtin_ctz(rest);
                rest &= rest - 1;
                long long cand = 1 + std::max(w[u], solve(m & ~(Mask(1) << u)));
                if (value == -1 || cand < value) value = cand;
            }
        }
        memo[m] = value;
        return value;
    };
    long long v = solve(full_mask(g.n()));
    return static_cast<int>(v);
}

// ---------------------------------------------------------------------------
// 2-treedepth and its rooted variants
// ---------------------------------------------------------------------------

namespace {

// blocks and cut vertices of g[mask], expressed as masks over g
struct MaskBlocks {
    std::vector<Mask> blocks;
    Mask cuts = 0;
};

MaskBlocks mask_blocks(const Graph& g, Mask m) {
    VertexSubset verts = mask_to_set(m);
    Graph sub = g.induced(verts);
    auto bc = blocks_and_cut_vertices(sub);
    MaskBlocks out;
    for (const auto& b : bc.blocks) {
        Mask bm = 0;
        for (int v : b) bm |= Mask(1) << verts[v];
        out.blocks.push_back(bm);
    }
    for (int v : bc.cut_vertices) out.cuts |= Mask(1) << verts[v];
    return out;
}

struct Td2Solver {
    const Graph& g;
    std::unordered_map<Mask, int> memo;

    explicit Td2Solver(const Graph& graph) : g(graph) {}

    int solve(Mask m) {
        if (!m) return 0;
        auto it = memo.find(m);
        if (it != memo.end()) return it->second;
        auto mb = mask_blocks(g, m);
        int value;
        if (mb.blocks.size() == 1) {
            value = g.n() + 1;
            for (Mask rest = m; rest;) {
                int v = __builtin_ctz(rest);
                rest &= rest - 1;
                value = std::min(value, 1 + solve(m & ~(Mask(1) << v)));
            }
        } else {
            value = 0;
            for (Mask b : mb.blocks) value = std::max(value, solve(b));
        }
        memo[m] = value;
        return value;
    }
};

// Shared engine for rtd2 / srtd2: block-separation recursion with a
// parameter-specific base case.
struct Rtd2Solver {
    const Graph& g;
    bool simple; // true: srtd2 (linear-forest base, floor 3)
    std::unordered_map<Mask, int> memo;

    Rtd2Solver(const Graph& graph, bool simple_variant)
        : g(graph), simple(simple_variant) {}

    int base_value(Mask m) {
        // classification of g[mask] against the named base classes
        if (!m) return 0;
        bool any_edge = false;
        for (const auto& [u, v] : g.edges())
            if ((m >> u & 1) && (m >> v & 1)) any_edge = true;
        if (!any_edge) return 1;
        if (!simple) return -1; // rtd2 handles edges via separations
        // srtd2: linear forests sit at level 2
        VertexSubset verts = mask_to_set(m);
        Graph sub = g.induced(verts);
        if (classify(sub) == GraphClass::LinearForest) return 2;
        return -1;
    }

    int solve(Mask m) {
        int base = base_value(m);
        if (base >= 0) return base;
        if (__builtin_popcount(m) == 1) return 1;
        auto it = memo.find(m);
        if (it != memo.end()) return it->second;
        auto mb = mask_blocks(g, m);
        int best = g.n() + 2;
        for (Mask b : mb.blocks) {
            Mask attach = b & mb.cuts;
            int nattach = __builtin_popcount(attach);
            if (nattach >= 2) continue;
            if (nattach == 1) {
                Mask rest_b = b & ~attach;
                int cand = std::max(solve(m & ~rest_b), 1 + solve(rest_b));
                best = std::min(best, cand);
            } else {
                if (b != m) {
                    int cand = std::max(solve(m & ~b), solve(b));
                    best = std::min(best, cand);
                }
                if (__builtin_popcount(b) >= 2) {
                    for (Mask rest = b; rest;) {
                        int v = __builtin_ctz(rest);
                        rest &= rest - 1;
                        Mask vb = Mask(1) << v;
                        int cand = std::max(solve((m & ~b) | vb), 1 + solve(b & ~vb));
                        best = std::min(best, cand);
                    }
                }
            }
        }
        if (simple) best = std::max(best, 3);
        memo[m] = best;
        return best;
    }
};

// ---------------------------------------------------------------------------
// Exhaustive membership in R_t / S_t via decomposition-shape search,
// independent of the separation recursion above.
// ---------------------------------------------------------------------------

struct ClassMembership {
    const Graph& g;
    bool simple;
    std::map<std::tuple<Mask, Mask, int>, bool> piece_memo;
    std::map<std::pair<Mask, int>, bool> mem_memo;

    ClassMembership(const Graph& graph, bool simple_variant)
        : g(graph), simple(simple_variant) {}

    bool base_member(Mask m, int t) {
        if (t <= 0) return m == 0;
        if (m == 0) return true;
        bool any_edge = false;
        for (const auto& [u, v] : g.edges())
            if ((m >> u & 1) && (m >> v & 1)) any_edge = true;
        if (t == 1) return !any_edge;
        // t == 2
        if (!any_edge) return true;
        Graph sub = g.induced(mask_to_set(m));
        auto c = classify(sub);
        return simple ? c == GraphClass::LinearForest : c != GraphClass::Other;
    }

    bool member(Mask m, int t) {
        if (t <= 2) return base_member(m, t);
        auto key = std::make_pair(m, t);
        auto it = mem_memo.find(key);
        if (it != mem_memo.end()) return it->second;
        bool ok = true;
        for (Mask c : component_masks(g, m))
            if (!component_ok(c, t - 1)) {
                ok = false;
                break;
            }
        mem_memo[key] = ok;
        return ok;
    }

    // connected component of a graph in T(class level s): either one piece
    // with an empty root bag, or a singleton root bag {v} with one piece per
    // component of C - v
    bool component_ok(Mask c, int s) {
        if (piece_ok(c, 0, s)) return true;
        for (Mask rest = c; rest;) {
            int v = __builtin_ctz(rest);
            rest &= rest - 1;
            Mask vb = Mask(1) << v;
            bool all = true;
            for (Mask d : component_masks(g, c & ~vb)) {
                Mask a = neighbors_in(v, d);
                if (!piece_ok(d, a, s)) {
                    all = false;
                    break;
                }
            }
            if (all) return true;
        }
        return false;
    }

    Mask neighbors_in(int v, Mask region) const {
        Mask out = 0;
        for (int w : g.neighbors(v))
            if (region >> w & 1) out |= Mask(1) << w;
        return out;
    }

    Mask neighbors_of_set(Mask set, Mask region) const {
        Mask out = 0;
        for (Mask f = set; f;) {
            int u = __builtin_ctz(f);
            f &= f - 1;
            out |= neighbors_in(u, region);
        }
        return out;
    }

    // connected piece D hanging below a node; its top class H must contain
    // the inherited attachment A, lie in the class at level s, and leave
    // components attaching to at most one vertex of H each
    bool piece_ok(Mask d, Mask a, int s) {
        auto key = std::make_tuple(d, a, s);
        auto it = piece_memo.find(key);
        if (it != piece_memo.end()) return it->second;
        bool ok = false;
        Mask free = d & ~a;
        // enumerate H = a | sub over submasks of free, nonempty H
        Mask sub = free;
        for (;;) {
            Mask h = a | sub;
            if (h && member(h, s)) {
                bool good = true;
                for (Mask e : component_masks(g, d & ~h)) {
                    Mask touch = neighbors_of_set(e, h);
                    if (__builtin_popcount(touch) > 1) {
                        good = false;
                        break;
                    }
                    Mask a2 = touch ? neighbors_in(__builtin_ctz(touch), e) : 0;
                    if (!piece_ok(e, a2, s)) {
                        good = false;
                        break;
                    }
                }
                if (good) {
                    ok = true;
                    break;
                }
            }
            if (sub == 0) break;
            sub = (sub - 1) & free;
        }
        piece_memo[key] = ok;
        return ok;
    }
};

int class_min_level(const Graph& g, bool simple, SolverLimits lim, const char* who) {
    check_guard(g.n(), 7, lim.max_n, who);
    if (g.n() >= 32) throw GuardError(std::string(who) + ": mask overflow");
    ClassMembership cm(g, simple);
    Mask full = full_mask(g.n());
    for (int t = 0; t <= g.n() + 2; ++t)
        if (cm.member(full, t)) return t;
    throw std::logic_error(std::string(who) + ": no level found");
}

} // namespace

int td2_exact(const Graph& g, SolverLimits lim) {
    check_guard(g.n(), 14, lim.max_n, "td2_exact");
    if (g.n() >= 32) throw GuardError("td2_exact: mask overflow");
    Td2Solver solver(g);
    return solver.solve(full_mask(g.n()));
}

int rtd2_exact(const Graph& g, SolverLimits lim) {
    check_guard(g.n(), 14, lim.max_n, "rtd2_exact");
    if (g.n() >= 32) throw GuardError("rtd2_exact: mask overflow");
    Rtd2Solver solver(g, false);
    return solver.solve(full_mask(g.n()));
}

int srtd2_bruteforce(const Graph& g, SolverLimits lim) {
    return class_min_level(g, true, lim, "srtd2_bruteforce");
}

int rtd2_bruteforce(const Graph& g, SolverLimits lim) {
    return class_min_level(g, false, lim, "rtd2_bruteforce");
}

int srtd2_exact(const Graph& g, SolverLimits lim) {
    check_guard(g.n(), 14, lim.max_n, "srtd2_exact");
    if (g.n() >= 32) throw GuardError("srtd2_exact: mask overflow");
    Rtd2Solver solver(g, true);
    int value = solver.solve(full_mask(g.n()));
    // the derived recursion is not in the paper: gate it on the exhaustive
    // certificate search whenever the instance is small enough
    if (g.n() <= effective_guard(7, -1)) {
        int brute = srtd2_bruteforce(g, SolverLimits{g.n()});
        if (brute != value)
            throw std::logic_error("srtd2_exact: derived recursion disagrees with "
                                   "certificate search (" +
                                   std::to_string(value) + " vs " + std::to_string(brute) + ")");
    }
    return value;
}

} // namespace sparsity
