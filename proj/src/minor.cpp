#include "sparsity/minor.hpp"

#include <algorithm>
#include <functional>

#include "sparsity/guard.hpp"

namespace sparsity {

namespace {

using Mask = uint64_t;

Mask to_mask(const VertexSubset& s) {
    Mask m = 0;
    for (int v : s) m |= Mask(1) << v;
    return m;
}

VertexSubset from_mask(Mask m) {
    VertexSubset s;
    for (int v = 0; m; ++v, m >>= 1)
        if (m & 1) s.push_back(v);
    return s;
}

bool mask_connected(const Graph& g, Mask m) {
    if (!m) return false;
    int start = __builtin_ctzll(m);
    Mask seen = Mask(1) << start, frontier = seen;
    while (frontier) {
        Mask next = 0;
        for (Mask f = frontier; f;) {
            int u = __builtin_ctzll(f);
            f &= f - 1;
            for (int w : g.neighbors(u))
                if ((m >> w & 1) && !(seen >> w & 1)) next |= Mask(1) << w;
        }
        seen |= next;
        frontier = next;
    }
    return seen == m;
}

bool masks_adjacent(const Graph& g, Mask a, Mask b) {
    for (Mask f = a; f;) {
        int u = __builtin_ctzll(f);
        f &= f - 1;
        for (int w : g.neighbors(u))
            if (b >> w & 1) return true;
    }
    return false;
}

// Enumerates connected subsets of `allowed` whose minimum vertex is >= the
// component roots taken in ascending order; classic fix-and-extend scheme.
// The callback returns false to abort the whole enumeration.
bool enum_connected(const Graph& g, Mask allowed,
                    const std::function<bool(Mask)>& cb) {
    int n = g.n();
    std::function<bool(Mask, Mask, Mask)> expand = [&](Mask cur, Mask frontier,
                                                       Mask banned) -> bool {
        if (!cb(cur)) return false;
        // take frontier vertices one at a time; skipping one bans it
        Mask fr = frontier;
        while (fr) {
            int v = __builtin_ctzll(fr);
            fr &= fr - 1;
            Mask nf = fr;
            for (int w : g.neighbors(v))
                if ((allowed >> w & 1) && !(cur >> w & 1) && !(banned >> w & 1) &&
                    !((frontier >> w) & 1))
                    nf |= Mask(1) << w;
            nf &= ~(cur | banned | (Mask(1) << v));
            if (!expand(cur | (Mask(1) << v), nf, banned | (frontier & ~fr & ~(Mask(1) << v)) | (Mask(1) << v)))
                return false;
            banned |= Mask(1) << v;
        }
        return true;
    };
    for (int v = 0; v < n; ++v) {
        if (!(allowed >> v & 1)) continue;
        Mask banned = (Mask(1) << v) - 1; // subsets with min vertex v
        Mask frontier = 0;
        for (int w : g.neighbors(v))
            if ((allowed >> w & 1) && !(banned >> w & 1)) frontier |= Mask(1) << w;
        if (!expand(Mask(1) << v, frontier, banned | (Mask(1) << v))) return false;
    }
    return true;
}

struct Searcher {
    const Graph& g;
    const Graph& x;
    Mask root_mask = ~Mask(0);
    const std::vector<Mask>* member_masks = nullptr;
    std::vector<int> order;             // minor vertices, connectivity-friendly
    std::vector<std::vector<int>> prev; // earlier X-neighbors per order slot
    std::vector<Mask> chosen;
    std::optional<MinorModel> result;

    Searcher(const Graph& host, const Graph& minor) : g(host), x(minor) {
        std::vector<char> placed(x.n(), 0);
        for (int s = 0; s < x.n(); ++s) {
            if (placed[s]) continue;
            std::vector<int> queue{s};
            placed[s] = 1;
            for (size_t i = 0; i < queue.size(); ++i) {
                int u = queue[i];
                order.push_back(u);
                for (int w : x.neighbors(u))
                    if (!placed[w]) {
                        placed[w] = 1;
                        queue.push_back(w);
                    }
            }
        }
        prev.resize(x.n());
        std::vector<int> slot(x.n());
        for (size_t i = 0; i < order.size(); ++i) slot[order[i]] = static_cast<int>(i);
        for (size_t i = 0; i < order.size(); ++i)
            for (int w : x.neighbors(order[i]))
                if (slot[w] < static_cast<int>(i)) prev[i].push_back(w);
    }

    bool branch_ok(Mask b) const {
        if (!(b & root_mask)) return false;
        if (member_masks) {
            bool rich = false;
            for (Mask mm : *member_masks)
                if ((mm & b) == mm) {
                    rich = true;
                    break;
                }
            if (!rich) return false;
        }
        return true;
    }

    bool search(size_t i, Mask used) {
        if (i == order.size()) {
            MinorModel m;
            for (size_t j = 0; j < order.size(); ++j)
                m.branch_sets[order[j]] = from_mask(chosen[j]);
            result = std::move(m);
            return false; // abort enumeration, model found
        }
        Mask allowed = ~used & ((g.n() == 64 ? ~Mask(0) : (Mask(1) << g.n()) - 1));
        return enum_connected(g, allowed, [&](Mask b) {
            if (!branch_ok(b)) return true;
            for (int y : prev[i])
                if (!masks_adjacent(g, b, chosen[slot_of(y)])) return true;
            chosen.push_back(b);
            bool keep_going = search(i + 1, used | b);
            chosen.pop_back();
            return keep_going;
        });
    }

    int slot_of(int minor_vertex) const {
        for (size_t i = 0; i < order.size(); ++i)
            if (order[i] == minor_vertex) return static_cast<int>(i);
        return -1;
    }
};

} // namespace

bool family_valid(const Graph& g, const SubgraphFamily& f, std::string* why) {
    for (size_t i = 0; i < f.members.size(); ++i) {
        const auto& mem = f.members[i];
        if (mem.empty()) {
            if (why) *why = "member " + std::to_string(i) + " empty";
            return false;
        }
        if (!is_sorted_unique(mem) || mem.front() < 0 || mem.back() >= g.n()) {
            if (why) *why = "member " + std::to_string(i) + " malformed";
            return false;
        }
        if (components_within(g, mem).size() != 1) {
            if (why) *why = "member " + std::to_string(i) + " not connected";
            return false;
        }
    }
    return true;
}

bool model_valid(const Graph& g, const Graph& x, const MinorModel& m,
                 const VertexSubset* rooted_at, const SubgraphFamily* rich,
                 std::string* why) {
    std::vector<int> owner(g.n(), -1);
    for (int xv = 0; xv < x.n(); ++xv) {
        auto it = m.branch_sets.find(xv);
        if (it == m.branch_sets.end() || it->second.empty()) {
            if (why) *why = "missing/empty branch set for minor vertex " + std::to_string(xv);
            return false;
        }
        for (int v : it->second) {
            if (v < 0 || v >= g.n() || owner[v] != -1) {
                if (why) *why = "branch sets overlap or out of range at host vertex " + std::to_string(v);
                return false;
            }
            owner[v] = xv;
        }
        if (components_within(g, it->second).size() != 1) {
            if (why) *why = "branch set of minor vertex " + std::to_string(xv) + " not connected";
            return false;
        }
        if (rooted_at && subset_intersect(it->second, *rooted_at).empty()) {
            if (why) *why = "branch set of minor vertex " + std::to_string(xv) + " misses the root set";
            return false;
        }
        if (rich) {
            bool found = false;
            for (const auto& mem : rich->members) {
                if (subset_minus(mem, it->second).empty()) {
                    found = true;
                    break;
                }
            }
            if (!found) {
                if (why) *why = "branch set of minor vertex " + std::to_string(xv) + " contains no family member";
                return false;
            }
        }
    }
    for (const auto& [a, b] : x.edges()) {
        bool hit = false;
        for (int v : m.branch_sets.at(a)) {
            for (int w : g.neighbors(v))
                if (owner[w] == b) {
                    hit = true;
                    break;
                }
            if (hit) break;
        }
        if (!hit) {
            if (why)
                *why = "no host edge realizes minor edge " + std::to_string(a) + "-" +
                       std::to_string(b);
            return false;
        }
    }
    return true;
}

std::optional<MinorModel> find_model(const Graph& g, const Graph& x,
                                     const VertexSubset* rooted_at,
                                     ModelSearchLimits limits) {
    check_guard(x.n(), 6, limits.max_minor, "find_model (minor)");
    check_guard(g.n(), 14, limits.max_host, "find_model (host)");
    if (g.n() > 63) throw GuardError("find_model: host too large for mask search");
    if (x.n() == 0) return MinorModel{};
    if (x.n() > g.n()) return std::nullopt;
    Searcher s(g, x);
    if (rooted_at) s.root_mask = to_mask(*rooted_at);
    s.search(0, 0);
    return s.result;
}

std::optional<MinorModel> find_frich_model(const Graph& g, const SubgraphFamily& f,
                                           const Graph& x, ModelSearchLimits limits) {
    check_guard(x.n(), 6, limits.max_minor, "find_frich_model (minor)");
    check_guard(g.n(), 14, limits.max_host, "find_frich_model (host)");
    if (g.n() > 63) throw GuardError("find_frich_model: host too large for mask search");
    if (x.n() == 0) return MinorModel{};
    if (f.members.empty()) return std::nullopt; // no branch set can contain a member
    Searcher s(g, x);
    std::vector<Mask> member_masks;
    member_masks.reserve(f.members.size());
    for (const auto& mem : f.members) member_masks.push_back(to_mask(mem));
    s.member_masks = &member_masks;
    s.search(0, 0);
    return s.result;
}

bool has_model(const Graph& g, const Graph& x, const VertexSubset* rooted_at,
               ModelSearchLimits limits) {
    return find_model(g, x, rooted_at, limits).has_value();
}

bool has_frich_model(const Graph& g, const SubgraphFamily& f, const Graph& x,
                     ModelSearchLimits limits) {
    return find_frich_model(g, f, x, limits).has_value();
}

std::vector<VertexSubset> connected_subsets(const Graph& g, const VertexSubset& allowed) {
    std::vector<VertexSubset> out;
    if (g.n() > 63) throw GuardError("connected_subsets: graph too large");
    enum_connected(g, to_mask(allowed), [&](Mask m) {
        out.push_back(from_mask(m));
        return true;
    });
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace sparsity
