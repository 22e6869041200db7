#include <algorithm>
#include <numeric>
#include <unordered_map>

#include "sparsity/guard.hpp"
#include "sparsity/lp.hpp"
#include "sparsity/oracle.hpp"

namespace sparsity {

namespace {

using Mask = uint32_t;

// shared focused-treedepth table over alive-vertex masks
struct FtdTable {
    const Graph& g;
    Mask s_mask;
    std::unordered_map<Mask, int> memo;

    FtdTable(const Graph& graph, Mask s) : g(graph), s_mask(s) {}

    std::vector<Mask> comps(Mask m) const {
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

    int ftd(Mask alive) {
        if (!(alive & s_mask)) return 0;
        auto it = memo.find(alive);
        if (it != memo.end()) return it->second;
        auto cc = comps(alive);
        int value;
        if (cc.size() > 1) {
            value = 0;
            for (Mask c : cc) value = std::max(value, ftd(c));
        } else {
            value = g.n() + 1;
            for (Mask rest = alive & s_mask; rest;) {
                int u = __builtin_ctz(rest);
                rest &= rest - 1;
                value = std::min(value, 1 + ftd(alive & ~(Mask(1) << u)));
            }
        }
        memo[alive] = value;
        return value;
    }
};

} // namespace

std::pair<int, FragilityWitness> frate_exact(const Graph& g, const VertexSubset& s, int q,
                                             SolverLimits lim) {
    if (!is_sorted_unique(s)) throw std::runtime_error("frate_exact: focus not sorted");
    check_guard(static_cast<int>(s.size()), 12, lim.max_n, "frate_exact (|S|)");
    if (g.n() >= 31) throw GuardError("frate_exact: graph too large for mask table");
    if (q < 1) throw std::runtime_error("frate_exact: q must be positive");
    Mask s_mask = 0;
    for (int v : s) s_mask |= Mask(1) << v;
    Mask full = g.n() >= 32 ? ~Mask(0) : (Mask(1) << g.n()) - 1;
    FtdTable table(g, s_mask);

    const int ns = static_cast<int>(s.size());
    const Mask nsubs = Mask(1) << ns;
    // ftd(G - Y, S \ Y) for every Y given by an index mask over s
    std::vector<int> ftd_after(nsubs);
    for (Mask y = 0; y < nsubs; ++y) {
        Mask drop = 0;
        for (int i = 0; i < ns; ++i)
            if (y >> i & 1) drop |= Mask(1) << s[i];
        ftd_after[y] = table.ftd(full & ~drop);
    }

    for (int k = 0;; ++k) {
        if (ftd_after[0] <= k) {
            // the empty deletion set alone witnesses the bound
            FragilityWitness w;
            w.sets.push_back({});
            w.probs.push_back(Rational(1));
            w.q = q;
            w.k = k;
            return {k, w};
        }
        std::vector<Mask> columns;
        for (Mask y = 1; y < nsubs; ++y)
            if (ftd_after[y] <= k) columns.push_back(y);
        if (columns.empty()) continue;
        // maximize sum(lambda) s.t. per-vertex coverage <= 1/q; feasible for
        // the witness definition iff the optimum reaches 1
        std::vector<std::vector<Rational>> a(ns, std::vector<Rational>(columns.size(), Rational(0)));
        for (size_t j = 0; j < columns.size(); ++j)
            for (int i = 0; i < ns; ++i)
                if (columns[j] >> i & 1) a[i][j] = 1;
        std::vector<Rational> b(ns, Rational(1, q));
        std::vector<Rational> c(columns.size(), Rational(1));
        auto lp = simplex_max(a, b, c);
        if (lp.status != LpResult::Status::Optimal)
            throw std::logic_error("frate_exact: packing LP unbounded without empty column");
        if (lp.value >= 1) {
            FragilityWitness w;
            w.q = q;
            w.k = k;
            for (size_t j = 0; j < columns.size(); ++j) {
                Rational lambda = lp.x[j] / lp.value; // scale the total mass to 1
                if (lambda == 0) continue;
                VertexSubset y;
                for (int i = 0; i < ns; ++i)
                    if (columns[j] >> i & 1) y.push_back(s[i]);
                w.sets.push_back(y);
                w.probs.push_back(lambda);
            }
            return {k, w};
        }
        if (k > ns + 1) throw std::logic_error("frate_exact: ran past the trivial bound");
    }
}

bool qthin_check(const Graph& g, const VertexSubset& s, const FragilityWitness& w,
                 bool check_ftd, std::string* why) {
    if (w.sets.empty() || w.sets.size() != w.probs.size())
        throw std::runtime_error("qthin_check: malformed witness (empty family or size mismatch)");
    if (w.q < 1) throw std::runtime_error("qthin_check: q must be positive");
    Rational total(0);
    for (const auto& p : w.probs) {
        if (p < 0) {
            if (why) *why = "negative probability";
            return false;
        }
        total += p;
    }
    if (total != 1) {
        if (why) *why = "probabilities sum to " + rational_to_string(total);
        return false;
    }
    for (const auto& y : w.sets)
        if (!subset_minus(y, s).empty()) {
            if (why) *why = "deletion set leaves S";
            return false;
        }
    for (int u : s) {
        Rational cover(0);
        for (size_t i = 0; i < w.sets.size(); ++i)
            if (subset_contains(w.sets[i], u)) cover += w.probs[i];
        if (cover > Rational(1, w.q)) {
            if (why)
                *why = "vertex " + std::to_string(u) + " covered with probability " +
                       rational_to_string(cover) + " > 1/" + std::to_string(w.q);
            return false;
        }
    }
    if (check_ftd) {
        for (const auto& y : w.sets) {
            Graph h = g.removed(y);
            // removed() relabels; recompute S \ Y in the new labels
            VertexSubset keep = subset_minus(
                [&] {
                    VertexSubset all(g.n());
                    std::iota(all.begin(), all.end(), 0);
                    return all;
                }(),
                y);
            std::vector<int> new_of_old(g.n(), -1);
            for (size_t i = 0; i < keep.size(); ++i) new_of_old[keep[i]] = static_cast<int>(i);
            VertexSubset s_new;
            for (int v : subset_minus(s, y)) s_new.push_back(new_of_old[v]);
            int val = ftd_exact(h, s_new, SolverLimits{h.n()});
            if (val > w.k) {
                if (why)
                    *why = "deletion set leaves ftd " + std::to_string(val) + " > k=" +
                           std::to_string(w.k);
                return false;
            }
        }
    }
    return true;
}

} // namespace sparsity
