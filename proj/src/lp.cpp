#include "sparsity/lp.hpp"

#include <stdexcept>

namespace sparsity {

LpResult simplex_max(const std::vector<std::vector<Rational>>& a,
                     const std::vector<Rational>& b, const std::vector<Rational>& c) {
    const int m = static_cast<int>(a.size());
    const int n = static_cast<int>(c.size());
    for (int i = 0; i < m; ++i) {
        if (static_cast<int>(a[i].size()) != n) throw std::runtime_error("simplex: ragged matrix");
        if (b[i] < 0) throw std::runtime_error("simplex: negative rhs");
    }
    // tableau rows: m constraints over n structural + m slack variables + rhs
    std::vector<std::vector<Rational>> t(m, std::vector<Rational>(n + m + 1, Rational(0)));
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) t[i][j] = a[i][j];
        t[i][n + i] = 1;
        t[i][n + m] = b[i];
    }
    std::vector<Rational> cost(n + m, Rational(0));
    for (int j = 0; j < n; ++j) cost[j] = c[j];
    std::vector<int> basic(m);
    for (int i = 0; i < m; ++i) basic[i] = n + i;
    std::vector<Rational> reduced = cost; // reduced costs start at c (y = 0)
    Rational objective(0);

    for (;;) {
        int enter = -1;
        for (int j = 0; j < n + m; ++j)
            if (reduced[j] > 0) {
                enter = j;
                break; // Bland: smallest index
            }
        if (enter == -1) break;
        int leave = -1;
        Rational best_ratio(0);
        for (int i = 0; i < m; ++i) {
            if (t[i][enter] <= 0) continue;
            Rational ratio = t[i][n + m] / t[i][enter];
            if (leave == -1 || ratio < best_ratio ||
                (ratio == best_ratio && basic[i] < basic[leave])) {
                leave = i;
                best_ratio = ratio;
            }
        }
        if (leave == -1) {
            LpResult r;
            r.status = LpResult::Status::Unbounded;
            return r;
        }
        // pivot
        Rational piv = t[leave][enter];
        for (auto& v : t[leave]) v /= piv;
        for (int i = 0; i < m; ++i) {
            if (i == leave || t[i][enter] == 0) continue;
            Rational f = t[i][enter];
            for (int j = 0; j <= n + m; ++j) t[i][j] -= f * t[leave][j];
        }
        Rational f = reduced[enter];
        for (int j = 0; j < n + m; ++j) reduced[j] -= f * t[leave][j];
        objective += f * t[leave][n + m];
        basic[leave] = enter;
    }

    LpResult r;
    r.status = LpResult::Status::Optimal;
    r.value = objective;
    r.x.assign(n, Rational(0));
    for (int i = 0; i < m; ++i)
        if (basic[i] < n) r.x[basic[i]] = t[i][n + m];
    r.y.assign(m, Rational(0));
    for (int i = 0; i < m; ++i) r.y[i] = -reduced[n + i];
    return r;
}

} // namespace sparsity
