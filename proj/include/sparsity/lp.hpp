#ifndef SPARSITY_LP_HPP
#define SPARSITY_LP_HPP

#include <vector>

#include "sparsity/oracle.hpp"

namespace sparsity {

// Dense exact-rational primal simplex for
//     maximize c.x  subject to  A x <= b,  x >= 0,
// with b >= 0 (the slack basis is feasible). Bland's rule, so termination is
// guaranteed and the run is deterministic.
struct LpResult {
    enum class Status { Optimal, Unbounded } status = Status::Optimal;
    Rational value;            // optimal objective (when Optimal)
    std::vector<Rational> x;   // primal solution
    std::vector<Rational> y;   // dual prices, one per row (when Optimal)
};

LpResult simplex_max(const std::vector<std::vector<Rational>>& a,
                     const std::vector<Rational>& b, const std::vector<Rational>& c);

} // namespace sparsity

#endif
