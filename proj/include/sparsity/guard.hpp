#ifndef SPARSITY_GUARD_HPP
#define SPARSITY_GUARD_HPP

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace sparsity {

// Thrown when an exact solver or generator is asked to run past its size guard.
// Guards fail loudly instead of running unbounded.
struct GuardError : std::runtime_error {
    explicit GuardError(const std::string& what) : std::runtime_error(what) {}
};

// Global multiplier applied to every default size guard, read once from the
// SPARSITY_GUARD_SCALE environment variable (default 1.0).
double guard_scale();

// Effective guard value: base_default scaled, or the explicit override when
// override_value >= 0.
int effective_guard(int base_default, int override_value = -1);

void check_guard(int value, int base_default, int override_value,
                 const std::string& who);

} // namespace sparsity

#endif
