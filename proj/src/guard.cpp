#include "sparsity/guard.hpp"

#include <cmath>

namespace sparsity {

double guard_scale() {
    static const double scale = [] {
        const char* env = std::getenv("SPARSITY_GUARD_SCALE");
        if (!env) return 1.0;
        try {
            double v = std::stod(env);
            return v > 0 ? v : 1.0;
        } catch (...) {
            return 1.0;
        }
    }();
    return scale;
}

int effective_guard(int base_default, int override_value) {
    if (override_value >= 0) return override_value;
    return static_cast<int>(std::floor(base_default * guard_scale()));
}

void check_guard(int value, int base_default, int override_value,
                 const std::string& who) {
    int limit = effective_guard(base_default, override_value);
    if (value > limit) {
        throw GuardError(who + ": size " + std::to_string(value) +
                         " exceeds guard " + std::to_string(limit));
    }
}

} // namespace sparsity
