#include "lion/config.hpp"

#include <cmath>
#include <string>

#include "lion/error.hpp"

namespace lion {
namespace {

void require_percent(double value, const char* name, bool allow_zero) {
    const bool ok = std::isfinite(value) && value <= 100.0 &&
                    (allow_zero ? value >= 0.0 : value > 0.0);
    if (!ok) {
        throw UsageError(std::string(name) + "=" + std::to_string(value) +
                         (allow_zero ? " must lie in [0, 100]" : " must lie in (0, 100]"));
    }
}

}  // namespace

void PowerGrid::validate() const {
    if (!(std::isfinite(lo) && lo > 0.0)) {
        throw UsageError("power grid lower bound must be positive");
    }
    if (!(std::isfinite(hi) && lo < hi)) {
        throw UsageError("power grid requires lo < hi");
    }
    if (!(std::isfinite(step) && step > 0.0)) {
        throw UsageError("power grid step must be positive");
    }
    if (!(std::isfinite(refine_step) && refine_step >= 0.0)) {
        throw UsageError("power grid refine step must be non-negative");
    }
}

void LionConfig::validate() const {
    require_percent(rx_percentile, "rx_percentile", false);
    require_percent(rclose_percentile, "rclose_percentile", false);
    if (ry_percentile) require_percent(*ry_percentile, "ry_percentile", false);
    if (!(std::isfinite(ry_coefficient) && ry_coefficient > 0.0)) {
        throw UsageError("ry_coefficient must be positive");
    }
    if (power && !(std::isfinite(*power) && *power > 0.0)) {
        throw UsageError("power must be positive");
    }
    power_grid.validate();
}

}  // namespace lion
