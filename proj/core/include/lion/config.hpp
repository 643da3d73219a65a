#pragma once

#include <cstdint>
#include <optional>

namespace lion {

/// Search grid for the IDW power. Points are lo, lo+step, ... up to hi.
/// When 0 < refine_step < step, a second pass at refine_step is run in
/// [best - step, best + step] (clipped to [lo, hi]).
struct PowerGrid {
    double lo = 0.5;
    double hi = 50.0;
    double step = 0.5;
    double refine_step = 0.1;

    void validate() const;
};

struct LionConfig {
    /// Percentile of x-space nearest-neighbor distances used as r_x.
    double rx_percentile = 99.0;
    /// Multiplier applied to the y-space nearest-neighbor radius for r_y.
    double ry_coefficient = 2.0;
    /// Percentile of y-space nearest-neighbor distances for r_y;
    /// std::nullopt means the maximum nearest-neighbor distance.
    std::optional<double> ry_percentile;
    /// Percentile of y-space nearest-neighbor distances used as r_close.
    double rclose_percentile = 10.0;
    /// Fixed IDW power; std::nullopt selects it by leave-one-out search.
    std::optional<double> power;
    PowerGrid power_grid;
    std::uint64_t seed = 0;

    void validate() const;
};

}  // namespace lion
