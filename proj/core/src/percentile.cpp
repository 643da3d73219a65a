#include "lion/percentile.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "lion/error.hpp"

namespace lion {

double percentile(std::span<const double> values, double q) {
    if (values.empty()) {
        throw DataError("percentile of an empty list");
    }
    if (!(q >= 0.0 && q <= 100.0)) {
        throw UsageError("percentile q=" + std::to_string(q) + " outside [0, 100]");
    }
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());

    const double rank = q / 100.0 * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(rank));
    const auto hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = rank - static_cast<double>(lo);
    if (frac == 0.0) return sorted[lo];
    return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

double percentile_rank(std::span<const double> values, double x) {
    if (values.empty()) {
        throw DataError("percentile rank against an empty distribution");
    }
    const auto at_or_below =
        std::count_if(values.begin(), values.end(), [x](double v) { return v <= x; });
    return 100.0 * static_cast<double>(at_or_below) / static_cast<double>(values.size());
}

}  // namespace lion
