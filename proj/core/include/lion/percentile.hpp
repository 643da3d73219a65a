#pragma once

#include <span>

namespace lion {

/// q-th percentile (q in [0, 100]) with linear interpolation between the
/// closest ranks of the sorted values: q=0 is the minimum, q=100 the maximum.
double percentile(std::span<const double> values, double q);

/// Percentage of `values` that are <= `x`, in [0, 100].
double percentile_rank(std::span<const double> values, double x);

}  // namespace lion
