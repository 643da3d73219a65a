#pragma once

#include <cstdint>
#include <random>

#include "lion/matrix.hpp"

namespace lion {

/// Random engine used for every stochastic step (outlier dispensing,
/// near-neighbor offsets). Seeded explicitly by callers.
using Rng = std::mt19937_64;

// Euclidean is the only metric. Callers that need another metric would
// swap these two functions; nothing else depends on the formula.
double squared_distance(PointView a, PointView b);
double euclidean_distance(PointView a, PointView b);

double norm(PointView a);

/// Uniform sample from the closed d-ball of the given radius around the
/// origin (normalized Gaussian direction, radius scaled by u^(1/d)).
Point random_offset_in_ball(std::size_t dims, double radius, Rng& rng);

/// Smallest distance from `p` to any row of `points`.
double min_distance_to_rows(PointView p, const Matrix& points);

}  // namespace lion
