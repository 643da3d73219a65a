#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "lion/matrix.hpp"
#include "lion/metrics.hpp"

namespace lion::fixtures {

/// Gaussian blobs in K dimensions with a 2-D embedding that is locally
/// linear in x plus noise: y = c2[b] + (x - c[b]) * A + N(0, noise).
struct Blobs {
    Matrix x;
    Matrix y;
    std::vector<Label> labels;
};

Blobs make_blobs(std::size_t n, std::size_t dims, std::size_t blobs, std::uint64_t seed,
                 double noise = 0.3, double spread = 8.0);

/// Uniform samples from [lo, hi]^cols.
Matrix random_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed, double lo = 0.0,
                     double hi = 1.0);

/// Points farther from every training row than the largest training
/// nearest-neighbor distance, drawn uniformly from an inflated bounding box.
Matrix far_outliers(const Matrix& x_train, std::size_t count, std::uint64_t seed);

/// Points placed next to random training rows, each strictly closer to its
/// anchor than any other training row is. `anchors` receives the rows used.
Matrix near_cluster_points(const Matrix& x_train, std::size_t count, std::uint64_t seed,
                           std::vector<std::size_t>& anchors);

}  // namespace lion::fixtures
