#include "lion/neighbors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <utility>

#include "lion/error.hpp"
#include "lion/geometry.hpp"

namespace lion {

NeighborIndex::NeighborIndex(Matrix points) : points_(std::move(points)) {}

void NeighborIndex::check_dims(PointView x) const {
    if (x.size() != dims()) {
        throw DataError("query has " + std::to_string(x.size()) +
                        " coordinates, index has " + std::to_string(dims()));
    }
}

std::vector<std::size_t> NeighborIndex::radius_query(PointView x, double r) const {
    std::vector<std::size_t> indices;
    std::vector<double> distances;
    radius_query(x, r, indices, distances);
    return indices;
}

void NeighborIndex::radius_query(PointView x, double r, std::vector<std::size_t>& indices,
                                 std::vector<double>& distances) const {
    check_dims(x);
    if (!(r >= 0.0)) throw UsageError("query radius must be non-negative");
    indices.clear();
    distances.clear();
    for (std::size_t i = 0; i < size(); ++i) {
        const double d = euclidean_distance(x, points_.row(i));
        if (d <= r) {
            indices.push_back(i);
            distances.push_back(d);
        }
    }
}

std::vector<std::size_t> NeighborIndex::knn_query(PointView x, std::size_t k) const {
    check_dims(x);
    if (k == 0 || k > size()) {
        throw UsageError("k=" + std::to_string(k) + " outside [1, " + std::to_string(size()) +
                         "]");
    }
    std::vector<std::pair<double, std::size_t>> ranked(size());
    for (std::size_t i = 0; i < size(); ++i) {
        ranked[i] = {euclidean_distance(x, points_.row(i)), i};
    }
    std::partial_sort(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(k),
                      ranked.end());
    std::vector<std::size_t> out(k);
    for (std::size_t i = 0; i < k; ++i) out[i] = ranked[i].second;
    return out;
}

std::vector<double> NeighborIndex::nn_distances() const {
    const std::size_t n = size();
    if (n < 2) throw DataError("nearest-neighbor distances need at least two points");
    std::vector<double> best(n, std::numeric_limits<double>::infinity());
    for (std::size_t i = 0; i < n; ++i) {
        const PointView xi = points_.row(i);
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d = euclidean_distance(xi, points_.row(j));
            best[i] = std::min(best[i], d);
            best[j] = std::min(best[j], d);
        }
    }
    return best;
}

}  // namespace lion
