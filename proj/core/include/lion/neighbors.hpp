#pragma once

#include <cstddef>
#include <vector>

#include "lion/matrix.hpp"

namespace lion {

/// Exact radius / k-NN search over a fixed point set.
///
/// Queries are a linear scan, O(N*K) per query, which matches the cost of
/// the interpolation that consumes the result. The index is immutable after
/// construction and safe to query from multiple threads.
class NeighborIndex {
public:
    explicit NeighborIndex(Matrix points);

    const Matrix& points() const noexcept { return points_; }
    std::size_t size() const noexcept { return points_.rows(); }
    std::size_t dims() const noexcept { return points_.cols(); }

    /// Indices i with ||x - x_i|| <= r, ascending.
    std::vector<std::size_t> radius_query(PointView x, double r) const;

    /// Same as radius_query, also returning the matching distances.
    void radius_query(PointView x, double r, std::vector<std::size_t>& indices,
                      std::vector<double>& distances) const;

    /// The k nearest points ordered by distance, ties broken by lower index.
    std::vector<std::size_t> knn_query(PointView x, std::size_t k) const;

    /// Distance from every point to its nearest other point. Requires N >= 2.
    std::vector<double> nn_distances() const;

private:
    void check_dims(PointView x) const;

    Matrix points_;
};

}  // namespace lion
