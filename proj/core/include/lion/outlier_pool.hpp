#pragma once

#include <cstddef>
#include <cstdint>
#include <mutex>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "lion/geometry.hpp"
#include "lion/matrix.hpp"

namespace lion {

/// r_y = k * r_yNN + r_close, where r_yNN is the q-th percentile of the
/// y-space nearest-neighbor distances (or their maximum when q is empty).
double compute_r_y(std::span<const double> nn_dists_y, double k, std::optional<double> q,
                   double r_close);

/// Plain-data snapshot of a pool; what gets serialized.
struct PoolState {
    std::size_t dims = 0;
    double r_y = 0.0;
    std::vector<double> lower;                // per-dimension min of Y_train
    std::vector<double> upper;                // per-dimension max of Y_train
    std::vector<std::size_t> cell_counts;     // interior cells per dimension
    std::vector<double> cell_side;            // per dimension, >= 2 r_y
    std::vector<double> free_centers;         // row-major, dims values per center
    std::size_t expansion_layers = 0;
    std::uint64_t seed = 0;
};

/// Pool of embedding-space positions where outliers may be placed.
///
/// The bounding box of the training embedding is split per dimension into
/// the largest whole number of equal cells whose side is at least 2 r_y.
/// Centers of cells that hold no training point are free positions: each is
/// at least r_y from every training embedding and at least one cell side
/// from every other center. When the pool runs dry a ring of cells is added
/// around the covered box.
///
/// Cell c along a dimension with n interior cells spans
///   [lower + c*side, lower + (c+1)*side)     for c < n (last interior cell closed)
///   [upper + (c-n)*side, upper + (c-n+1)*side) for c >= n
/// so ring cells are anchored to the box edges.
///
/// take_position() and expand() lock an internal mutex; copies are deep.
class OutlierPositionPool {
public:
    /// Build from the training embedding. Requires 1 <= d <= 3, r_y > 0 and
    /// a non-degenerate extent in every dimension.
    static OutlierPositionPool build(const Matrix& y_train, double r_y, std::uint64_t seed);

    /// Restore a serialized pool, verifying its invariants against y_train.
    static OutlierPositionPool restore(PoolState state, const Matrix& y_train);

    OutlierPositionPool(const OutlierPositionPool& other);
    OutlierPositionPool& operator=(const OutlierPositionPool& other);
    OutlierPositionPool(OutlierPositionPool&& other) noexcept;
    OutlierPositionPool& operator=(OutlierPositionPool&& other) noexcept;

    PoolState state() const;

    std::size_t dims() const noexcept { return state_.dims; }
    double r_y() const noexcept { return state_.r_y; }
    std::size_t expansion_layers() const;
    std::size_t available() const;
    std::vector<Point> free_centers() const;

    /// Lower/upper edge of cell `c` along `dim` (see class comment).
    std::pair<double, double> cell_interval(std::size_t dim, long c) const;

    /// Remove and return a uniformly random free center, expanding first if
    /// the pool is empty.
    Point take_position(Rng& rng);

    /// Add one ring of cells around the currently covered box.
    void expand();

private:
    explicit OutlierPositionPool(PoolState state) : state_(std::move(state)) {}

    double cell_center(std::size_t dim, long c) const;
    void expand_locked();

    PoolState state_;
    mutable std::mutex mutex_;
};

}  // namespace lion
