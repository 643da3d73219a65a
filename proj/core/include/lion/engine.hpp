#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "lion/config.hpp"
#include "lion/geometry.hpp"
#include "lion/matrix.hpp"
#include "lion/neighbors.hpp"
#include "lion/outlier_pool.hpp"

namespace lion {

enum class OutcomeKind { Interpolated, NearSingleNeighbor, OutlierPlaced };

/// "interpolated", "near_single", "outlier".
std::string_view to_string(OutcomeKind kind);
OutcomeKind parse_outcome_kind(std::string_view name);

struct MapOutcome {
    Point y;
    OutcomeKind kind = OutcomeKind::Interpolated;
    /// Set for outliers placed as part of a batch group.
    std::optional<std::size_t> group_id;
};

/// Batch outliers linked by chains of steps of length <= r_x.
struct OutlierGroup {
    std::vector<std::size_t> member_indices;  // ascending batch indices
    std::size_t representative = 0;           // lowest member index
    Point placement;                          // filled in by map_batch
};

/// Single-linkage components of `members` (rows of `xs`) under
/// ||x_a - x_b|| <= r_x, ordered by representative.
std::vector<OutlierGroup> group_outliers(const Matrix& xs, std::span<const std::size_t> members,
                                         double r_x);

struct LionParameters {
    double r_x = 0.0;
    double r_close = 0.0;
    double r_y = 0.0;
    double power = 1.0;
};

/// Fitted out-of-sample mapper over a fixed training embedding.
///
/// New samples with two or more training neighbors within r_x are placed by
/// local IDW over those neighbors. A sample whose only neighbor is itself an
/// isolated training sample is placed within r_close of that neighbor. All
/// other samples are outliers and take a free cell center from the pool.
///
/// Mapping only mutates the outlier pool, which serializes its own access.
class LionModel {
public:
    /// Assemble a model from explicit parameters. Training outlier flags are
    /// derived from r_x; the pool is built from y_train unless given.
    LionModel(Matrix x_train, Matrix y_train, LionConfig config, LionParameters params,
              std::optional<OutlierPositionPool> pool = std::nullopt);

    /// Restore a model whose flags and pool were computed previously.
    LionModel(Matrix x_train, Matrix y_train, LionConfig config, LionParameters params,
              std::vector<bool> training_outlier_flags, OutlierPositionPool pool);

    const Matrix& x_train() const noexcept { return x_index_.points(); }
    const Matrix& y_train() const noexcept { return y_train_; }
    const NeighborIndex& x_index() const noexcept { return x_index_; }
    const LionConfig& config() const noexcept { return config_; }
    const LionParameters& parameters() const noexcept { return params_; }
    double r_x() const noexcept { return params_.r_x; }
    double r_close() const noexcept { return params_.r_close; }
    double r_y() const noexcept { return params_.r_y; }
    double power() const noexcept { return params_.power; }
    const std::vector<bool>& training_outlier_flags() const noexcept { return flags_; }
    const OutlierPositionPool& pool() const noexcept { return pool_; }

    MapOutcome map_one(PointView x, Rng& rng);

    /// Maps a batch. Outliers within r_x of each other share one pool
    /// position: the lowest-index member takes it, the others land within
    /// r_close of it. Deterministic for a fixed (model state, batch, seed).
    std::vector<MapOutcome> map_batch(const Matrix& x_new, std::uint64_t seed);

private:
    enum class Route { Interpolate, Exact, NearSingle, Outlier };
    struct Routing {
        Route route = Route::Outlier;
        std::size_t anchor = 0;  // training index for Exact / NearSingle
        Point y;                 // result for Interpolate / Exact
    };

    Routing route(PointView x) const;
    Point near(PointView anchor_y, Rng& rng) const;
    Point near_outside_r_y(PointView anchor_y, Rng& rng) const;
    void check_invariants() const;

    NeighborIndex x_index_;
    Matrix y_train_;
    LionConfig config_;
    LionParameters params_;
    std::vector<bool> flags_;
    OutlierPositionPool pool_;
};

/// Fit radii, power and outlier pool for the given training embedding.
LionModel fit(const Matrix& x_train, const Matrix& y_train, const LionConfig& config);

}  // namespace lion
