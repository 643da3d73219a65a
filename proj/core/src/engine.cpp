#include "lion/engine.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "lion/error.hpp"
#include "lion/idw.hpp"
#include "lion/percentile.hpp"
#include "lion/power_select.hpp"

namespace lion {
namespace {

constexpr int kMemberOffsetAttempts = 64;

std::vector<bool> isolation_flags(const NeighborIndex& index, double r_x) {
    const std::vector<double> nn = index.nn_distances();
    std::vector<bool> flags(nn.size());
    for (std::size_t i = 0; i < nn.size(); ++i) flags[i] = nn[i] > r_x;
    return flags;
}

Point plus(PointView a, PointView b) {
    Point out(a.begin(), a.end());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += b[i];
    return out;
}

// Union-find with path halving; roots are always the lowest index.
std::size_t find_root(std::vector<std::size_t>& parent, std::size_t i) {
    while (parent[i] != i) {
        parent[i] = parent[parent[i]];
        i = parent[i];
    }
    return i;
}

}  // namespace

std::string_view to_string(OutcomeKind kind) {
    switch (kind) {
        case OutcomeKind::Interpolated: return "interpolated";
        case OutcomeKind::NearSingleNeighbor: return "near_single";
        case OutcomeKind::OutlierPlaced: return "outlier";
    }
    return "unknown";
}

OutcomeKind parse_outcome_kind(std::string_view name) {
    for (auto k : {OutcomeKind::Interpolated, OutcomeKind::NearSingleNeighbor,
                   OutcomeKind::OutlierPlaced}) {
        if (to_string(k) == name) return k;
    }
    throw DataError("unknown outcome kind '" + std::string(name) + "'");
}

std::vector<OutlierGroup> group_outliers(const Matrix& xs, std::span<const std::size_t> members,
                                         double r_x) {
    const std::size_t m = members.size();
    std::vector<std::size_t> order(members.begin(), members.end());
    std::sort(order.begin(), order.end());

    std::vector<std::size_t> parent(m);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t b = a + 1; b < m; ++b) {
            if (euclidean_distance(xs.row(order[a]), xs.row(order[b])) > r_x) continue;
            const std::size_t ra = find_root(parent, a);
            const std::size_t rb = find_root(parent, b);
            if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
        }
    }

    std::vector<OutlierGroup> groups;
    std::vector<std::size_t> group_of(m, 0);
    for (std::size_t a = 0; a < m; ++a) {
        const std::size_t root = find_root(parent, a);
        if (root == a) {
            group_of[a] = groups.size();
            groups.push_back(OutlierGroup{{}, order[a], {}});
        }
        groups[group_of[root]].member_indices.push_back(order[a]);
    }
    return groups;
}

LionModel::LionModel(Matrix x_train, Matrix y_train, LionConfig config, LionParameters params,
                     std::optional<OutlierPositionPool> pool)
    : x_index_(std::move(x_train)),
      y_train_(std::move(y_train)),
      config_(std::move(config)),
      params_(params),
      flags_(isolation_flags(x_index_, params.r_x)),
      pool_(pool ? std::move(*pool) : OutlierPositionPool::build(y_train_, params.r_y, config_.seed)) {
    check_invariants();
}

LionModel::LionModel(Matrix x_train, Matrix y_train, LionConfig config, LionParameters params,
                     std::vector<bool> training_outlier_flags, OutlierPositionPool pool)
    : x_index_(std::move(x_train)),
      y_train_(std::move(y_train)),
      config_(std::move(config)),
      params_(params),
      flags_(std::move(training_outlier_flags)),
      pool_(std::move(pool)) {
    check_invariants();
}

void LionModel::check_invariants() const {
    if (x_train().rows() != y_train_.rows()) {
        throw DataError("x_train has " + std::to_string(x_train().rows()) +
                        " rows but y_train has " + std::to_string(y_train_.rows()));
    }
    if (flags_.size() != y_train_.rows()) {
        throw DataError("training outlier flags do not match the training set size");
    }
    if (pool_.dims() != y_train_.cols()) {
        throw DataError("outlier pool dimensionality does not match the embedding");
    }
    if (!(params_.r_x >= 0.0) || !(params_.r_close >= 0.0) || !(params_.r_y > 0.0)) {
        throw DataError("radii must satisfy r_x >= 0, r_close >= 0, r_y > 0");
    }
    if (!(std::isfinite(params_.power) && params_.power > 0.0)) {
        throw DataError("power must be positive");
    }
}

LionModel::Routing LionModel::route(PointView x) const {
    std::vector<std::size_t> idx;
    std::vector<double> dist;
    x_index_.radius_query(x, params_.r_x, idx, dist);
    const double tol = exact_match_tolerance(x);

    Routing r;
    if (idx.size() > 1) {
        r.route = Route::Interpolate;
        r.y = idw_from_distances(dist, y_train_, idx, params_.power, tol);
    } else if (idx.size() == 1) {
        r.anchor = idx.front();
        if (dist.front() < tol) {
            // Coincides with its only neighbor: the interpolant is forced to y_i.
            r.route = Route::Exact;
            const PointView yi = y_train_.row(r.anchor);
            r.y.assign(yi.begin(), yi.end());
        } else if (flags_[r.anchor]) {
            r.route = Route::NearSingle;
        } else {
            r.route = Route::Outlier;
        }
    } else {
        r.route = Route::Outlier;
    }
    return r;
}

Point LionModel::near(PointView anchor_y, Rng& rng) const {
    return plus(anchor_y, random_offset_in_ball(anchor_y.size(), params_.r_close, rng));
}

Point LionModel::near_outside_r_y(PointView anchor_y, Rng& rng) const {
    // Rejection keeps group members as far from training data as their
    // representative; the representative itself always qualifies.
    for (int attempt = 0; attempt < kMemberOffsetAttempts; ++attempt) {
        Point candidate = near(anchor_y, rng);
        if (min_distance_to_rows(candidate, y_train_) >= params_.r_y) return candidate;
    }
    return Point(anchor_y.begin(), anchor_y.end());
}

MapOutcome LionModel::map_one(PointView x, Rng& rng) {
    Routing r = route(x);
    switch (r.route) {
        case Route::Interpolate:
        case Route::Exact:
            return {std::move(r.y), OutcomeKind::Interpolated, std::nullopt};
        case Route::NearSingle:
            return {near(y_train_.row(r.anchor), rng), OutcomeKind::NearSingleNeighbor,
                    std::nullopt};
        case Route::Outlier:
            break;
    }
    return {pool_.take_position(rng), OutcomeKind::OutlierPlaced, std::nullopt};
}

std::vector<MapOutcome> LionModel::map_batch(const Matrix& x_new, std::uint64_t seed) {
    if (x_new.cols() != x_train().cols()) {
        throw DataError("batch has " + std::to_string(x_new.cols()) + " columns, model expects " +
                        std::to_string(x_train().cols()));
    }
    Rng rng(seed);
    const std::size_t n = x_new.rows();

    // Routing and interpolation are pure; everything below that draws random
    // numbers runs sequentially in batch order.
    std::vector<Routing> routes(n);
    for (std::size_t i = 0; i < n; ++i) routes[i] = route(x_new.row(i));

    std::vector<MapOutcome> out(n);
    std::vector<std::size_t> outliers;
    for (std::size_t i = 0; i < n; ++i) {
        Routing& r = routes[i];
        switch (r.route) {
            case Route::Interpolate:
            case Route::Exact:
                out[i] = {std::move(r.y), OutcomeKind::Interpolated, std::nullopt};
                break;
            case Route::NearSingle:
                out[i] = {near(y_train_.row(r.anchor), rng), OutcomeKind::NearSingleNeighbor,
                          std::nullopt};
                break;
            case Route::Outlier:
                outliers.push_back(i);
                break;
        }
    }

    std::vector<OutlierGroup> groups = group_outliers(x_new, outliers, params_.r_x);
    for (std::size_t g = 0; g < groups.size(); ++g) {
        OutlierGroup& group = groups[g];
        group.placement = pool_.take_position(rng);
        for (std::size_t member : group.member_indices) {
            Point y = member == group.representative ? group.placement
                                                     : near_outside_r_y(group.placement, rng);
            out[member] = {std::move(y), OutcomeKind::OutlierPlaced, g};
        }
    }
    return out;
}

LionModel fit(const Matrix& x_train, const Matrix& y_train, const LionConfig& config) {
    config.validate();
    if (x_train.rows() != y_train.rows()) {
        throw DataError("x has " + std::to_string(x_train.rows()) + " rows but y has " +
                        std::to_string(y_train.rows()));
    }
    if (x_train.rows() < 3) throw DataError("fitting needs at least 3 training samples");
    if (y_train.cols() > 3) {
        throw UsageError("embeddings of more than 3 dimensions are not supported");
    }

    const std::vector<double> nn_x = NeighborIndex(x_train).nn_distances();
    const std::vector<double> nn_y = NeighborIndex(y_train).nn_distances();

    LionParameters params;
    params.r_x = percentile(nn_x, config.rx_percentile);
    params.r_close = percentile(nn_y, config.rclose_percentile);
    params.r_y =
        compute_r_y(nn_y, config.ry_coefficient, config.ry_percentile, params.r_close);
    params.power = config.power
                       ? *config.power
                       : select_power(params.r_x, x_train, y_train, config.power_grid).best_p;

    std::vector<bool> flags(nn_x.size());
    for (std::size_t i = 0; i < nn_x.size(); ++i) flags[i] = nn_x[i] > params.r_x;

    auto pool = OutlierPositionPool::build(y_train, params.r_y, config.seed);
    return LionModel(x_train, y_train, config, params, std::move(flags), std::move(pool));
}

}  // namespace lion
