#include "lion/outlier_pool.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "lion/error.hpp"
#include "lion/percentile.hpp"

namespace lion {
namespace {

constexpr std::size_t kMaxDims = 3;
constexpr double kMaxInteriorCells = 5e7;

// Visits every integer tuple in the box [lo_d, hi_d] (inclusive) in
// lexicographic order, last dimension fastest.
template <typename Fn>
void for_each_cell(const std::vector<long>& lo, const std::vector<long>& hi, Fn&& fn) {
    const std::size_t d = lo.size();
    for (std::size_t i = 0; i < d; ++i) {
        if (hi[i] < lo[i]) return;
    }
    std::vector<long> c = lo;
    while (true) {
        fn(c);
        std::size_t i = d;
        while (i > 0) {
            --i;
            if (c[i] < hi[i]) {
                ++c[i];
                break;
            }
            c[i] = lo[i];
            if (i == 0) return;
        }
    }
}

}  // namespace

double compute_r_y(std::span<const double> nn_dists_y, double k, std::optional<double> q,
                   double r_close) {
    if (nn_dists_y.empty()) throw DataError("r_y needs a nearest-neighbor distribution");
    const double r_ynn = q ? percentile(nn_dists_y, *q) : percentile(nn_dists_y, 100.0);
    return k * r_ynn + r_close;
}

OutlierPositionPool OutlierPositionPool::build(const Matrix& y_train, double r_y,
                                               std::uint64_t seed) {
    const std::size_t d = y_train.cols();
    if (d > kMaxDims) {
        throw UsageError("outlier placement supports embeddings of at most 3 dimensions, got " +
                         std::to_string(d));
    }
    if (!(std::isfinite(r_y) && r_y > 0.0)) {
        throw UsageError("r_y must be positive, got " + std::to_string(r_y));
    }

    PoolState s;
    s.dims = d;
    s.r_y = r_y;
    s.seed = seed;
    s.lower.assign(d, std::numeric_limits<double>::infinity());
    s.upper.assign(d, -std::numeric_limits<double>::infinity());
    for (std::size_t i = 0; i < y_train.rows(); ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            s.lower[j] = std::min(s.lower[j], y_train(i, j));
            s.upper[j] = std::max(s.upper[j], y_train(i, j));
        }
    }

    double total_cells = 1.0;
    for (std::size_t j = 0; j < d; ++j) {
        const double range = s.upper[j] - s.lower[j];
        if (!(range > 0.0)) {
            throw DataError("training embedding has zero extent in dimension " +
                            std::to_string(j));
        }
        auto n = static_cast<std::size_t>(std::floor(range / (2.0 * r_y)));
        while (n > 0 && range / static_cast<double>(n) < 2.0 * r_y) --n;
        s.cell_counts.push_back(n);
        s.cell_side.push_back(n > 0 ? range / static_cast<double>(n) : 2.0 * r_y);
        total_cells *= static_cast<double>(n);
    }
    if (total_cells > kMaxInteriorCells) {
        throw UsageError("r_y=" + std::to_string(r_y) + " yields " +
                         std::to_string(total_cells) + " outlier cells; choose a larger r_y");
    }

    OutlierPositionPool pool(std::move(s));
    PoolState& st = pool.state_;
    if (total_cells == 0.0) return pool;

    // Mark interior cells holding a training point (half-open, last cell closed).
    std::vector<std::size_t> stride(d, 1);
    for (std::size_t j = d; j-- > 1;) stride[j - 1] = stride[j] * st.cell_counts[j];
    std::vector<char> occupied(static_cast<std::size_t>(total_cells), 0);
    for (std::size_t i = 0; i < y_train.rows(); ++i) {
        std::size_t flat = 0;
        for (std::size_t j = 0; j < d; ++j) {
            const double rel = (y_train(i, j) - st.lower[j]) / st.cell_side[j];
            auto c = static_cast<long>(std::floor(rel));
            c = std::clamp(c, 0L, static_cast<long>(st.cell_counts[j]) - 1);
            flat += static_cast<std::size_t>(c) * stride[j];
        }
        occupied[flat] = 1;
    }

    std::vector<long> lo(d, 0), hi(d);
    for (std::size_t j = 0; j < d; ++j) hi[j] = static_cast<long>(st.cell_counts[j]) - 1;
    Point center(d);
    for_each_cell(lo, hi, [&](const std::vector<long>& c) {
        std::size_t flat = 0;
        for (std::size_t j = 0; j < d; ++j) flat += static_cast<std::size_t>(c[j]) * stride[j];
        if (occupied[flat]) return;
        for (std::size_t j = 0; j < d; ++j) center[j] = pool.cell_center(j, c[j]);
        // Rounding in the cell side can leave a neighbor-cell point a hair
        // inside r_y; such cells are dropped.
        if (min_distance_to_rows(center, y_train) < r_y) return;
        st.free_centers.insert(st.free_centers.end(), center.begin(), center.end());
    });
    return pool;
}

OutlierPositionPool OutlierPositionPool::restore(PoolState s, const Matrix& y_train) {
    const std::size_t d = s.dims;
    if (d == 0 || d > kMaxDims || d != y_train.cols()) {
        throw DataError("pool.dims inconsistent with the training embedding");
    }
    if (!(std::isfinite(s.r_y) && s.r_y > 0.0)) throw DataError("pool.r_y must be positive");
    if (s.lower.size() != d || s.upper.size() != d) throw DataError("pool.bounds has wrong size");
    if (s.cell_counts.size() != d) throw DataError("pool.cell_counts has wrong size");
    if (s.cell_side.size() != d) throw DataError("pool.cell_side has wrong size");
    for (std::size_t j = 0; j < d; ++j) {
        if (!(s.upper[j] > s.lower[j])) throw DataError("pool.bounds is degenerate");
        if (!(s.cell_side[j] >= 2.0 * s.r_y)) throw DataError("pool.cell_side is below 2 r_y");
    }
    if (s.free_centers.size() % d != 0) throw DataError("pool.free_centers has ragged rows");
    for (std::size_t k = 0; k < s.free_centers.size(); k += d) {
        const PointView c(s.free_centers.data() + k, d);
        for (double v : c) {
            if (!std::isfinite(v)) throw DataError("pool.free_centers holds non-finite values");
        }
        if (min_distance_to_rows(c, y_train) < s.r_y) {
            throw DataError("pool.free_centers holds a position within r_y of training data");
        }
    }
    return OutlierPositionPool(std::move(s));
}

OutlierPositionPool::OutlierPositionPool(const OutlierPositionPool& other)
    : state_(other.state()) {}

OutlierPositionPool& OutlierPositionPool::operator=(const OutlierPositionPool& other) {
    if (this != &other) {
        PoolState copy = other.state();
        std::lock_guard lock(mutex_);
        state_ = std::move(copy);
    }
    return *this;
}

OutlierPositionPool::OutlierPositionPool(OutlierPositionPool&& other) noexcept
    : state_(std::move(other.state_)) {}

OutlierPositionPool& OutlierPositionPool::operator=(OutlierPositionPool&& other) noexcept {
    if (this != &other) state_ = std::move(other.state_);
    return *this;
}

PoolState OutlierPositionPool::state() const {
    std::lock_guard lock(mutex_);
    return state_;
}

std::size_t OutlierPositionPool::expansion_layers() const {
    std::lock_guard lock(mutex_);
    return state_.expansion_layers;
}

std::size_t OutlierPositionPool::available() const {
    std::lock_guard lock(mutex_);
    return state_.free_centers.size() / state_.dims;
}

std::vector<Point> OutlierPositionPool::free_centers() const {
    std::lock_guard lock(mutex_);
    std::vector<Point> out;
    const std::size_t d = state_.dims;
    for (std::size_t k = 0; k < state_.free_centers.size(); k += d) {
        out.emplace_back(state_.free_centers.begin() + static_cast<std::ptrdiff_t>(k),
                         state_.free_centers.begin() + static_cast<std::ptrdiff_t>(k + d));
    }
    return out;
}

std::pair<double, double> OutlierPositionPool::cell_interval(std::size_t dim, long c) const {
    const auto n = static_cast<long>(state_.cell_counts[dim]);
    const double side = state_.cell_side[dim];
    if (c < n) {
        return {state_.lower[dim] + static_cast<double>(c) * side,
                state_.lower[dim] + static_cast<double>(c + 1) * side};
    }
    return {state_.upper[dim] + static_cast<double>(c - n) * side,
            state_.upper[dim] + static_cast<double>(c - n + 1) * side};
}

double OutlierPositionPool::cell_center(std::size_t dim, long c) const {
    const auto n = static_cast<long>(state_.cell_counts[dim]);
    const double side = state_.cell_side[dim];
    if (c < n) return state_.lower[dim] + (static_cast<double>(c) + 0.5) * side;
    return state_.upper[dim] + (static_cast<double>(c - n) + 0.5) * side;
}

Point OutlierPositionPool::take_position(Rng& rng) {
    std::lock_guard lock(mutex_);
    const std::size_t d = state_.dims;
    while (state_.free_centers.empty()) expand_locked();

    const std::size_t count = state_.free_centers.size() / d;
    std::uniform_int_distribution<std::size_t> pick(0, count - 1);
    const std::size_t k = pick(rng);

    auto& fc = state_.free_centers;
    const auto first = fc.begin() + static_cast<std::ptrdiff_t>(k * d);
    Point out(first, first + static_cast<std::ptrdiff_t>(d));
    // Swap-remove: move the last center into the vacated slot.
    std::copy(fc.end() - static_cast<std::ptrdiff_t>(d), fc.end(), first);
    fc.resize(fc.size() - d);
    return out;
}

void OutlierPositionPool::expand() {
    std::lock_guard lock(mutex_);
    expand_locked();
}

void OutlierPositionPool::expand_locked() {
    const std::size_t d = state_.dims;
    const auto layer = static_cast<long>(state_.expansion_layers) + 1;
    std::vector<long> lo(d), hi(d);
    for (std::size_t j = 0; j < d; ++j) {
        lo[j] = -layer;
        hi[j] = static_cast<long>(state_.cell_counts[j]) - 1 + layer;
    }
    Point center(d);
    for_each_cell(lo, hi, [&](const std::vector<long>& c) {
        bool on_ring = false;
        for (std::size_t j = 0; j < d; ++j) on_ring |= (c[j] == lo[j] || c[j] == hi[j]);
        if (!on_ring) return;
        for (std::size_t j = 0; j < d; ++j) center[j] = cell_center(j, c[j]);
        state_.free_centers.insert(state_.free_centers.end(), center.begin(), center.end());
    });
    state_.expansion_layers = static_cast<std::size_t>(layer);
}

}  // namespace lion
