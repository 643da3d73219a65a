#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "lion/error.hpp"
#include "lion/geometry.hpp"
#include "lion/outlier_pool.hpp"
#include "support/fixtures.hpp"

using namespace lion;

namespace {

// Cell index of a free center along one dimension.
long cell_of_center(const PoolState& s, std::size_t j, double v) {
    const auto n = static_cast<long>(s.cell_counts[j]);
    if (v < s.upper[j] || n == 0) {
        const double rel = (v - s.lower[j]) / s.cell_side[j];
        const auto c = static_cast<long>(std::floor(rel));
        if (c < n || n == 0) return c;
    }
    return n + static_cast<long>(std::floor((v - s.upper[j]) / s.cell_side[j]));
}

// Membership of a point in an interior cell: half-open, the last cell closed.
bool in_cell(const PoolState& s, std::size_t j, long c, double v) {
    const auto n = static_cast<long>(s.cell_counts[j]);
    const double lo = s.lower[j] + static_cast<double>(c) * s.cell_side[j];
    const double hi = c == n - 1 ? s.upper[j] : s.lower[j] + static_cast<double>(c + 1) * s.cell_side[j];
    return c == n - 1 ? (v >= lo && v <= hi) : (v >= lo && v < hi);
}

std::set<std::vector<double>> as_set(const std::vector<Point>& pts) {
    return {pts.begin(), pts.end()};
}

}  // namespace

TEST(ComputeRy, MaxWithCoefficient) {
    const std::vector<double> d{1, 2, 3};
    EXPECT_DOUBLE_EQ(compute_r_y(d, 2.0, std::nullopt, 0.5), 6.5);
}

TEST(ComputeRy, PlainMaximum) {
    const std::vector<double> d{0.4, 2.5, 1.0};
    EXPECT_DOUBLE_EQ(compute_r_y(d, 1.0, std::nullopt, 0.0), 2.5);
}

TEST(ComputeRy, ConstantDistribution) {
    const std::vector<double> d(7, 1.5);
    EXPECT_DOUBLE_EQ(compute_r_y(d, 3.0, 50.0, 0.25), 4.75);
}

TEST(PoolBuild, FiveByFiveGrid) {
    const Matrix y(2, 2, {0, 0, 10, 10});
    const auto pool = OutlierPositionPool::build(y, 1.0, 0);
    const PoolState s = pool.state();
    EXPECT_EQ(s.cell_counts, (std::vector<std::size_t>{5, 5}));
    EXPECT_EQ(s.cell_side, (std::vector<double>{2.0, 2.0}));

    // The two corner cells hold training points; the other 23 are free.
    std::set<std::vector<double>> expected;
    for (int a = 0; a < 5; ++a) {
        for (int b = 0; b < 5; ++b) {
            if ((a == 0 && b == 0) || (a == 4 && b == 4)) continue;
            expected.insert({1.0 + 2 * a, 1.0 + 2 * b});
        }
    }
    EXPECT_EQ(as_set(pool.free_centers()), expected);
}

TEST(PoolBuild, CenterPointRemovesItsCell) {
    const Matrix y(3, 2, {-5, -5, 5, 5, 0, 0});
    const auto pool = OutlierPositionPool::build(y, 1.0, 0);
    const auto centers = pool.free_centers();
    EXPECT_EQ(centers.size(), 22u);
    for (const auto& c : centers) EXPECT_GE(min_distance_to_rows(c, y), 1.0);
    EXPECT_EQ(as_set(centers).count({0.0, 0.0}), 0u);
}

TEST(PoolBuild, SidesStretchToFitWholeCells) {
    const Matrix y(2, 2, {0, 0, 11, 7});
    const PoolState s = OutlierPositionPool::build(y, 1.0, 0).state();
    EXPECT_EQ(s.cell_counts, (std::vector<std::size_t>{5, 3}));
    EXPECT_DOUBLE_EQ(s.cell_side[0], 2.2);
    EXPECT_NEAR(s.cell_side[1], 7.0 / 3.0, 1e-15);
}

TEST(PoolBuild, OnePointPerCellLeavesPoolEmpty) {
    std::vector<Point> rows;
    for (int a = 0; a < 5; ++a) {
        for (int b = 0; b < 5; ++b) rows.push_back({2.0 * a + 0.5, 2.0 * b + 0.5});
    }
    rows.push_back({0, 0});
    rows.push_back({10, 10});
    const auto pool = OutlierPositionPool::build(Matrix::from_rows(rows), 1.0, 0);
    EXPECT_EQ(pool.available(), 0u);
}

TEST(PoolBuild, ShortBoxStartsEmptyButExpands) {
    const Matrix y(2, 2, {0, 0, 1, 1});
    auto pool = OutlierPositionPool::build(y, 1.0, 0);
    EXPECT_EQ(pool.state().cell_counts, (std::vector<std::size_t>{0, 0}));
    EXPECT_EQ(pool.available(), 0u);
    Rng rng(1);
    const Point p = pool.take_position(rng);
    EXPECT_GE(min_distance_to_rows(p, y), 1.0);
}

TEST(PoolBuild, Errors) {
    EXPECT_THROW(OutlierPositionPool::build(Matrix(2, 2, {0, 1, 5, 1}), 1.0, 0), DataError);
    EXPECT_THROW(OutlierPositionPool::build(Matrix(2, 4, {0, 0, 0, 0, 1, 1, 1, 1}), 0.1, 0),
                 UsageError);
    EXPECT_THROW(OutlierPositionPool::build(Matrix(2, 2, {0, 0, 1, 1}), 0.0, 0), UsageError);
}

TEST(PoolTake, SingleCenterThenEmpty) {
    const Matrix y(3, 1, {0, 4, 6});
    auto pool = OutlierPositionPool::build(y, 1.0, 0);
    ASSERT_EQ(pool.available(), 1u);
    Rng rng(0);
    EXPECT_EQ(pool.take_position(rng), (Point{3.0}));
    EXPECT_EQ(pool.available(), 0u);
}

TEST(PoolTake, DeterministicForFixedSeed) {
    const Matrix y(2, 2, {0, 0, 10, 10});
    auto a = OutlierPositionPool::build(y, 1.0, 7);
    auto b = OutlierPositionPool::build(y, 1.0, 7);
    Rng ra(7), rb(7);
    for (int i = 0; i < 40; ++i) EXPECT_EQ(a.take_position(ra), b.take_position(rb));
}

TEST(PoolTake, ExhaustedPoolGoesOutsideBounds) {
    const Matrix y(2, 2, {0, 0, 10, 10});
    auto pool = OutlierPositionPool::build(y, 1.0, 0);
    Rng rng(3);
    const std::size_t n = pool.available();
    for (std::size_t i = 0; i < n; ++i) pool.take_position(rng);
    const Point p = pool.take_position(rng);
    EXPECT_EQ(pool.expansion_layers(), 1u);
    EXPECT_TRUE(p[0] < 0 || p[0] > 10 || p[1] < 0 || p[1] > 10);
}

TEST(PoolTake, DistinctPositionsAreTwoRyApart) {
    const auto blobs = fixtures::make_blobs(200, 3, 4, 5);
    const double r_y = 3.0;
    auto pool = OutlierPositionPool::build(blobs.y, r_y, 0);
    Rng rng(0);
    std::vector<Point> taken;
    for (int i = 0; i < 300; ++i) taken.push_back(pool.take_position(rng));
    for (std::size_t a = 0; a < taken.size(); ++a) {
        ASSERT_GE(min_distance_to_rows(taken[a], blobs.y), r_y);
        for (std::size_t b = a + 1; b < taken.size(); ++b) {
            ASSERT_GE(euclidean_distance(taken[a], taken[b]), 2.0 * r_y * (1 - 1e-12));
        }
    }
}

TEST(PoolExpand, RingCounts2D) {
    const Matrix y(2, 2, {0, 0, 10, 10});
    auto pool = OutlierPositionPool::build(y, 1.0, 0);
    const std::size_t before = pool.available();
    pool.expand();
    EXPECT_EQ(pool.available() - before, 24u);
    pool.expand();
    EXPECT_EQ(pool.available() - before, 24u + 32u);
    EXPECT_EQ(pool.expansion_layers(), 2u);
}

TEST(PoolExpand, OneDimensionAddsTwo) {
    const Matrix y(3, 1, {0, 4, 6});
    auto pool = OutlierPositionPool::build(y, 1.0, 0);
    pool.expand();
    EXPECT_EQ(pool.available(), 3u);
    EXPECT_EQ(as_set(pool.free_centers()),
              (std::set<std::vector<double>>{{-1.0}, {3.0}, {7.0}}));
}

TEST(PoolExpand, ThreeDimensions) {
    const Matrix y(2, 3, {0, 0, 0, 6, 6, 6});
    auto pool = OutlierPositionPool::build(y, 1.0, 0);
    const std::size_t before = pool.available();
    EXPECT_EQ(before, 27u - 2u);
    pool.expand();
    EXPECT_EQ(pool.available() - before, 125u - 27u);
}

TEST(PoolCells, UnionCoversBoundingBox) {
    const auto blobs = fixtures::make_blobs(100, 2, 3, 8);
    const auto pool = OutlierPositionPool::build(blobs.y, 1.7, 0);
    const PoolState s = pool.state();
    for (std::size_t j = 0; j < 2; ++j) {
        const auto n = static_cast<long>(s.cell_counts[j]);
        ASSERT_GT(n, 0);
        EXPECT_EQ(pool.cell_interval(j, 0).first, s.lower[j]);
        EXPECT_NEAR(pool.cell_interval(j, n - 1).second, s.upper[j], 1e-9 * (1 + std::fabs(s.upper[j])));
        for (long c = 0; c + 1 < n; ++c) {
            EXPECT_EQ(pool.cell_interval(j, c).second, pool.cell_interval(j, c + 1).first);
        }
        // Ring cells sit flush against the box.
        EXPECT_EQ(pool.cell_interval(j, n).first, s.upper[j]);
        EXPECT_EQ(pool.cell_interval(j, -1).second, s.lower[j]);
    }
}

TEST(PoolCells, RandomFixturesRespectSeparationAndMembership) {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t d = 1 + trial % 3;
        const std::size_t n = 5 + rng() % 60;
        const Matrix y = fixtures::random_matrix(n, d, 700 + trial, -10, 10);
        const double r_y = std::uniform_real_distribution<double>(0.3, 3.0)(rng);
        const auto pool = OutlierPositionPool::build(y, r_y, trial);
        const PoolState s = pool.state();
        for (const Point& c : pool.free_centers()) {
            ASSERT_GE(min_distance_to_rows(c, y), r_y);
            std::vector<long> cell(d);
            for (std::size_t j = 0; j < d; ++j) cell[j] = cell_of_center(s, j, c[j]);
            for (std::size_t i = 0; i < y.rows(); ++i) {
                bool inside = true;
                for (std::size_t j = 0; j < d; ++j) inside &= in_cell(s, j, cell[j], y(i, j));
                ASSERT_FALSE(inside) << "training row " << i << " inside a free cell";
            }
        }
    }
}

TEST(PoolState, CopyIsIndependent) {
    const Matrix y(2, 2, {0, 0, 10, 10});
    auto a = OutlierPositionPool::build(y, 1.0, 0);
    auto b = a;
    Rng rng(0);
    a.take_position(rng);
    EXPECT_EQ(b.available(), a.available() + 1);
}

TEST(PoolState, RestoreRoundTrip) {
    const Matrix y(2, 2, {0, 0, 10, 10});
    auto a = OutlierPositionPool::build(y, 1.0, 4);
    auto b = OutlierPositionPool::restore(a.state(), y);
    Rng ra(4), rb(4);
    for (int i = 0; i < 30; ++i) EXPECT_EQ(a.take_position(ra), b.take_position(rb));
}

TEST(PoolState, RestoreRejectsBadState) {
    const Matrix y(2, 2, {0, 0, 10, 10});
    const PoolState good = OutlierPositionPool::build(y, 1.0, 0).state();

    PoolState s = good;
    s.free_centers.push_back(0.5);
    s.free_centers.push_back(0.5);
    EXPECT_THROW(OutlierPositionPool::restore(s, y), DataError);

    s = good;
    s.cell_side[0] = 1.5;
    EXPECT_THROW(OutlierPositionPool::restore(s, y), DataError);

    s = good;
    s.dims = 3;
    EXPECT_THROW(OutlierPositionPool::restore(s, y), DataError);

    s = good;
    s.free_centers.pop_back();
    EXPECT_THROW(OutlierPositionPool::restore(s, y), DataError);
}
