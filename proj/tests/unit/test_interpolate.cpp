#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "lion/error.hpp"
#include "lion/geometry.hpp"
#include "lion/idw.hpp"
#include "lion/rbf.hpp"
#include "support/fixtures.hpp"

using namespace lion;

namespace {

const Matrix kToyX(4, 1, {10, 20, 30, 40});
const Matrix kToyY(4, 1, {10, 40, 1, 50});

// Reference value of the toy interpolation at x = 15 with p = 2, computed
// with 40-digit arithmetic.
constexpr double kToyAt15 = 24.22520661157024793;

// Plain textbook Shepard sum with std::pow, no log-domain tricks.
double direct_idw_1d(double x, const Matrix& xs, const Matrix& ys, double p) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < xs.rows(); ++i) {
        const double w = 1.0 / std::pow(std::fabs(x - xs(i, 0)), p);
        num += w * ys(i, 0);
        den += w;
    }
    return num / den;
}

}  // namespace

TEST(Idw, ExactMatchReturnsSampleVerbatim) {
    const Matrix x(3, 2, {0, 0, 1, 0, 0, 1});
    const Matrix y(3, 2, {0.1, 0.2, 0.3, 0.4, 0.5, 0.6});
    EXPECT_EQ(idw_interpolate(x.row(1), x, y, 3.0), (Point{0.3, 0.4}));
}

TEST(Idw, EquidistantPairGivesMidpointForAnyPower) {
    const Matrix x(2, 1, {-1, 1});
    const Matrix y(2, 2, {0, 10, 4, 20});
    for (double p : {0.1, 1.0, 2.0, 17.0, 300.0}) {
        const Point out = idw_interpolate(Point{0}, x, y, p);
        EXPECT_DOUBLE_EQ(out[0], 2.0);
        EXPECT_DOUBLE_EQ(out[1], 15.0);
    }
}

TEST(Idw, ToyPairsMatchReferenceValue) {
    EXPECT_NEAR(idw_interpolate(Point{15}, kToyX, kToyY, 2.0)[0], kToyAt15, 1e-12);
    EXPECT_NEAR(direct_idw_1d(15, kToyX, kToyY, 2.0), kToyAt15, 1e-12);
}

TEST(Idw, SingleRowIgnoresPower) {
    const Matrix x(1, 2, {0, 0});
    const Matrix y(1, 2, {3, -4});
    for (double p : {0.5, 2.0, 40.0}) {
        EXPECT_EQ(idw_interpolate(Point{5, 5}, x, y, p), (Point{3, -4}));
    }
}

TEST(Idw, Errors) {
    const Matrix x(2, 1, {0, 1});
    const Matrix y3(3, 1, {0, 1, 2});
    const Matrix y2(2, 1, {0, 1});
    EXPECT_THROW(idw_interpolate(Point{0.5}, x, y3, 2.0), DataError);
    EXPECT_THROW(idw_interpolate(Point{0.5}, x, y2, 0.0), UsageError);
    EXPECT_THROW(idw_interpolate(Point{0.5}, x, y2, -1.0), UsageError);
}

TEST(Idw, LargePowerDoesNotOverflow) {
    const Point out = idw_interpolate(Point{14}, kToyX, kToyY, 500.0);
    EXPECT_TRUE(std::isfinite(out[0]));
    EXPECT_NEAR(out[0], 10.0, 1e-12);
}

TEST(IdwGlobal, SmallPowerFarAwayApproachesMean) {
    const double mean = (10.0 + 40.0 + 1.0 + 50.0) / 4.0;
    const double out = idw_global(Point{1e6}, kToyX, kToyY, 0.01)[0];
    EXPECT_NEAR(out, mean, 0.01 * mean);
}

TEST(IdwGlobal, LargePowerApproachesNearest) {
    const double out = idw_global(Point{29}, kToyX, kToyY, 200.0)[0];
    EXPECT_NEAR(out, 1.0, 1e-9);
}

TEST(IdwGlobal, EqualsLocalOverFullSetBitwise) {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> ux(0, 50), up(0.2, 30);
    for (int i = 0; i < 100; ++i) {
        const Point x{ux(rng)};
        const double p = up(rng);
        EXPECT_EQ(idw_global(x, kToyX, kToyY, p), idw_interpolate(x, kToyX, kToyY, p));
    }
}

TEST(IdwWeights, NonnegativeAndSumToOne) {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> ud(1e-6, 100), up(0.1, 60);
    for (int trial = 0; trial < 500; ++trial) {
        std::vector<double> d(1 + trial % 30);
        for (double& e : d) e = ud(rng);
        const auto w = idw_weights(d, up(rng), 1e-12);
        for (double e : w) EXPECT_GE(e, 0.0);
        EXPECT_NEAR(std::accumulate(w.begin(), w.end(), 0.0), 1.0, 1e-12);
    }
}

TEST(Idw, OutputInsideNeighborHull) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const Matrix x = fixtures::random_matrix(12, 3, seed);
        const Matrix y = fixtures::random_matrix(12, 2, seed + 500, -5, 5);
        const Matrix q = fixtures::random_matrix(1, 3, seed + 900);
        const Point out = idw_interpolate(q.row(0), x, y, 1.0 + static_cast<double>(seed % 20));
        for (std::size_t j = 0; j < 2; ++j) {
            double lo = y(0, j), hi = y(0, j);
            for (std::size_t i = 1; i < y.rows(); ++i) {
                lo = std::min(lo, y(i, j));
                hi = std::max(hi, y(i, j));
            }
            EXPECT_GE(out[j], lo);
            EXPECT_LE(out[j], hi);
        }
    }
}

TEST(Idw, ContinuousAwayFromData) {
    const Matrix x = fixtures::random_matrix(20, 2, 31);
    const Matrix y = fixtures::random_matrix(20, 2, 32, -10, 10);
    Rng rng(33);
    int checked = 0;
    for (int trial = 0; trial < 200 && checked < 50; ++trial) {
        const Matrix q = fixtures::random_matrix(1, 2, 100 + trial, -0.5, 1.5);
        if (min_distance_to_rows(q.row(0), x) <= 0.1) continue;
        Point moved(q.row(0).begin(), q.row(0).end());
        const Point delta = random_offset_in_ball(2, 1e-9, rng);
        moved[0] += delta[0];
        moved[1] += delta[1];
        const Point a = idw_interpolate(q.row(0), x, y, 4.0);
        const Point b = idw_interpolate(moved, x, y, 4.0);
        EXPECT_LT(euclidean_distance(a, b), 1e-6);
        ++checked;
    }
    EXPECT_EQ(checked, 50);
}

TEST(Rbf, TwoPointsLinearReproducesCenters) {
    const Matrix x(2, 1, {0.0, 2.0});
    const Matrix y(2, 1, {1.0, 5.0});
    const RbfModel m = rbf_fit(x, y, RbfKernel::Linear);
    EXPECT_NEAR(rbf_eval(m, x.row(0))[0], 1.0, 1e-8);
    EXPECT_NEAR(rbf_eval(m, x.row(1))[0], 5.0, 1e-8);
}

TEST(Rbf, GaussianReproducesTwentyCenters) {
    const Matrix x = fixtures::random_matrix(20, 3, 44);
    const Matrix y = fixtures::random_matrix(20, 2, 45, -3, 3);
    const RbfModel m = rbf_fit(x, y, RbfKernel::Gaussian);
    for (std::size_t i = 0; i < 20; ++i) {
        const Point out = rbf_eval(m, x.row(i));
        for (std::size_t j = 0; j < 2; ++j) {
            EXPECT_NEAR(out[j], y(i, j), 1e-6 * std::max(1.0, std::fabs(y(i, j))));
        }
    }
}

TEST(Rbf, EveryKernelInterpolatesCenters) {
    const Matrix x = fixtures::random_matrix(15, 2, 50);
    const Matrix y = fixtures::random_matrix(15, 2, 51, -1, 1);
    for (auto k : {RbfKernel::Multiquadric, RbfKernel::Gaussian, RbfKernel::InverseMultiquadric,
                   RbfKernel::Linear, RbfKernel::Cubic, RbfKernel::ThinPlate}) {
        const RbfModel m = rbf_fit(x, y, k);
        for (std::size_t i = 0; i < x.rows(); ++i) {
            const Point out = rbf_eval(m, x.row(i));
            EXPECT_NEAR(out[0], y(i, 0), 1e-6) << to_string(k);
            EXPECT_NEAR(out[1], y(i, 1), 1e-6) << to_string(k);
        }
    }
}

TEST(Rbf, DuplicateCentersAreSingular) {
    const Matrix x(3, 1, {1.0, 1.0, 2.0});
    const Matrix y(3, 1, {0.0, 1.0, 2.0});
    try {
        rbf_fit(x, y, RbfKernel::Multiquadric);
        FAIL() << "expected NumericError";
    } catch (const NumericError& e) {
        EXPECT_NE(std::string(e.what()).find("multiquadric"), std::string::npos);
    }
}

TEST(Rbf, SymmetricPairAtMidpoint) {
    const Matrix x(2, 1, {-1.0, 1.0});
    // Linear kernel: the midpoint value is the mean of the two values.
    {
        const RbfModel m = rbf_fit(x, Matrix(2, 1, {2.0, 6.0}), RbfKernel::Linear);
        EXPECT_NEAR(rbf_eval(m, Point{0.0})[0], 4.0, 1e-12);
    }
    // Any radial kernel: swapping the values leaves the midpoint unchanged,
    // and opposite values meet at their midpoint, zero.
    for (auto k : {RbfKernel::Multiquadric, RbfKernel::Gaussian, RbfKernel::InverseMultiquadric,
                   RbfKernel::Cubic, RbfKernel::ThinPlate}) {
        const RbfModel a = rbf_fit(x, Matrix(2, 1, {2.0, 6.0}), k, 1.0);
        const RbfModel b = rbf_fit(x, Matrix(2, 1, {6.0, 2.0}), k, 1.0);
        EXPECT_NEAR(rbf_eval(a, Point{0.0})[0], rbf_eval(b, Point{0.0})[0], 1e-12) << to_string(k);
        const RbfModel c = rbf_fit(x, Matrix(2, 1, {-3.0, 3.0}), k, 1.0);
        EXPECT_NEAR(rbf_eval(c, Point{0.0})[0], 0.0, 1e-12) << to_string(k);
    }
}

TEST(Rbf, EvalMatchesDirectSum) {
    const Matrix x = fixtures::random_matrix(25, 4, 60);
    const Matrix y = fixtures::random_matrix(25, 2, 61, -2, 2);
    const RbfModel m = rbf_fit(x, y, RbfKernel::Multiquadric);
    const Matrix probes = fixtures::random_matrix(30, 4, 62);
    for (std::size_t q = 0; q < probes.rows(); ++q) {
        const Point out = rbf_eval(m, probes.row(q));
        for (std::size_t j = 0; j < 2; ++j) {
            double ref = 0.0;
            for (std::size_t i = 0; i < x.rows(); ++i) {
                double r2 = 0.0;
                for (std::size_t c = 0; c < 4; ++c) {
                    const double d = probes(q, c) - x(i, c);
                    r2 += d * d;
                }
                ref += m.lambdas(i, j) * std::sqrt(r2 / (m.epsilon * m.epsilon) + 1.0);
            }
            EXPECT_NEAR(out[j], ref, 1e-10 * std::max(1.0, std::fabs(ref)));
        }
    }
}

TEST(Rbf, DimensionMismatch) {
    const RbfModel m = rbf_fit(Matrix(2, 1, {0.0, 1.0}), Matrix(2, 1, {0.0, 1.0}),
                               RbfKernel::Linear);
    EXPECT_THROW(rbf_eval(m, Point{0.0, 1.0}), DataError);
}

TEST(Rbf, KernelNamesRoundTrip) {
    for (auto k : {RbfKernel::Multiquadric, RbfKernel::Gaussian, RbfKernel::InverseMultiquadric,
                   RbfKernel::Linear, RbfKernel::Cubic, RbfKernel::ThinPlate}) {
        EXPECT_EQ(parse_rbf_kernel(to_string(k)), k);
    }
    EXPECT_THROW(parse_rbf_kernel("bogus"), UsageError);
}
