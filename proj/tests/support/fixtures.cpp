#include "support/fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "lion/geometry.hpp"
#include "lion/neighbors.hpp"

namespace lion::fixtures {

Blobs make_blobs(std::size_t n, std::size_t dims, std::size_t blobs, std::uint64_t seed,
                 double noise, double spread) {
    Rng rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);

    std::vector<double> centers(blobs * dims), centers2(blobs * 2), proj(dims * 2);
    for (double& v : centers) v = spread * gauss(rng);
    for (double& v : centers2) v = 20.0 * gauss(rng);
    for (double& v : proj) v = gauss(rng);

    std::vector<double> x(n * dims), y(n * 2);
    std::vector<Label> labels(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t b = i % blobs;
        labels[i] = std::to_string(b);
        for (std::size_t k = 0; k < dims; ++k) {
            x[i * dims + k] = centers[b * dims + k] + gauss(rng);
        }
        for (std::size_t j = 0; j < 2; ++j) {
            double v = centers2[b * 2 + j];
            for (std::size_t k = 0; k < dims; ++k) {
                v += (x[i * dims + k] - centers[b * dims + k]) * proj[k * 2 + j];
            }
            y[i * 2 + j] = v + noise * gauss(rng);
        }
    }
    return {Matrix(n, dims, std::move(x)), Matrix(n, 2, std::move(y)), std::move(labels)};
}

Matrix random_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed, double lo,
                     double hi) {
    Rng rng(seed);
    std::uniform_real_distribution<double> u(lo, hi);
    std::vector<double> v(rows * cols);
    for (double& e : v) e = u(rng);
    return Matrix(rows, cols, std::move(v));
}

Matrix far_outliers(const Matrix& x_train, std::size_t count, std::uint64_t seed) {
    const auto nn = NeighborIndex(x_train).nn_distances();
    const double max_nn = *std::max_element(nn.begin(), nn.end());

    const std::size_t k = x_train.cols();
    std::vector<double> lo(k, std::numeric_limits<double>::infinity());
    std::vector<double> hi(k, -std::numeric_limits<double>::infinity());
    for (std::size_t i = 0; i < x_train.rows(); ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            lo[j] = std::min(lo[j], x_train(i, j));
            hi[j] = std::max(hi[j], x_train(i, j));
        }
    }
    Rng rng(seed);
    std::vector<Point> out;
    Point p(k);
    while (out.size() < count) {
        for (std::size_t j = 0; j < k; ++j) {
            const double pad = 0.5 * (hi[j] - lo[j]);
            p[j] = std::uniform_real_distribution<double>(lo[j] - pad, hi[j] + pad)(rng);
        }
        if (min_distance_to_rows(p, x_train) > max_nn) out.push_back(p);
    }
    return Matrix::from_rows(out);
}

Matrix near_cluster_points(const Matrix& x_train, std::size_t count, std::uint64_t seed,
                           std::vector<std::size_t>& anchors) {
    const auto nn = NeighborIndex(x_train).nn_distances();
    Rng rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, x_train.rows() - 1);
    std::uniform_real_distribution<double> frac(0.1, 0.45);

    anchors.clear();
    std::vector<Point> out;
    while (out.size() < count) {
        const std::size_t a = pick(rng);
        if (nn[a] <= 0.0) continue;
        // Within half the anchor's nn distance, every other training row is
        // farther from the anchor than the new point is.
        const Point offset = random_offset_in_ball(x_train.cols(), 1.0, rng);
        const double len = norm(offset);
        if (len == 0.0) continue;
        Point p(x_train.row(a).begin(), x_train.row(a).end());
        const double r = frac(rng) * nn[a];
        for (std::size_t j = 0; j < p.size(); ++j) p[j] += offset[j] / len * r;
        out.push_back(std::move(p));
        anchors.push_back(a);
    }
    return Matrix::from_rows(out);
}

}  // namespace lion::fixtures
