#include "lion/geometry.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "lion/error.hpp"

namespace lion {

double squared_distance(PointView a, PointView b) {
    if (a.size() != b.size()) {
        throw DataError("dimension mismatch: " + std::to_string(a.size()) + " vs " +
                        std::to_string(b.size()));
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double diff = a[i] - b[i];
        sum += diff * diff;
    }
    return sum;
}

double euclidean_distance(PointView a, PointView b) {
    return std::sqrt(squared_distance(a, b));
}

double norm(PointView a) {
    double sum = 0.0;
    for (double v : a) sum += v * v;
    return std::sqrt(sum);
}

Point random_offset_in_ball(std::size_t dims, double radius, Rng& rng) {
    Point offset(dims, 0.0);
    if (dims == 0 || radius <= 0.0) return offset;

    std::normal_distribution<double> gauss(0.0, 1.0);
    double len = 0.0;
    do {
        for (double& v : offset) v = gauss(rng);
        len = norm(offset);
    } while (len == 0.0);

    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double scale =
        radius * std::pow(unit(rng), 1.0 / static_cast<double>(dims)) / len;
    for (double& v : offset) v *= scale;
    return offset;
}

double min_distance_to_rows(PointView p, const Matrix& points) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < points.rows(); ++i) {
        best = std::min(best, euclidean_distance(p, points.row(i)));
    }
    return best;
}

}  // namespace lion
