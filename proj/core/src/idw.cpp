#include "lion/idw.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "lion/error.hpp"
#include "lion/geometry.hpp"

namespace lion {
namespace {

void check_power(double power) {
    if (!(std::isfinite(power) && power > 0.0)) {
        throw UsageError("IDW power must be positive, got " + std::to_string(power));
    }
}

}  // namespace

double exact_match_tolerance(PointView x) { return 1e-12 * (1.0 + norm(x)); }

std::vector<double> idw_weights(std::span<const double> distances, double power,
                                double exact_tol) {
    check_power(power);
    if (distances.empty()) throw UsageError("IDW needs at least one neighbor");

    std::vector<double> w(distances.size(), 0.0);
    std::size_t exact = 0;
    for (std::size_t i = 0; i < distances.size(); ++i) {
        if (distances[i] < exact_tol) {
            w[i] = 1.0;
            ++exact;
        }
    }
    if (exact > 0) {
        // Coincident samples share the weight equally, which is the limit of
        // the weights as x approaches a duplicated point.
        for (double& v : w) v /= static_cast<double>(exact);
        return w;
    }

    // log w_i = -p log d_i; shift by the largest exponent (nearest sample).
    const double d_min = *std::min_element(distances.begin(), distances.end());
    const double log_min = std::log(d_min);
    double total = 0.0;
    for (std::size_t i = 0; i < distances.size(); ++i) {
        w[i] = std::exp(-power * (std::log(distances[i]) - log_min));
        total += w[i];
    }
    for (double& v : w) v /= total;
    return w;
}

Point idw_from_distances(std::span<const double> distances, const Matrix& y,
                         std::span<const std::size_t> rows, double power, double exact_tol) {
    if (distances.size() != rows.size()) {
        throw UsageError("IDW distance/row count mismatch");
    }
    const std::vector<double> w = idw_weights(distances, power, exact_tol);

    Point out(y.cols(), 0.0);
    for (std::size_t k = 0; k < rows.size(); ++k) {
        const PointView yk = y.row(rows[k]);
        if (w[k] == 1.0) return Point(yk.begin(), yk.end());
        if (w[k] == 0.0) continue;
        for (std::size_t j = 0; j < out.size(); ++j) out[j] += w[k] * yk[j];
    }
    return out;
}

Point idw_interpolate(PointView x, const Matrix& x_nb, const Matrix& y_nb, double power) {
    check_power(power);
    if (x_nb.rows() != y_nb.rows()) {
        throw DataError("IDW neighbor sets disagree: " + std::to_string(x_nb.rows()) +
                        " x rows vs " + std::to_string(y_nb.rows()) + " y rows");
    }
    std::vector<double> distances(x_nb.rows());
    for (std::size_t i = 0; i < x_nb.rows(); ++i) {
        distances[i] = euclidean_distance(x, x_nb.row(i));
    }
    std::vector<std::size_t> rows(x_nb.rows());
    std::iota(rows.begin(), rows.end(), std::size_t{0});
    return idw_from_distances(distances, y_nb, rows, power, exact_match_tolerance(x));
}

Point idw_global(PointView x, const Matrix& x_train, const Matrix& y_train, double power) {
    return idw_interpolate(x, x_train, y_train, power);
}

}  // namespace lion
