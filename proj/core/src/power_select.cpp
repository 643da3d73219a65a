#include "lion/power_select.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lion/error.hpp"
#include "lion/geometry.hpp"
#include "lion/idw.hpp"

namespace lion {

LeaveOneOutNeighborhoods::LeaveOneOutNeighborhoods(const Matrix& x_train, double r_x) {
    const std::size_t n = x_train.rows();
    if (n < 3) throw DataError("cross-validation needs at least 3 training samples");
    if (!(r_x >= 0.0)) throw UsageError("r_x must be non-negative");

    indices_.resize(n);
    distances_.resize(n);
    exact_tol_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const PointView xi = x_train.row(i);
        exact_tol_[i] = exact_match_tolerance(xi);
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            const double d = euclidean_distance(xi, x_train.row(j));
            if (d <= r_x) {
                indices_[i].push_back(j);
                distances_[i].push_back(d);
            }
        }
        if (indices_[i].empty()) ++skipped_;
    }
}

double cross_validation_error(double power, const LeaveOneOutNeighborhoods& hoods,
                              const Matrix& y_train) {
    if (hoods.size() != y_train.rows()) {
        throw DataError("cross-validation: neighborhoods and y rows disagree");
    }
    double sum = 0.0;
    std::size_t evaluated = 0;
    for (std::size_t i = 0; i < hoods.size(); ++i) {
        if (hoods.indices(i).empty()) continue;
        const Point estimate = idw_from_distances(hoods.distances(i), y_train, hoods.indices(i),
                                                  power, hoods.exact_tolerance(i));
        sum += squared_distance(estimate, y_train.row(i));
        ++evaluated;
    }
    if (evaluated == 0) throw DataError("radius too small for cross-validation");
    return sum / static_cast<double>(evaluated);
}

double cross_validation_error(double power, double r_x, const Matrix& x_train,
                              const Matrix& y_train) {
    if (x_train.rows() != y_train.rows()) {
        throw DataError("cross-validation: x and y row counts differ");
    }
    if (!(std::isfinite(power) && power > 0.0)) throw UsageError("power must be positive");
    return cross_validation_error(power, LeaveOneOutNeighborhoods(x_train, r_x), y_train);
}

std::vector<double> grid_points(double lo, double hi, double step) {
    std::vector<double> out;
    const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        out.push_back(lo + static_cast<double>(i) * step);
    }
    return out;
}

PowerCurve select_power(double r_x, const Matrix& x_train, const Matrix& y_train,
                        const PowerGrid& grid) {
    grid.validate();
    if (x_train.rows() != y_train.rows()) {
        throw DataError("power selection: x and y row counts differ");
    }
    const LeaveOneOutNeighborhoods hoods(x_train, r_x);

    std::vector<std::pair<double, double>> curve;
    auto evaluate = [&](double p) {
        curve.emplace_back(p, cross_validation_error(p, hoods, y_train));
    };
    auto argmin = [&] {
        std::sort(curve.begin(), curve.end());
        auto best = curve.begin();
        for (auto it = curve.begin(); it != curve.end(); ++it) {
            if (it->second < best->second) best = it;
        }
        return *best;
    };

    for (double p : grid_points(grid.lo, grid.hi, grid.step)) evaluate(p);

    if (grid.refine_step > 0.0 && grid.refine_step < grid.step) {
        const double center = argmin().first;
        const double lo = std::max(grid.lo, center - grid.step);
        const double hi = std::min(grid.hi, center + grid.step);
        for (double p : grid_points(lo, hi, grid.refine_step)) {
            const bool seen = std::any_of(curve.begin(), curve.end(), [p](const auto& e) {
                return std::abs(e.first - p) < 1e-9;
            });
            if (!seen) evaluate(p);
        }
    }

    const auto [best_p, best_error] = argmin();
    PowerCurve out;
    out.best_p = best_p;
    out.best_error = best_error;
    out.skipped_count = hoods.skipped();
    for (const auto& [p, e] : curve) {
        out.grid.push_back(p);
        out.errors.push_back(e);
    }
    return out;
}

}  // namespace lion
