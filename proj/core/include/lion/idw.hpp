#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "lion/matrix.hpp"

namespace lion {

/// Distance below which a query counts as coinciding with a sample:
/// 1e-12 * (1 + ||x||).
double exact_match_tolerance(PointView x);

/// Normalized inverse-distance weights w_i = d_i^-p / sum_j d_j^-p.
///
/// Computed in the log domain relative to the nearest sample, so large powers
/// do not overflow. Samples with d_i < exact_tol split the weight equally and
/// all others get 0; a single such sample is returned verbatim.
std::vector<double> idw_weights(std::span<const double> distances, double power,
                                double exact_tol);

/// Weighted sum of rows `rows` of `y` with weights from `distances`
/// (distances[k] belongs to y.row(rows[k])).
Point idw_from_distances(std::span<const double> distances, const Matrix& y,
                         std::span<const std::size_t> rows, double power, double exact_tol);

/// Shepard interpolation at `x` using every row of (x_nb, y_nb).
Point idw_interpolate(PointView x, const Matrix& x_nb, const Matrix& y_nb, double power);

/// Non-local IDW: interpolation over the whole training set.
Point idw_global(PointView x, const Matrix& x_train, const Matrix& y_train, double power);

}  // namespace lion
