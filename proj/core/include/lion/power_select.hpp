#pragma once

#include <cstddef>
#include <vector>

#include "lion/config.hpp"
#include "lion/matrix.hpp"

namespace lion {

/// Leave-one-out neighborhoods within r_x for every training sample
/// (the sample itself excluded). Independent of the IDW power, so one
/// instance serves a whole grid search.
class LeaveOneOutNeighborhoods {
public:
    LeaveOneOutNeighborhoods(const Matrix& x_train, double r_x);

    std::size_t size() const noexcept { return indices_.size(); }
    const std::vector<std::size_t>& indices(std::size_t i) const { return indices_[i]; }
    const std::vector<double>& distances(std::size_t i) const { return distances_[i]; }
    double exact_tolerance(std::size_t i) const { return exact_tol_[i]; }
    std::size_t skipped() const noexcept { return skipped_; }

private:
    std::vector<std::vector<std::size_t>> indices_;
    std::vector<std::vector<double>> distances_;
    std::vector<double> exact_tol_;
    std::size_t skipped_ = 0;
};

/// Mean of ||y_hat_i - y_i||^2 over samples that have at least one other
/// sample within r_x, where y_hat_i is the local IDW estimate built from
/// those neighbors. Throws DataError when no sample has a neighbor.
double cross_validation_error(double power, double r_x, const Matrix& x_train,
                              const Matrix& y_train);

double cross_validation_error(double power, const LeaveOneOutNeighborhoods& hoods,
                              const Matrix& y_train);

struct PowerCurve {
    std::vector<double> grid;    // ascending
    std::vector<double> errors;  // errors[i] belongs to grid[i]
    double best_p = 0.0;
    double best_error = 0.0;
    std::size_t skipped_count = 0;
};

/// Grid search for the power minimizing the cross-validation error; ties go
/// to the smaller power.
PowerCurve select_power(double r_x, const Matrix& x_train, const Matrix& y_train,
                        const PowerGrid& grid);

/// Evenly spaced points lo, lo+step, ... <= hi (hi itself included when it
/// lies on the lattice).
std::vector<double> grid_points(double lo, double hi, double step);

}  // namespace lion
