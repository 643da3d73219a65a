#pragma once

#include <optional>
#include <string_view>

#include "lion/matrix.hpp"

namespace lion {

enum class RbfKernel { Multiquadric, Gaussian, InverseMultiquadric, Linear, Cubic, ThinPlate };

std::string_view to_string(RbfKernel kernel);
RbfKernel parse_rbf_kernel(std::string_view name);

/// phi(r) for the given kernel and shape parameter epsilon:
///   multiquadric          sqrt((r/eps)^2 + 1)
///   gaussian              exp(-(r/eps)^2)
///   inverse multiquadric  1 / sqrt((r/eps)^2 + 1)
///   linear                r
///   cubic                 r^3
///   thin plate            r^2 log r   (0 at r = 0)
double rbf_kernel_value(RbfKernel kernel, double r, double epsilon);

/// Global radial-basis-function interpolant, used as a benchmark mapping.
struct RbfModel {
    Matrix centers;  // N x K
    Matrix lambdas;  // N x d
    RbfKernel kernel;
    double epsilon;
};

/// Solves Phi * lambda = Y with Phi_ij = phi(||x_i - x_j||) by LU with
/// partial pivoting. epsilon defaults to the mean nearest-neighbor distance
/// of the centers. Throws NumericError when the reciprocal condition estimate
/// is below 1e-12.
RbfModel rbf_fit(const Matrix& x, const Matrix& y, RbfKernel kernel,
                 std::optional<double> epsilon = std::nullopt);

Point rbf_eval(const RbfModel& model, PointView x);

}  // namespace lion
