#include "lion/rbf.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numeric>
#include <string>

#include "lion/error.hpp"
#include "lion/geometry.hpp"
#include "lion/neighbors.hpp"

namespace lion {

std::string_view to_string(RbfKernel kernel) {
    switch (kernel) {
        case RbfKernel::Multiquadric: return "multiquadric";
        case RbfKernel::Gaussian: return "gaussian";
        case RbfKernel::InverseMultiquadric: return "inverse_multiquadric";
        case RbfKernel::Linear: return "linear";
        case RbfKernel::Cubic: return "cubic";
        case RbfKernel::ThinPlate: return "thin_plate";
    }
    return "unknown";
}

RbfKernel parse_rbf_kernel(std::string_view name) {
    for (auto k : {RbfKernel::Multiquadric, RbfKernel::Gaussian, RbfKernel::InverseMultiquadric,
                   RbfKernel::Linear, RbfKernel::Cubic, RbfKernel::ThinPlate}) {
        if (to_string(k) == name) return k;
    }
    throw UsageError("unknown RBF kernel '" + std::string(name) + "'");
}

double rbf_kernel_value(RbfKernel kernel, double r, double epsilon) {
    const double s = r / epsilon;
    switch (kernel) {
        case RbfKernel::Multiquadric: return std::sqrt(s * s + 1.0);
        case RbfKernel::Gaussian: return std::exp(-s * s);
        case RbfKernel::InverseMultiquadric: return 1.0 / std::sqrt(s * s + 1.0);
        case RbfKernel::Linear: return r;
        case RbfKernel::Cubic: return r * r * r;
        case RbfKernel::ThinPlate: return r > 0.0 ? r * r * std::log(r) : 0.0;
    }
    return 0.0;
}

RbfModel rbf_fit(const Matrix& x, const Matrix& y, RbfKernel kernel,
                 std::optional<double> epsilon) {
    const std::size_t n = x.rows();
    if (n < 2) throw DataError("RBF fit needs at least two centers");
    if (y.rows() != n) {
        throw DataError("RBF fit: " + std::to_string(n) + " centers but " +
                        std::to_string(y.rows()) + " values");
    }

    double eps = 0.0;
    if (epsilon) {
        eps = *epsilon;
    } else {
        const auto nn = NeighborIndex(x).nn_distances();
        eps = std::accumulate(nn.begin(), nn.end(), 0.0) / static_cast<double>(n);
    }
    if (!(std::isfinite(eps) && eps > 0.0)) {
        throw NumericError("RBF (" + std::string(to_string(kernel)) +
                           "): shape parameter must be positive, got " + std::to_string(eps));
    }

    Eigen::MatrixXd phi(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            phi(i, j) = rbf_kernel_value(kernel, euclidean_distance(x.row(i), x.row(j)), eps);
        }
    }
    Eigen::MatrixXd rhs(n, y.cols());
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < y.cols(); ++j) rhs(i, j) = y(i, j);
    }

    Eigen::PartialPivLU<Eigen::MatrixXd> lu(phi);
    const double rcond = lu.rcond();
    if (!(rcond >= 1e-12)) {
        throw NumericError("RBF (" + std::string(to_string(kernel)) +
                           "): kernel matrix singular or ill-conditioned (rcond=" +
                           std::to_string(rcond) + ")");
    }
    const Eigen::MatrixXd sol = lu.solve(rhs);

    std::vector<double> lambdas(n * y.cols());
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < y.cols(); ++j) lambdas[i * y.cols() + j] = sol(i, j);
    }
    for (double v : lambdas) {
        if (!std::isfinite(v)) {
            throw NumericError("RBF (" + std::string(to_string(kernel)) +
                               "): solution contains non-finite coefficients");
        }
    }
    return RbfModel{x, Matrix(n, y.cols(), std::move(lambdas)), kernel, eps};
}

Point rbf_eval(const RbfModel& model, PointView x) {
    if (x.size() != model.centers.cols()) {
        throw DataError("RBF query has " + std::to_string(x.size()) +
                        " coordinates, centers have " + std::to_string(model.centers.cols()));
    }
    Point out(model.lambdas.cols(), 0.0);
    for (std::size_t i = 0; i < model.centers.rows(); ++i) {
        const double phi = rbf_kernel_value(
            model.kernel, euclidean_distance(x, model.centers.row(i)), model.epsilon);
        const PointView lambda = model.lambdas.row(i);
        for (std::size_t j = 0; j < out.size(); ++j) out[j] += lambda[j] * phi;
    }
    return out;
}

}  // namespace lion
