#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace lion {

using Point = std::vector<double>;
using PointView = std::span<const double>;

/// Dense row-major matrix of finite reals. One row per sample.
///
/// Construction validates the shape (at least one row and one column) and
/// rejects NaN/Inf, so downstream code may assume every value is finite.
class Matrix {
public:
    Matrix(std::size_t rows, std::size_t cols, std::vector<double> values);
    Matrix(std::size_t rows, std::size_t cols);  // zero-filled

    static Matrix from_rows(const std::vector<Point>& rows);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    PointView row(std::size_t i) const noexcept {
        return {values_.data() + i * cols_, cols_};
    }
    std::span<double> row(std::size_t i) noexcept {
        return {values_.data() + i * cols_, cols_};
    }

    double operator()(std::size_t i, std::size_t j) const noexcept {
        return values_[i * cols_ + j];
    }
    double& operator()(std::size_t i, std::size_t j) noexcept {
        return values_[i * cols_ + j];
    }

    const std::vector<double>& values() const noexcept { return values_; }

    /// New matrix holding the given rows, in the given order.
    Matrix select_rows(std::span<const std::size_t> indices) const;

    /// Copy with one extra row appended.
    Matrix with_row(PointView extra) const;

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> values_;
};

}  // namespace lion
