#include "lion/matrix.hpp"

#include <cmath>
#include <string>

#include "lion/error.hpp"

namespace lion {

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> values)
    : rows_(rows), cols_(cols), values_(std::move(values)) {
    if (rows_ == 0 || cols_ == 0) {
        throw DataError("matrix must have at least one row and one column");
    }
    if (values_.size() != rows_ * cols_) {
        throw DataError("matrix value count " + std::to_string(values_.size()) +
                        " does not match shape " + std::to_string(rows_) + "x" +
                        std::to_string(cols_));
    }
    for (std::size_t k = 0; k < values_.size(); ++k) {
        if (!std::isfinite(values_[k])) {
            throw DataError("non-finite matrix value at row " + std::to_string(k / cols_) +
                            ", column " + std::to_string(k % cols_));
        }
    }
}

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : Matrix(rows, cols, std::vector<double>(rows * cols, 0.0)) {}

Matrix Matrix::from_rows(const std::vector<Point>& rows) {
    if (rows.empty()) {
        throw DataError("matrix must have at least one row and one column");
    }
    const std::size_t cols = rows.front().size();
    std::vector<double> values;
    values.reserve(rows.size() * cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) {
            throw DataError("row " + std::to_string(i) + " has " +
                            std::to_string(rows[i].size()) + " values, expected " +
                            std::to_string(cols));
        }
        values.insert(values.end(), rows[i].begin(), rows[i].end());
    }
    return Matrix(rows.size(), cols, std::move(values));
}

Matrix Matrix::select_rows(std::span<const std::size_t> indices) const {
    std::vector<double> values;
    values.reserve(indices.size() * cols_);
    for (std::size_t i : indices) {
        if (i >= rows_) {
            throw UsageError("row index " + std::to_string(i) + " out of range");
        }
        auto r = row(i);
        values.insert(values.end(), r.begin(), r.end());
    }
    return Matrix(indices.size(), cols_, std::move(values));
}

Matrix Matrix::with_row(PointView extra) const {
    if (extra.size() != cols_) {
        throw DataError("appended row has " + std::to_string(extra.size()) +
                        " values, expected " + std::to_string(cols_));
    }
    std::vector<double> values = values_;
    values.insert(values.end(), extra.begin(), extra.end());
    return Matrix(rows_ + 1, cols_, std::move(values));
}

}  // namespace lion
