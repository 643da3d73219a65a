#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lion/matrix.hpp"
#include "lion/metrics.hpp"

namespace lion {

// CSV dialect: comma separated, '.' decimal point, LF line endings (a
// trailing CR is tolerated), at most one header row.

struct CsvMatrix {
    Matrix matrix;
    std::vector<std::string> header;       // empty when the file has none
    std::optional<std::vector<Label>> labels;
};

/// Parses numeric rows. With `label_column` (requires a header) that column
/// is returned as labels and excluded from the matrix.
CsvMatrix parse_matrix_csv(std::string_view text, bool has_header,
                           const std::optional<std::string>& label_column = std::nullopt);

CsvMatrix load_matrix_csv(const std::filesystem::path& path, bool has_header,
                          const std::optional<std::string>& label_column = std::nullopt);

/// True when some field of the first line is not a number.
bool first_line_is_header(std::string_view text);

/// Canonical text: shortest round-trip decimal for every value.
std::string format_matrix_csv(const Matrix& m, const std::vector<std::string>& header = {});

void write_matrix_csv(const std::filesystem::path& path, const Matrix& m,
                      const std::vector<std::string>& header = {});

/// Single-column label file with a mandatory header row.
std::vector<Label> load_labels_csv(const std::filesystem::path& path);

/// Shortest decimal string that parses back to exactly `v`.
std::string format_double(double v);

std::vector<std::string> split_csv_line(std::string_view line);

}  // namespace lion
