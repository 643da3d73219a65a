#include "lion/csv.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "lion/error.hpp"
#include "lion/file_util.hpp"

namespace lion {
namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

std::optional<double> parse_number(std::string_view cell) {
    cell = trim(cell);
    if (!cell.empty() && cell.front() == '+') cell.remove_prefix(1);
    if (cell.empty()) return std::nullopt;
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
    if (ec != std::errc() || ptr != cell.data() + cell.size()) return std::nullopt;
    return value;
}

std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start < text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        lines.push_back(text.substr(start, end - start));
        start = end + 1;
    }
    // A final newline does not start another row.
    while (!lines.empty() && trim(lines.back()).empty()) lines.pop_back();
    return lines;
}

}  // namespace

std::vector<std::string> split_csv_line(std::string_view line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        const auto field =
            trim(line.substr(start, comma == std::string_view::npos ? line.npos : comma - start));
        out.emplace_back(field);
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

bool first_line_is_header(std::string_view text) {
    const auto lines = split_lines(text);
    if (lines.empty()) return false;
    for (const auto& field : split_csv_line(lines.front())) {
        if (!parse_number(field)) return true;
    }
    return false;
}

CsvMatrix parse_matrix_csv(std::string_view text, bool has_header,
                           const std::optional<std::string>& label_column) {
    const auto lines = split_lines(text);
    std::size_t first_data = 0;
    std::vector<std::string> header;
    if (has_header) {
        if (lines.empty()) throw DataError("CSV is empty; expected a header row");
        header = split_csv_line(lines.front());
        first_data = 1;
    }

    std::optional<std::size_t> label_index;
    if (label_column) {
        if (!has_header) throw UsageError("a label column requires a header row");
        const auto it = std::find(header.begin(), header.end(), *label_column);
        if (it == header.end()) {
            throw DataError("label column '" + *label_column + "' not found in header");
        }
        label_index = static_cast<std::size_t>(it - header.begin());
    }

    std::size_t width = has_header ? header.size() : 0;
    std::vector<double> values;
    std::vector<Label> labels;
    std::size_t rows = 0;
    for (std::size_t li = first_data; li < lines.size(); ++li) {
        const std::size_t line_no = li + 1;
        const auto fields = split_csv_line(lines[li]);
        if (width == 0) width = fields.size();
        if (fields.size() != width) {
            throw DataError("line " + std::to_string(line_no) + ": expected " +
                            std::to_string(width) + " fields, got " +
                            std::to_string(fields.size()));
        }
        for (std::size_t c = 0; c < fields.size(); ++c) {
            if (label_index && c == *label_index) {
                labels.push_back(fields[c]);
                continue;
            }
            const auto v = parse_number(fields[c]);
            if (!v || !std::isfinite(*v)) {
                throw DataError("line " + std::to_string(line_no) + ", column " +
                                std::to_string(c + 1) + ": not a finite number: '" + fields[c] +
                                "'");
            }
            values.push_back(*v);
        }
        ++rows;
    }
    if (rows == 0) throw DataError("CSV contains no data rows");

    const std::size_t cols = width - (label_index ? 1 : 0);
    if (cols == 0) throw DataError("CSV contains no numeric columns");
    CsvMatrix out{Matrix(rows, cols, std::move(values)), std::move(header), std::nullopt};
    if (label_index) out.labels = std::move(labels);
    return out;
}

CsvMatrix load_matrix_csv(const std::filesystem::path& path, bool has_header,
                          const std::optional<std::string>& label_column) {
    try {
        return parse_matrix_csv(read_text_file(path), has_header, label_column);
    } catch (const DataError& e) {
        throw DataError(path.string() + ": " + e.what());
    }
}

std::string format_double(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc()) throw DataError("cannot format value");
    return std::string(buf, ptr);
}

std::string format_matrix_csv(const Matrix& m, const std::vector<std::string>& header) {
    std::string out;
    if (!header.empty()) {
        for (std::size_t c = 0; c < header.size(); ++c) {
            if (c) out += ',';
            out += header[c];
        }
        out += '\n';
    }
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) out += ',';
            out += format_double(m(i, j));
        }
        out += '\n';
    }
    return out;
}

void write_matrix_csv(const std::filesystem::path& path, const Matrix& m,
                      const std::vector<std::string>& header) {
    write_text_file_atomic(path, format_matrix_csv(m, header));
}

std::vector<Label> load_labels_csv(const std::filesystem::path& path) {
    const std::string text = read_text_file(path);
    const auto lines = split_lines(text);
    if (lines.size() < 2) throw DataError(path.string() + ": expected a header and labels");
    std::vector<Label> labels;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto fields = split_csv_line(lines[i]);
        if (fields.size() != 1) {
            throw DataError(path.string() + ": line " + std::to_string(i + 1) +
                            ": expected a single label");
        }
        labels.push_back(fields.front());
    }
    return labels;
}

}  // namespace lion
