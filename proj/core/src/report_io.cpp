#include "lion/report_io.hpp"

#include <json.hpp>

#include "lion/csv.hpp"
#include "lion/error.hpp"

namespace lion {
namespace {

std::string opt(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }

nlohmann::json opt_json(const std::optional<double>& v) {
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

}  // namespace

std::string format_report_csv(const EvalReport& report) {
    const std::size_t d = report.per_sample.empty() ? 0 : report.per_sample.front().y.size();
    std::string out = "index,kind";
    for (std::size_t j = 0; j < d; ++j) out += ",y" + std::to_string(j);
    out += ",nn_distance,distance_percentile,accuracy,baseline,kl\n";
    for (std::size_t i = 0; i < report.per_sample.size(); ++i) {
        const SampleMetrics& s = report.per_sample[i];
        out += std::to_string(i);
        out += ',';
        out += to_string(s.kind);
        for (double v : s.y) out += "," + format_double(v);
        out += "," + format_double(s.nn_distance);
        out += "," + format_double(s.distance_percentile);
        out += "," + opt(s.accuracy);
        out += "," + opt(s.baseline);
        out += "," + opt(s.kl);
        out += '\n';
    }
    return out;
}

std::string format_report_summary_json(const EvalReport& report) {
    nlohmann::json j;
    j["count"] = report.per_sample.size();
    j["mean_accuracy"] = opt_json(report.mean_accuracy);
    j["baseline_accuracy"] = opt_json(report.baseline_accuracy);
    j["mean_distance_percentile"] = report.mean_distance_percentile;
    j["mean_nn_distance"] = report.mean_nn_distance;
    j["mean_kl"] = opt_json(report.mean_kl);
    j["non_outlier_count"] = report.non_outlier_count;
    return j.dump(2) + "\n";
}

std::string format_power_curve_csv(const PowerCurve& curve) {
    std::string out = "p,error\n";
    for (std::size_t i = 0; i < curve.grid.size(); ++i) {
        out += format_double(curve.grid[i]) + "," + format_double(curve.errors[i]) + "\n";
    }
    return out;
}

std::string format_outcomes_csv(const std::vector<MapOutcome>& outcomes) {
    const std::size_t d = outcomes.empty() ? 0 : outcomes.front().y.size();
    std::string out;
    for (std::size_t j = 0; j < d; ++j) out += "y" + std::to_string(j) + ",";
    out += "kind,group_id\n";
    for (const MapOutcome& o : outcomes) {
        for (double v : o.y) out += format_double(v) + ",";
        out += to_string(o.kind);
        out += ',';
        if (o.group_id) out += std::to_string(*o.group_id);
        out += '\n';
    }
    return out;
}

std::vector<MapOutcome> parse_outcomes_csv(std::string_view text) {
    std::vector<MapOutcome> out;
    std::size_t start = 0;
    std::size_t line_no = 0;
    std::size_t width = 0;
    while (start < text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        const std::string_view line = text.substr(start, end - start);
        start = end + 1;
        ++line_no;
        const auto fields = split_csv_line(line);
        if (line_no == 1) {
            width = fields.size();
            if (width < 3 || fields[width - 2] != "kind" || fields[width - 1] != "group_id") {
                throw DataError("outcomes file must end its header with kind,group_id");
            }
            continue;
        }
        if (fields.size() == 1 && fields.front().empty()) continue;
        if (fields.size() != width) {
            throw DataError("outcomes line " + std::to_string(line_no) + ": expected " +
                            std::to_string(width) + " fields");
        }
        std::string coords;
        for (std::size_t j = 0; j + 2 < width; ++j) coords += (j ? "," : "") + fields[j];
        MapOutcome o;
        const Matrix row = parse_matrix_csv(coords, false).matrix;
        o.y.assign(row.values().begin(), row.values().end());
        o.kind = parse_outcome_kind(fields[width - 2]);
        if (!fields[width - 1].empty()) {
            try {
                o.group_id = std::stoul(fields[width - 1]);
            } catch (const std::exception&) {
                throw DataError("outcomes line " + std::to_string(line_no) + ": bad group_id");
            }
        }
        out.push_back(std::move(o));
    }
    if (line_no == 0) throw DataError("outcomes file is empty");
    return out;
}

Matrix outcomes_matrix(const std::vector<MapOutcome>& outcomes) {
    std::vector<Point> rows;
    rows.reserve(outcomes.size());
    for (const auto& o : outcomes) rows.push_back(o.y);
    return Matrix::from_rows(rows);
}

}  // namespace lion
