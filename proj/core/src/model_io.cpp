#include "lion/model_io.hpp"

#include <json.hpp>

#include "lion/error.hpp"
#include "lion/file_util.hpp"

namespace lion {
namespace {

using nlohmann::json;

json matrix_to_json(const Matrix& m) {
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", m.values()}};
}

// Reads `key` from `obj`, reporting failures against the dotted field path.
template <typename T>
T field(const json& obj, const std::string& path, const char* key) {
    const std::string name = path.empty() ? key : path + "." + key;
    try {
        if (!obj.contains(key)) throw DataError("model field '" + name + "' is missing");
        return obj.at(key).get<T>();
    } catch (const json::exception& e) {
        throw DataError("model field '" + name + "' is invalid: " + e.what());
    }
}

Matrix matrix_from_json(const json& obj, const std::string& path, const char* key) {
    const std::string name = path.empty() ? key : path + "." + key;
    const json node = field<json>(obj, path, key);
    try {
        return Matrix(field<std::size_t>(node, name, "rows"), field<std::size_t>(node, name, "cols"),
                      field<std::vector<double>>(node, name, "data"));
    } catch (const DataError& e) {
        const std::string what = e.what();
        if (what.rfind("model field", 0) == 0) throw;
        throw DataError("model field '" + name + "' is invalid: " + what);
    }
}

json config_to_json(const LionConfig& c) {
    json j;
    j["rx_percentile"] = c.rx_percentile;
    j["ry_coefficient"] = c.ry_coefficient;
    j["ry_percentile"] = c.ry_percentile ? json(*c.ry_percentile) : json("max");
    j["rclose_percentile"] = c.rclose_percentile;
    j["power"] = c.power ? json(*c.power) : json("auto");
    j["power_grid"] = {{"lo", c.power_grid.lo},
                       {"hi", c.power_grid.hi},
                       {"step", c.power_grid.step},
                       {"refine_step", c.power_grid.refine_step}};
    j["seed"] = c.seed;
    return j;
}

std::optional<double> number_or_keyword(const json& obj, const std::string& path, const char* key,
                                        const char* keyword) {
    const json v = field<json>(obj, path, key);
    if (v.is_string() && v.get<std::string>() == keyword) return std::nullopt;
    if (v.is_number()) return v.get<double>();
    throw DataError("model field '" + path + "." + key + "' must be a number or \"" + keyword +
                    "\"");
}

LionConfig config_from_json(const json& j) {
    LionConfig c;
    c.rx_percentile = field<double>(j, "config", "rx_percentile");
    c.ry_coefficient = field<double>(j, "config", "ry_coefficient");
    c.ry_percentile = number_or_keyword(j, "config", "ry_percentile", "max");
    c.rclose_percentile = field<double>(j, "config", "rclose_percentile");
    c.power = number_or_keyword(j, "config", "power", "auto");
    const json grid = field<json>(j, "config", "power_grid");
    c.power_grid.lo = field<double>(grid, "config.power_grid", "lo");
    c.power_grid.hi = field<double>(grid, "config.power_grid", "hi");
    c.power_grid.step = field<double>(grid, "config.power_grid", "step");
    c.power_grid.refine_step = field<double>(grid, "config.power_grid", "refine_step");
    c.seed = field<std::uint64_t>(j, "config", "seed");
    try {
        c.validate();
    } catch (const UsageError& e) {
        throw DataError(std::string("model field 'config' is invalid: ") + e.what());
    }
    return c;
}

json pool_to_json(const PoolState& s) {
    json centers = json::array();
    for (std::size_t k = 0; k < s.free_centers.size(); k += s.dims) {
        centers.push_back(std::vector<double>(s.free_centers.begin() + static_cast<std::ptrdiff_t>(k),
                                              s.free_centers.begin() +
                                                  static_cast<std::ptrdiff_t>(k + s.dims)));
    }
    return {{"dims", s.dims},
            {"r_y", s.r_y},
            {"lower", s.lower},
            {"upper", s.upper},
            {"cell_counts", s.cell_counts},
            {"cell_side", s.cell_side},
            {"free_centers", std::move(centers)},
            {"expansion_layers", s.expansion_layers},
            {"seed", s.seed}};
}

PoolState pool_from_json(const json& j) {
    PoolState s;
    s.dims = field<std::size_t>(j, "pool", "dims");
    s.r_y = field<double>(j, "pool", "r_y");
    s.lower = field<std::vector<double>>(j, "pool", "lower");
    s.upper = field<std::vector<double>>(j, "pool", "upper");
    s.cell_counts = field<std::vector<std::size_t>>(j, "pool", "cell_counts");
    s.cell_side = field<std::vector<double>>(j, "pool", "cell_side");
    for (const auto& c : field<std::vector<std::vector<double>>>(j, "pool", "free_centers")) {
        if (c.size() != s.dims) {
            throw DataError("model field 'pool.free_centers' has a center of wrong dimension");
        }
        s.free_centers.insert(s.free_centers.end(), c.begin(), c.end());
    }
    s.expansion_layers = field<std::size_t>(j, "pool", "expansion_layers");
    s.seed = field<std::uint64_t>(j, "pool", "seed");
    return s;
}

}  // namespace

std::string model_to_json(const LionModel& model) {
    json j;
    j["schema_version"] = kModelSchemaVersion;
    j["config"] = config_to_json(model.config());
    j["r_x"] = model.r_x();
    j["r_close"] = model.r_close();
    j["r_y"] = model.r_y();
    j["power"] = model.power();
    j["x_train"] = matrix_to_json(model.x_train());
    j["y_train"] = matrix_to_json(model.y_train());
    j["training_outlier_flags"] = model.training_outlier_flags();
    j["pool"] = pool_to_json(model.pool().state());
    return j.dump(1) + "\n";
}

LionModel model_from_json(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw DataError(std::string("model file is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw DataError("model file must contain a JSON object");

    const int version = field<int>(j, "", "schema_version");
    if (version != kModelSchemaVersion) {
        throw DataError("unsupported model schema_version " + std::to_string(version) +
                        " (expected " + std::to_string(kModelSchemaVersion) + ")");
    }

    LionConfig config = config_from_json(field<json>(j, "", "config"));
    LionParameters params;
    params.r_x = field<double>(j, "", "r_x");
    params.r_close = field<double>(j, "", "r_close");
    params.r_y = field<double>(j, "", "r_y");
    params.power = field<double>(j, "", "power");

    Matrix x = matrix_from_json(j, "", "x_train");
    Matrix y = matrix_from_json(j, "", "y_train");
    auto flags = field<std::vector<bool>>(j, "", "training_outlier_flags");
    if (flags.size() != x.rows()) {
        throw DataError("model field 'training_outlier_flags' has " +
                        std::to_string(flags.size()) + " entries for " +
                        std::to_string(x.rows()) + " samples");
    }

    PoolState state = pool_from_json(field<json>(j, "", "pool"));
    if (state.r_y != params.r_y) throw DataError("model field 'pool.r_y' disagrees with 'r_y'");
    OutlierPositionPool pool = OutlierPositionPool::restore(std::move(state), y);
    return LionModel(std::move(x), std::move(y), std::move(config), params, std::move(flags),
                     std::move(pool));
}

void save_model(const LionModel& model, const std::filesystem::path& path) {
    write_text_file_atomic(path, model_to_json(model));
}

LionModel load_model(const std::filesystem::path& path) {
    try {
        return model_from_json(read_text_file(path));
    } catch (const DataError& e) {
        throw DataError(path.string() + ": " + e.what());
    }
}

}  // namespace lion
