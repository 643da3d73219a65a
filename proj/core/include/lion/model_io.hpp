#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "lion/engine.hpp"

namespace lion {

inline constexpr int kModelSchemaVersion = 1;

/// Self-contained JSON document: config, radii, power, inline training
/// matrices, outlier flags and the full pool state. Doubles are written in
/// shortest round-trip form, so a reloaded model maps bitwise identically.
std::string model_to_json(const LionModel& model);
LionModel model_from_json(std::string_view text);

void save_model(const LionModel& model, const std::filesystem::path& path);
LionModel load_model(const std::filesystem::path& path);

}  // namespace lion
