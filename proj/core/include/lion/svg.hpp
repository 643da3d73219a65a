#pragma once

#include <filesystem>
#include <span>
#include <string>

#include "lion/engine.hpp"
#include "lion/matrix.hpp"

namespace lion {

struct SvgOptions {
    double width = 800.0;
    double height = 800.0;
    double margin = 24.0;
    double marker_radius = 2.5;  // pixels
    bool r_y_circles = true;     // dashed r_y circle around each outlier placement
};

/// Static scatter of a 2-D embedding: training points in grey, mapped points
/// colored by outcome kind. Output bytes depend only on the inputs.
std::string render_svg_string(const Matrix& y_train, std::span<const MapOutcome> outcomes,
                              double r_y, const SvgOptions& options = {});

void render_svg(const Matrix& y_train, std::span<const MapOutcome> outcomes, double r_y,
                const std::filesystem::path& path, const SvgOptions& options = {});

}  // namespace lion
