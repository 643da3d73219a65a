#include "lion/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>

#include "lion/error.hpp"
#include "lion/file_util.hpp"

namespace lion {
namespace {

const char* color_for(OutcomeKind kind) {
    switch (kind) {
        case OutcomeKind::Interpolated: return "#1f77b4";
        case OutcomeKind::NearSingleNeighbor: return "#2ca02c";
        case OutcomeKind::OutlierPlaced: return "#d62728";
    }
    return "#000000";
}

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f", v);
    return buf;
}

struct Viewport {
    double min_x, min_y, scale, off_x, off_y, height;

    double px(double x) const { return off_x + (x - min_x) * scale; }
    double py(double y) const { return height - (off_y + (y - min_y) * scale); }
};

}  // namespace

std::string render_svg_string(const Matrix& y_train, std::span<const MapOutcome> outcomes,
                              double r_y, const SvgOptions& opt) {
    if (y_train.cols() != 2) {
        throw UsageError("SVG rendering needs a 2-D embedding, got " +
                         std::to_string(y_train.cols()) + " dimensions");
    }
    for (const auto& o : outcomes) {
        if (o.y.size() != 2) throw UsageError("SVG rendering needs 2-D mapped points");
    }

    double lo_x = std::numeric_limits<double>::infinity(), hi_x = -lo_x;
    double lo_y = lo_x, hi_y = -lo_x;
    auto grow = [&](double x, double y, double pad) {
        lo_x = std::min(lo_x, x - pad);
        hi_x = std::max(hi_x, x + pad);
        lo_y = std::min(lo_y, y - pad);
        hi_y = std::max(hi_y, y + pad);
    };
    for (std::size_t i = 0; i < y_train.rows(); ++i) grow(y_train(i, 0), y_train(i, 1), 0.0);
    for (const auto& o : outcomes) {
        const bool circled = opt.r_y_circles && o.kind == OutcomeKind::OutlierPlaced;
        grow(o.y[0], o.y[1], circled ? r_y : 0.0);
    }

    const double span_x = std::max(hi_x - lo_x, 1e-12);
    const double span_y = std::max(hi_y - lo_y, 1e-12);
    const double inner_w = opt.width - 2.0 * opt.margin;
    const double inner_h = opt.height - 2.0 * opt.margin;
    const double scale = std::min(inner_w / span_x, inner_h / span_y);
    const Viewport vp{lo_x, lo_y, scale,
                      opt.margin + 0.5 * (inner_w - span_x * scale),
                      opt.margin + 0.5 * (inner_h - span_y * scale), opt.height};

    std::string s;
    s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + num(opt.width) +
         "\" height=\"" + num(opt.height) + "\" viewBox=\"0 0 " + num(opt.width) + " " +
         num(opt.height) + "\">\n";
    s += "<rect x=\"0\" y=\"0\" width=\"" + num(opt.width) + "\" height=\"" + num(opt.height) +
         "\" fill=\"#ffffff\"/>\n";

    s += "<g id=\"training\" fill=\"#9e9e9e\" fill-opacity=\"0.7\">\n";
    for (std::size_t i = 0; i < y_train.rows(); ++i) {
        s += "<circle cx=\"" + num(vp.px(y_train(i, 0))) + "\" cy=\"" + num(vp.py(y_train(i, 1))) +
             "\" r=\"" + num(opt.marker_radius) + "\"/>\n";
    }
    s += "</g>\n";

    if (opt.r_y_circles) {
        s += "<g id=\"outlier-radius\" fill=\"none\" stroke=\"#d62728\" stroke-opacity=\"0.5\" "
             "stroke-dasharray=\"4 3\">\n";
        for (const auto& o : outcomes) {
            if (o.kind != OutcomeKind::OutlierPlaced) continue;
            s += "<circle cx=\"" + num(vp.px(o.y[0])) + "\" cy=\"" + num(vp.py(o.y[1])) +
                 "\" r=\"" + num(r_y * scale) + "\"/>\n";
        }
        s += "</g>\n";
    }

    s += "<g id=\"mapped\">\n";
    for (const auto& o : outcomes) {
        s += "<circle class=\"" + std::string(to_string(o.kind)) + "\" cx=\"" + num(vp.px(o.y[0])) +
             "\" cy=\"" + num(vp.py(o.y[1])) + "\" r=\"" + num(1.6 * opt.marker_radius) +
             "\" fill=\"" + color_for(o.kind) + "\"/>\n";
    }
    s += "</g>\n";

    double legend_y = opt.margin;
    for (auto kind : {OutcomeKind::Interpolated, OutcomeKind::NearSingleNeighbor,
                      OutcomeKind::OutlierPlaced}) {
        s += "<circle cx=\"" + num(opt.margin) + "\" cy=\"" + num(legend_y) + "\" r=\"4.000\" fill=\"" +
             color_for(kind) + "\"/>";
        s += "<text x=\"" + num(opt.margin + 10.0) + "\" y=\"" + num(legend_y + 4.0) +
             "\" font-family=\"sans-serif\" font-size=\"12\">" + std::string(to_string(kind)) +
             "</text>\n";
        legend_y += 16.0;
    }
    s += "</svg>\n";
    return s;
}

void render_svg(const Matrix& y_train, std::span<const MapOutcome> outcomes, double r_y,
                const std::filesystem::path& path, const SvgOptions& options) {
    write_text_file_atomic(path, render_svg_string(y_train, outcomes, r_y, options));
}

}  // namespace lion
