// lion: fit, apply and evaluate out-of-sample mappings from the command line.

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "lion/config.hpp"
#include "lion/csv.hpp"
#include "lion/engine.hpp"
#include "lion/error.hpp"
#include "lion/file_util.hpp"
#include "lion/metrics.hpp"
#include "lion/model_io.hpp"
#include "lion/neighbors.hpp"
#include "lion/percentile.hpp"
#include "lion/power_select.hpp"
#include "lion/report_io.hpp"
#include "lion/svg.hpp"

namespace fs = std::filesystem;
using namespace lion;

namespace {

enum ExitCode { kOk = 0, kUsage = 1, kData = 2, kNumeric = 3 };

Matrix load_matrix(const std::string& path) {
    const std::string text = read_text_file(path);
    try {
        return parse_matrix_csv(text, first_line_is_header(text)).matrix;
    } catch (const DataError& e) {
        throw DataError(path + ": " + e.what());
    }
}

double parse_number(const std::string& s, const std::string& what) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != s.size()) throw UsageError(what + ": '" + s + "' is not a number");
    return v;
}

// "lo:hi:step"
PowerGrid parse_grid(const std::string& text) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    for (;;) {
        const std::size_t colon = text.find(':', start);
        parts.push_back(text.substr(start, colon - start));
        if (colon == std::string::npos) break;
        start = colon + 1;
    }
    if (parts.size() != 3) throw UsageError("--grid expects lo:hi:step, got '" + text + "'");
    PowerGrid g;
    g.lo = parse_number(parts[0], "--grid lo");
    g.hi = parse_number(parts[1], "--grid hi");
    g.step = parse_number(parts[2], "--grid step");
    g.refine_step = 0.0;
    return g;
}

struct FitArgs {
    std::string x, y, out;
    double rx_percentile = 99.0;
    std::string power = "auto";
    double k_coef = 2.0;
    std::string ry_percentile = "max";
    double rclose_percentile = 10.0;
    std::uint64_t seed = 0;
};

int run_fit(const FitArgs& a) {
    LionConfig config;
    config.rx_percentile = a.rx_percentile;
    config.ry_coefficient = a.k_coef;
    config.rclose_percentile = a.rclose_percentile;
    config.seed = a.seed;
    if (a.power != "auto") config.power = parse_number(a.power, "--power");
    if (a.ry_percentile != "max") config.ry_percentile = parse_number(a.ry_percentile, "--ry-percentile");
    config.validate();

    const Matrix x = load_matrix(a.x);
    const Matrix y = load_matrix(a.y);
    const LionModel model = fit(x, y, config);
    save_model(model, a.out);

    std::cout << "r_x=" << format_double(model.r_x()) << " r_close=" << format_double(model.r_close())
              << " r_y=" << format_double(model.r_y()) << " power=" << format_double(model.power())
              << " free_positions=" << model.pool().available() << "\n";
    return kOk;
}

struct MapArgs {
    std::string model, input, output, kinds, save_model;
    std::optional<std::uint64_t> seed;
};

int run_map(const MapArgs& a) {
    LionModel model = load_model(a.model);
    const Matrix x = load_matrix(a.input);
    const std::uint64_t seed = a.seed.value_or(model.config().seed);
    const std::vector<MapOutcome> outcomes = model.map_batch(x, seed);

    const Matrix y = outcomes_matrix(outcomes);
    std::vector<std::string> header;
    for (std::size_t c = 0; c < y.cols(); ++c) header.push_back("y" + std::to_string(c));
    write_text_file_atomic(a.output, format_matrix_csv(y, header));
    if (!a.kinds.empty()) write_text_file_atomic(a.kinds, format_outcomes_csv(outcomes));
    // The pool only shrinks while mapping; persisting it keeps later batches
    // away from positions handed out here.
    if (!a.save_model.empty()) save_model(model, a.save_model);

    std::size_t counts[3] = {0, 0, 0};
    for (const auto& o : outcomes) ++counts[static_cast<int>(o.kind)];
    std::cout << "interpolated=" << counts[0] << " near_single=" << counts[1]
              << " outlier=" << counts[2] << "\n";
    return kOk;
}

struct SelectArgs {
    std::string x, y, grid = "0.5:50:0.5", out;
    double rx_percentile = 99.0;
    double refine = 0.0;
};

int run_select(const SelectArgs& a) {
    PowerGrid grid = parse_grid(a.grid);
    grid.refine_step = a.refine;
    grid.validate();
    if (!(a.rx_percentile >= 0.0 && a.rx_percentile <= 100.0)) {
        throw UsageError("--rx-percentile must lie in [0, 100]");
    }
    const Matrix x = load_matrix(a.x);
    const Matrix y = load_matrix(a.y);
    if (x.rows() != y.rows()) throw DataError("--x and --y have different row counts");
    const double r_x = percentile(NeighborIndex(x).nn_distances(), a.rx_percentile);
    const PowerCurve curve = select_power(r_x, x, y, grid);
    write_text_file_atomic(a.out, format_power_curve_csv(curve));
    std::cout << "r_x=" << format_double(r_x) << " best_p=" << format_double(curve.best_p)
              << " error=" << format_double(curve.best_error)
              << " skipped=" << curve.skipped_count << "\n";
    return kOk;
}

struct EvalArgs {
    std::string mode, model, input, labels, train_labels, report, summary;
    bool kl = false;
    std::size_t k = 10;
    double perplexity = 30.0;
    std::optional<std::uint64_t> seed;
};

int run_eval(const EvalArgs& a) {
    LionModel model = load_model(a.model);
    const Matrix x = load_matrix(a.input);
    EvalOptions opt;
    opt.k = a.k;
    opt.compute_kl = a.kl;
    opt.perplexity = a.perplexity;
    opt.seed = a.seed.value_or(model.config().seed);

    EvalReport report;
    if (a.mode == "attribution") {
        if (a.labels.empty() || a.train_labels.empty()) {
            throw UsageError("eval attribution needs --labels and --train-labels");
        }
        const auto test = load_labels_csv(a.labels);
        const auto train = load_labels_csv(a.train_labels);
        report = run_attribution_test(model, x, test, train, opt);
    } else {
        report = run_outlier_test(model, x, opt);
    }
    write_text_file_atomic(a.report, format_report_csv(report));
    const std::string summary = format_report_summary_json(report);
    if (!a.summary.empty()) write_text_file_atomic(a.summary, summary);
    std::cout << summary << "\n";
    return kOk;
}

struct PlotArgs {
    std::string model, outcomes, out;
    bool no_circles = false;
    double size = 800.0;
};

int run_plot(const PlotArgs& a) {
    const LionModel model = load_model(a.model);
    const auto outcomes = parse_outcomes_csv(read_text_file(a.outcomes));
    SvgOptions opt;
    opt.width = opt.height = a.size;
    opt.r_y_circles = !a.no_circles;
    render_svg(model.y_train(), outcomes, model.r_y(), a.out, opt);
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Place new samples into an existing embedding"};
    app.require_subcommand(1);

    FitArgs fa;
    auto* fit_cmd = app.add_subcommand("fit", "Fit radii, power and outlier pool");
    fit_cmd->add_option("--x", fa.x, "High-dimensional training samples (CSV)")->required();
    fit_cmd->add_option("--y", fa.y, "Training embedding (CSV)")->required();
    fit_cmd->add_option("--rx-percentile", fa.rx_percentile, "Percentile of x nn distances for r_x");
    fit_cmd->add_option("--power", fa.power, "IDW power or 'auto'");
    fit_cmd->add_option("--k-coef", fa.k_coef, "Multiplier on the y nn radius for r_y");
    fit_cmd->add_option("--ry-percentile", fa.ry_percentile, "Percentile of y nn distances or 'max'");
    fit_cmd->add_option("--rclose-percentile", fa.rclose_percentile, "Percentile of y nn distances for r_close");
    fit_cmd->add_option("--seed", fa.seed, "Default seed for mapping");
    fit_cmd->add_option("--out", fa.out, "Model file (JSON)")->required();

    MapArgs ma;
    auto* map_cmd = app.add_subcommand("map", "Embed new samples");
    map_cmd->add_option("--model", ma.model)->required();
    map_cmd->add_option("--input", ma.input, "New samples (CSV)")->required();
    map_cmd->add_option("--output", ma.output, "Embedded coordinates (CSV)")->required();
    map_cmd->add_option("--seed", ma.seed, "Overrides the seed stored in the model");
    map_cmd->add_option("--kinds", ma.kinds, "Coordinates with outcome kind and group (CSV)");
    map_cmd->add_option("--save-model", ma.save_model, "Write the model with the consumed pool");

    SelectArgs sa;
    auto* sel_cmd = app.add_subcommand("select-power", "Cross-validation curve over IDW powers");
    sel_cmd->add_option("--x", sa.x)->required();
    sel_cmd->add_option("--y", sa.y)->required();
    sel_cmd->add_option("--rx-percentile", sa.rx_percentile);
    sel_cmd->add_option("--grid", sa.grid, "lo:hi:step");
    sel_cmd->add_option("--refine", sa.refine, "Second pass step around the best power (0 = off)");
    sel_cmd->add_option("--out", sa.out, "Curve (CSV)")->required();

    EvalArgs ea;
    auto* eval_cmd = app.add_subcommand("eval", "Score a mapping");
    eval_cmd->add_option("mode", ea.mode)->required()->check(CLI::IsMember({"attribution", "outliers"}));
    eval_cmd->add_option("--model", ea.model)->required();
    eval_cmd->add_option("--input", ea.input)->required();
    eval_cmd->add_option("--labels", ea.labels, "Labels of the input samples (CSV with header)");
    eval_cmd->add_option("--train-labels", ea.train_labels, "Labels of the training samples");
    eval_cmd->add_flag("--kl", ea.kl, "Also report KL divergence per sample");
    eval_cmd->add_option("--k", ea.k, "Neighbors for k-NN accuracy")->check(CLI::PositiveNumber);
    eval_cmd->add_option("--perplexity", ea.perplexity)->check(CLI::PositiveNumber);
    eval_cmd->add_option("--seed", ea.seed);
    eval_cmd->add_option("--report", ea.report, "Per-sample report (CSV)")->required();
    eval_cmd->add_option("--summary", ea.summary, "Aggregate metrics (JSON)");

    PlotArgs pa;
    auto* plot_cmd = app.add_subcommand("plot", "Render training and mapped points as SVG");
    plot_cmd->add_option("--model", pa.model)->required();
    plot_cmd->add_option("--outcomes", pa.outcomes, "File written by map --kinds")->required();
    plot_cmd->add_option("--out", pa.out)->required();
    plot_cmd->add_flag("--no-circles", pa.no_circles, "Omit r_y circles");
    plot_cmd->add_option("--size", pa.size, "Canvas width and height in pixels")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*fit_cmd) return run_fit(fa);
        if (*map_cmd) return run_map(ma);
        if (*sel_cmd) return run_select(sa);
        if (*eval_cmd) return run_eval(ea);
        if (*plot_cmd) return run_plot(pa);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const NumericError& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return kNumeric;
    } catch (const DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return kData;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kData;
    }
    return kUsage;
}
