#include "lion/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "lion/error.hpp"
#include "lion/geometry.hpp"
#include "lion/neighbors.hpp"
#include "lion/percentile.hpp"

namespace lion {
namespace {

constexpr double kEntropyTolerance = 1e-5;
constexpr int kMaxSigmaIterations = 200;

// Shannon entropy in bits of p_j ~ exp(-(d_j^2 - d_min^2) / (2 sigma^2)).
double conditional_entropy_bits(std::span<const double> sq, double sq_min, double sigma) {
    const double beta = 1.0 / (2.0 * sigma * sigma);
    double z = 0.0;
    double weighted = 0.0;
    for (double s : sq) {
        const double shifted = s - sq_min;
        const double e = std::exp(-shifted * beta);
        z += e;
        weighted += shifted * e;
    }
    return (std::log(z) + beta * weighted / z) / std::log(2.0);
}

void conditional_row(std::span<const double> dist_row, double sigma, std::span<double> out) {
    double sq_min = std::numeric_limits<double>::infinity();
    for (double d : dist_row) sq_min = std::min(sq_min, d * d);
    const double beta = 1.0 / (2.0 * sigma * sigma);
    double z = 0.0;
    for (std::size_t j = 0; j < dist_row.size(); ++j) {
        out[j] = std::exp(-(dist_row[j] * dist_row[j] - sq_min) * beta);
        z += out[j];
    }
    for (double& v : out) v /= z;
}

double mean_of(const std::vector<double>& v) {
    return v.empty() ? 0.0 : std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

void summarize(EvalReport& report) {
    std::vector<double> pct, dist, acc, base, kl;
    for (const auto& s : report.per_sample) {
        pct.push_back(s.distance_percentile);
        dist.push_back(s.nn_distance);
        if (s.accuracy) acc.push_back(*s.accuracy);
        if (s.baseline) base.push_back(*s.baseline);
        if (s.kl) kl.push_back(*s.kl);
    }
    report.mean_distance_percentile = mean_of(pct);
    report.mean_nn_distance = mean_of(dist);
    if (!acc.empty()) report.mean_accuracy = mean_of(acc);
    if (!base.empty()) report.baseline_accuracy = mean_of(base);
    if (!kl.empty()) report.mean_kl = mean_of(kl);
}

SampleMetrics score_placement(const MapOutcome& outcome, std::span<const double> d_nn,
                              const Matrix& y_train) {
    SampleMetrics s;
    s.kind = outcome.kind;
    s.y = outcome.y;
    s.nn_distance = min_distance_to_rows(outcome.y, y_train);
    s.distance_percentile = percentile_rank(d_nn, s.nn_distance);
    return s;
}

}  // namespace

double knn_accuracy(const Matrix& y_train, std::span<const Label> labels, PointView y_new,
                    const Label& label_new, std::size_t k) {
    if (labels.size() != y_train.rows()) {
        throw DataError("got " + std::to_string(labels.size()) + " labels for " +
                        std::to_string(y_train.rows()) + " training samples");
    }
    if (k == 0 || k > y_train.rows()) {
        throw UsageError("k=" + std::to_string(k) + " exceeds the training set size");
    }
    // Linear scan; building an index here would copy y_train per call.
    std::vector<std::pair<double, std::size_t>> ranked(y_train.rows());
    for (std::size_t i = 0; i < y_train.rows(); ++i) {
        ranked[i] = {euclidean_distance(y_new, y_train.row(i)), i};
    }
    std::partial_sort(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(k),
                      ranked.end());
    std::size_t hits = 0;
    for (std::size_t i = 0; i < k; ++i) hits += labels[ranked[i].second] == label_new;
    return static_cast<double>(hits) / static_cast<double>(k);
}

double nn_distance_percentile(std::span<const double> d_nn, PointView y_new,
                              const Matrix& y_train) {
    return percentile_rank(d_nn, min_distance_to_rows(y_new, y_train));
}

double perplexity_sigma(std::span<const double> dist_row, double perplexity) {
    const std::size_t n = dist_row.size();
    if (n < 2) throw UsageError("perplexity search needs at least two distances");
    if (!(perplexity > 0.0 && perplexity < static_cast<double>(n))) {
        throw UsageError("perplexity " + std::to_string(perplexity) + " must lie in (0, " +
                         std::to_string(n) + ")");
    }

    std::vector<double> sq(n);
    for (std::size_t j = 0; j < n; ++j) sq[j] = dist_row[j] * dist_row[j];
    const auto [mn, mx] = std::minmax_element(sq.begin(), sq.end());
    const double sq_min = *mn;
    const double scale = std::sqrt(*mx) > 0.0 ? std::sqrt(*mx) : 1.0;

    double log_lo = std::log(scale) - std::log(1e3);
    double log_hi = std::log(scale) + std::log(1e3);
    const double mid = 0.5 * (log_lo + log_hi);
    if (*mn == *mx) return std::exp(mid);  // every sigma gives the uniform distribution

    const double target = std::log2(perplexity);
    auto entropy_at = [&](double log_sigma) {
        return conditional_entropy_bits(sq, sq_min, std::exp(log_sigma));
    };

    int iterations = 0;
    while (entropy_at(log_lo) > target && iterations < kMaxSigmaIterations) {
        log_lo -= std::log(10.0);
        ++iterations;
    }
    while (entropy_at(log_hi) < target && iterations < kMaxSigmaIterations) {
        log_hi += std::log(10.0);
        ++iterations;
    }

    double log_sigma = 0.5 * (log_lo + log_hi);
    double h = entropy_at(log_sigma);
    for (; iterations < kMaxSigmaIterations; ++iterations) {
        if (std::abs(h - target) < kEntropyTolerance) return std::exp(log_sigma);
        if (h > target) {
            log_hi = log_sigma;
        } else {
            log_lo = log_sigma;
        }
        log_sigma = 0.5 * (log_lo + log_hi);
        h = entropy_at(log_sigma);
    }
    if (std::abs(h - target) < kEntropyTolerance) return std::exp(log_sigma);
    throw NumericError("perplexity search did not converge: entropy " + std::to_string(h) +
                       " bits, target " + std::to_string(target));
}

Matrix joint_probabilities(const Matrix& x, double perplexity) {
    const std::size_t n = x.rows();
    if (n < 3) throw UsageError("joint probabilities need at least 3 points");

    std::vector<double> cond(n * n, 0.0);
    std::vector<double> row(n - 1);
    std::vector<double> p_row(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0, k = 0; j < n; ++j) {
            if (j != i) row[k++] = euclidean_distance(x.row(i), x.row(j));
        }
        conditional_row(row, perplexity_sigma(row, perplexity), p_row);
        for (std::size_t j = 0, k = 0; j < n; ++j) {
            if (j != i) cond[i * n + j] = p_row[k++];
        }
    }

    std::vector<double> joint(n * n, 0.0);
    const double denom = 2.0 * static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i != j) joint[i * n + j] = (cond[i * n + j] + cond[j * n + i]) / denom;
        }
    }
    return Matrix(n, n, std::move(joint));
}

Matrix student_t_affinities(const Matrix& y) {
    const std::size_t n = y.rows();
    if (n < 2) throw UsageError("affinities need at least 2 points");
    std::vector<double> w(n * n, 0.0);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            w[i * n + j] = 1.0 / (1.0 + squared_distance(y.row(i), y.row(j)));
            total += w[i * n + j];
        }
    }
    for (double& v : w) v /= total;
    return Matrix(n, n, std::move(w));
}

double kl_divergence(const Matrix& p, const Matrix& q) {
    if (p.rows() != q.rows() || p.cols() != q.cols() || p.rows() != p.cols()) {
        throw DataError("KL divergence needs square matrices of equal size");
    }
    double kl = 0.0;
    for (std::size_t i = 0; i < p.rows(); ++i) {
        for (std::size_t j = 0; j < p.cols(); ++j) {
            if (i == j || p(i, j) <= 0.0) continue;
            kl += p(i, j) * std::log(p(i, j) / q(i, j));
        }
    }
    return kl;
}

double kl_with_sample(const Matrix& x_train, const Matrix& y_train, PointView x_new,
                      PointView y_new, double perplexity) {
    if (x_train.rows() != y_train.rows()) {
        throw DataError("KL: x and y training row counts differ");
    }
    const Matrix x = x_train.with_row(x_new);
    const Matrix y = y_train.with_row(y_new);
    return kl_divergence(joint_probabilities(x, perplexity), student_t_affinities(y));
}

EvalReport run_attribution_test(LionModel& model, const Matrix& x_test,
                                std::span<const Label> labels_test,
                                std::span<const Label> labels_train,
                                const EvalOptions& options) {
    const Matrix& y_train = model.y_train();
    if (labels_test.size() != x_test.rows()) {
        throw DataError("got " + std::to_string(labels_test.size()) + " test labels for " +
                        std::to_string(x_test.rows()) + " test samples");
    }
    if (labels_train.size() != y_train.rows()) {
        throw DataError("got " + std::to_string(labels_train.size()) + " training labels for " +
                        std::to_string(y_train.rows()) + " training samples");
    }

    const std::vector<MapOutcome> outcomes = model.map_batch(x_test, options.seed);
    const std::vector<double> d_nn = NeighborIndex(y_train).nn_distances();

    EvalReport report;
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
        SampleMetrics s = score_placement(outcomes[i], d_nn, y_train);
        s.accuracy = knn_accuracy(y_train, labels_train, s.y, labels_test[i], options.k);
        const std::size_t closest = model.x_index().knn_query(x_test.row(i), 1).front();
        s.baseline = knn_accuracy(y_train, labels_train, y_train.row(closest), labels_test[i],
                                  options.k);
        if (options.compute_kl) {
            s.kl = kl_with_sample(model.x_train(), y_train, x_test.row(i), s.y,
                                  options.perplexity);
        }
        if (s.kind != OutcomeKind::OutlierPlaced) ++report.non_outlier_count;
        report.per_sample.push_back(std::move(s));
    }
    summarize(report);
    return report;
}

EvalReport run_outlier_test(LionModel& model, const Matrix& x_out, const EvalOptions& options) {
    const Matrix& y_train = model.y_train();
    const std::vector<MapOutcome> outcomes = model.map_batch(x_out, options.seed);
    const std::vector<double> d_nn = NeighborIndex(y_train).nn_distances();

    EvalReport report;
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
        SampleMetrics s = score_placement(outcomes[i], d_nn, y_train);
        if (options.compute_kl) {
            s.kl = kl_with_sample(model.x_train(), y_train, x_out.row(i), s.y,
                                  options.perplexity);
        }
        if (s.kind != OutcomeKind::OutlierPlaced) ++report.non_outlier_count;
        report.per_sample.push_back(std::move(s));
    }
    summarize(report);
    return report;
}

}  // namespace lion
