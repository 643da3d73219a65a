#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lion/engine.hpp"
#include "lion/matrix.hpp"

namespace lion {

using Label = std::string;

/// Fraction of the k nearest training embeddings of `y_new` whose label
/// equals `label_new`.
double knn_accuracy(const Matrix& y_train, std::span<const Label> labels, PointView y_new,
                    const Label& label_new, std::size_t k = 10);

/// Percentile rank of the new sample's nearest-training distance within the
/// nearest-neighbor distance distribution of the training embedding.
double nn_distance_percentile(std::span<const double> d_nn, PointView y_new,
                              const Matrix& y_train);

/// Gaussian bandwidth sigma such that the conditional distribution
/// p_j ~ exp(-d_j^2 / (2 sigma^2)) has perplexity `perplexity` (entropy
/// within 1e-5 bits). `dist_row` holds distances to the other points.
double perplexity_sigma(std::span<const double> dist_row, double perplexity);

/// Symmetrized tSNE input affinities p_ij = (p_j|i + p_i|j) / (2n).
Matrix joint_probabilities(const Matrix& x, double perplexity);

/// Student-t output affinities q_ij ~ (1 + ||y_i - y_j||^2)^-1, normalized.
Matrix student_t_affinities(const Matrix& y);

/// sum_{i != j} p_ij log(p_ij / q_ij), zero-probability terms dropped.
double kl_divergence(const Matrix& p, const Matrix& q);

/// KL divergence of the (N+1)-point problem with (x_new, y_new) appended.
double kl_with_sample(const Matrix& x_train, const Matrix& y_train, PointView x_new,
                      PointView y_new, double perplexity = 30.0);

struct SampleMetrics {
    OutcomeKind kind = OutcomeKind::Interpolated;
    Point y;
    double nn_distance = 0.0;             // to the nearest training embedding
    double distance_percentile = 0.0;     // in [0, 100]
    std::optional<double> accuracy;       // attribution test only
    std::optional<double> baseline;       // attribution test only
    std::optional<double> kl;             // when requested
};

struct EvalReport {
    std::vector<SampleMetrics> per_sample;
    std::optional<double> mean_accuracy;
    std::optional<double> baseline_accuracy;
    double mean_distance_percentile = 0.0;
    double mean_nn_distance = 0.0;
    std::optional<double> mean_kl;
    /// Outlier test: samples the model did not treat as outliers.
    std::size_t non_outlier_count = 0;
};

struct EvalOptions {
    std::size_t k = 10;
    bool compute_kl = false;
    double perplexity = 30.0;
    std::uint64_t seed = 0;
};

/// Maps the test batch and scores each sample by k-NN label accuracy,
/// nearest-neighbor distance percentile and optionally KL divergence.
/// The baseline of a test sample is the k-NN accuracy at the embedding of
/// its closest training sample (in x-space), that sample counted among its
/// own neighbors.
EvalReport run_attribution_test(LionModel& model, const Matrix& x_test,
                                std::span<const Label> labels_test,
                                std::span<const Label> labels_train,
                                const EvalOptions& options = {});

/// Maps a batch of presumed outliers and scores the distance percentile.
EvalReport run_outlier_test(LionModel& model, const Matrix& x_out,
                            const EvalOptions& options = {});

}  // namespace lion
