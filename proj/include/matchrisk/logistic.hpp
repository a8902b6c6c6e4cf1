// Copyright 2026 The matchrisk Authors. Apache 2.0 licensed. See LICENSE in the project root.

#pragma once

#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "matchrisk/similarity.hpp"
#include "matchrisk/types.hpp"

namespace matchrisk {

/// Per-channel logistic weights plus the standardization statistics frozen
/// at fit time; evaluation inputs are standardized with the training mean
/// and std, never their own.
struct WeightVector {
    std::vector<std::string> channel_names;  // sorted; defines feature order
    Eigen::VectorXd weights;                 // aligned with channel_names
    double bias = 0.0;
    Eigen::VectorXd feature_mean;
    Eigen::VectorXd feature_std;

    double weight_of(const std::string& channel) const;
};

/// Labeled per-channel similarity rows; missing entries must already be
/// imputed.
struct TrainingMatrix {
    std::vector<std::string> channel_names;  // column order
    Eigen::MatrixXd features;                // rows x channels
    Eigen::VectorXd labels;                  // 1 coupled, 0 uncoupled
};

struct LogisticConfig {
    double learning_rate = 0.1;
    int epochs = 2000;
    double l2 = 1e-4;
    uint64_t seed = 0;  // fitting is full batch and deterministic; kept for config echo
};

struct FitDiagnostics {
    std::vector<double> loss_per_epoch;
    double final_loss = 0.0;
    double train_accuracy = 0.0;
};

/// Full-batch gradient descent on the L2-regularized mean negative
/// log-likelihood, with step halving so the loss is non-increasing across
/// epochs. Deterministic for a fixed input.
WeightVector fit_logistic(const TrainingMatrix& data, const LogisticConfig& config = {},
                          FitDiagnostics* diagnostics = nullptr);

/// sigmoid(bias + sum_c w_c * standardized(s_c)). Throws MissingChannel when
/// the input lacks a channel the model was trained on.
double combined_similarity(const std::map<std::string, double>& channels, const WeightVector& w);

// ---------------------------------------------------------------------------
// Similarity-matrix assembly
// ---------------------------------------------------------------------------

struct SimilarityContext {
    const NameGenderTable* name_db = nullptr;  // defaults to the builtin table
    const Graph* aux_graph = nullptr;
    const Graph* target_graph = nullptr;
    double location_lambda_km = kDefaultLocationLambdaKm;
    double activity_horizon_s = kDefaultActivityHorizonS;
    int degree_vector_length = kDefaultDegreeVectorLength;
    int degree_bin_size = kDefaultDegreeBinSize;
};

// Native channel names; external channels keep the names of their files.
extern const std::vector<std::string> kNativeChannels;

/// Per-channel similarity values for one profile pair; nullopt = missing.
std::map<std::string, std::optional<double>> native_channel_values(const UserProfile& aux,
                                                                   const UserProfile& target,
                                                                   const SimilarityContext& ctx);

/// Build the N x M combined similarity matrix over the given profiles,
/// imputing missing channels from the training statistics. Rows parallelize
/// across workers with output independent of the worker count.
SimilarityMatrix build_similarity_matrix(
    const std::vector<UserProfile>& aux, const std::vector<UserProfile>& target,
    const WeightVector& w,
    const std::map<std::string, std::vector<ChannelTriplet>>& external_channels,
    const ChannelStats& stats, const SimilarityContext& ctx, int workers = 1);

}  // namespace matchrisk
