// Copyright 2026 The matchrisk Authors. Apache 2.0 licensed. See LICENSE in the project root.

#include "matchrisk/logistic.hpp"

#include <algorithm>
#include <cmath>

#include "matchrisk/math.hpp"
#include "matchrisk/parallel.hpp"

namespace matchrisk {

const std::vector<std::string> kNativeChannels = {"activity", "gender", "graph", "location",
                                                  "name"};

double WeightVector::weight_of(const std::string& channel) const {
    for (size_t i = 0; i < channel_names.size(); ++i) {
        if (channel_names[i] == channel) return weights[static_cast<Eigen::Index>(i)];
    }
    throw MissingChannel("model has no channel " + channel);
}

namespace {

// Mean negative log-likelihood plus L2 penalty on the weights (bias
// unregularized). Uses log1pexp, so saturated logits stay finite.
double logistic_loss(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                     const Eigen::VectorXd& w, double bias, double l2) {
    const Eigen::VectorXd z = (x * w).array() + bias;
    double nll = 0.0;
    for (Eigen::Index i = 0; i < z.size(); ++i) {
        // -log p(y_i | x_i) = log(1 + exp(z)) - y*z
        nll += log1pexp(z[i]) - y[i] * z[i];
    }
    nll /= static_cast<double>(z.size());
    return nll + 0.5 * l2 * w.squaredNorm();
}

}  // namespace

WeightVector fit_logistic(const TrainingMatrix& data, const LogisticConfig& config,
                          FitDiagnostics* diagnostics) {
    const Eigen::Index rows = data.features.rows();
    const Eigen::Index cols = data.features.cols();
    if (rows < 2) throw DegenerateTraining("need at least 2 training rows");
    if (static_cast<size_t>(cols) != data.channel_names.size()) {
        throw ShapeMismatch("feature columns do not match channel names");
    }
    if (!data.features.allFinite() || !data.labels.allFinite()) {
        throw InvalidFeature("non-finite training value");
    }
    const double positives = data.labels.sum();
    if (positives == 0.0 || positives == static_cast<double>(rows)) {
        throw DegenerateTraining("training data contains a single label");
    }

    // Standardize with the training statistics; they are frozen into the
    // model so evaluation uses them too.
    Eigen::VectorXd mean = data.features.colwise().mean();
    Eigen::VectorXd stddev(cols);
    for (Eigen::Index c = 0; c < cols; ++c) {
        const double var =
            (data.features.col(c).array() - mean[c]).square().sum() / static_cast<double>(rows);
        stddev[c] = var > 0.0 ? std::sqrt(var) : 1.0;
    }
    Eigen::MatrixXd x = (data.features.rowwise() - mean.transpose()).array().rowwise() /
                        stddev.transpose().array();

    Eigen::VectorXd w = Eigen::VectorXd::Zero(cols);
    double bias = 0.0;
    double loss = logistic_loss(x, data.labels, w, bias, config.l2);
    if (diagnostics) diagnostics->loss_per_epoch.reserve(config.epochs);

    const double inv_rows = 1.0 / static_cast<double>(rows);
    for (int epoch = 0; epoch < config.epochs; ++epoch) {
        Eigen::VectorXd z = (x * w).array() + bias;
        Eigen::VectorXd p(rows);
        for (Eigen::Index i = 0; i < rows; ++i) p[i] = sigmoid(z[i]);
        const Eigen::VectorXd residual = p - data.labels;
        const Eigen::VectorXd grad_w = x.transpose() * residual * inv_rows + config.l2 * w;
        const double grad_b = residual.sum() * inv_rows;

        // Halve the step until the loss does not increase; keeps the loss
        // trajectory monotone without destroying determinism.
        double step = config.learning_rate;
        Eigen::VectorXd w_next;
        double bias_next, loss_next;
        for (;;) {
            w_next = w - step * grad_w;
            bias_next = bias - step * grad_b;
            loss_next = logistic_loss(x, data.labels, w_next, bias_next, config.l2);
            if (loss_next <= loss || step < 1e-12) break;
            step *= 0.5;
        }
        if (loss_next > loss) break;  // no descent direction left
        w = std::move(w_next);
        bias = bias_next;
        loss = loss_next;
        if (diagnostics) diagnostics->loss_per_epoch.push_back(loss);
    }

    if (diagnostics) {
        diagnostics->final_loss = loss;
        long correct = 0;
        const Eigen::VectorXd z = (x * w).array() + bias;
        for (Eigen::Index i = 0; i < rows; ++i) {
            const double p = sigmoid(z[i]);
            if ((p >= 0.5) == (data.labels[i] >= 0.5)) ++correct;
        }
        diagnostics->train_accuracy = static_cast<double>(correct) / static_cast<double>(rows);
    }

    WeightVector result;
    result.channel_names = data.channel_names;
    result.weights = std::move(w);
    result.bias = bias;
    result.feature_mean = std::move(mean);
    result.feature_std = std::move(stddev);
    return result;
}

double combined_similarity(const std::map<std::string, double>& channels, const WeightVector& w) {
    double z = w.bias;
    for (size_t c = 0; c < w.channel_names.size(); ++c) {
        const auto it = channels.find(w.channel_names[c]);
        if (it == channels.end()) {
            throw MissingChannel("input lacks channel " + w.channel_names[c]);
        }
        const auto ci = static_cast<Eigen::Index>(c);
        z += w.weights[ci] * (it->second - w.feature_mean[ci]) / w.feature_std[ci];
    }
    return sigmoid(z);
}

std::map<std::string, std::optional<double>> native_channel_values(const UserProfile& aux,
                                                                   const UserProfile& target,
                                                                   const SimilarityContext& ctx) {
    const NameGenderTable& db = ctx.name_db ? *ctx.name_db : NameGenderTable::builtin();
    std::map<std::string, std::optional<double>> out;
    out["name"] = try_name_similarity(aux.attributes, target.attributes);
    out["location"] =
        try_location_similarity(aux.attributes, target.attributes, ctx.location_lambda_km);
    out["gender"] = try_gender_similarity(aux.attributes, target.attributes, db);
    out["activity"] =
        try_activity_similarity(aux.attributes, target.attributes, ctx.activity_horizon_s);

    std::optional<double> graph_sim;
    if (aux.attributes.graph_node && target.attributes.graph_node && ctx.aux_graph &&
        ctx.target_graph && ctx.aux_graph->has_node(*aux.attributes.graph_node) &&
        ctx.target_graph->has_node(*target.attributes.graph_node)) {
        const auto fa = degree_features(*ctx.aux_graph, *aux.attributes.graph_node,
                                        ctx.degree_vector_length, ctx.degree_bin_size);
        const auto fb = degree_features(*ctx.target_graph, *target.attributes.graph_node,
                                        ctx.degree_vector_length, ctx.degree_bin_size);
        graph_sim = graph_similarity(fa, fb);
    }
    out["graph"] = graph_sim;
    return out;
}

SimilarityMatrix build_similarity_matrix(
    const std::vector<UserProfile>& aux, const std::vector<UserProfile>& target,
    const WeightVector& w,
    const std::map<std::string, std::vector<ChannelTriplet>>& external_channels,
    const ChannelStats& stats, const SimilarityContext& ctx, int workers) {
    if (aux.empty() || target.empty()) throw EmptyInput("no profiles to compare");

    SimilarityMatrix r;
    r.aux_ids.reserve(aux.size());
    r.target_ids.reserve(target.size());
    for (const auto& p : aux) r.aux_ids.push_back(p.user_id);
    for (const auto& p : target) r.target_ids.push_back(p.user_id);

    const Eigen::Index n = static_cast<Eigen::Index>(aux.size());
    const Eigen::Index m = static_cast<Eigen::Index>(target.size());
    r.combined.resize(n, m);

    // External channel components over this id universe.
    for (const auto& [channel, triplets] : external_channels) {
        auto [values, mask] =
            load_external_channel(triplets, r.aux_ids, r.target_ids, /*ignore_unlisted=*/true);
        r.per_channel[channel] = std::move(values);
        r.channel_mask[channel] = std::move(mask);
    }

    // Native channel components.
    for (const auto& channel : kNativeChannels) {
        r.per_channel[channel] = Eigen::MatrixXd::Zero(n, m);
        r.channel_mask[channel] =
            Eigen::Matrix<uint8_t, Eigen::Dynamic, Eigen::Dynamic>::Zero(n, m);
    }

    // The degree features of each node never change across pairs.
    const NameGenderTable& db = ctx.name_db ? *ctx.name_db : NameGenderTable::builtin();
    SimilarityContext local = ctx;
    local.name_db = &db;

    std::vector<std::optional<DegreeFeatureVector>> aux_features(aux.size());
    std::vector<std::optional<DegreeFeatureVector>> target_features(target.size());
    if (ctx.aux_graph) {
        for (size_t i = 0; i < aux.size(); ++i) {
            const auto& node = aux[i].attributes.graph_node;
            if (node && ctx.aux_graph->has_node(*node)) {
                aux_features[i] = degree_features(*ctx.aux_graph, *node,
                                                  ctx.degree_vector_length, ctx.degree_bin_size);
            }
        }
    }
    if (ctx.target_graph) {
        for (size_t j = 0; j < target.size(); ++j) {
            const auto& node = target[j].attributes.graph_node;
            if (node && ctx.target_graph->has_node(*node)) {
                target_features[j] = degree_features(*ctx.target_graph, *node,
                                                     ctx.degree_vector_length, ctx.degree_bin_size);
            }
        }
    }

    // Imputation values are fixed per channel, so resolve them once.
    std::map<std::string, double> imputed;
    for (const auto& channel : w.channel_names) imputed[channel] = impute_missing(stats, channel);

    parallel_for(0, aux.size(), workers, [&](size_t i) {
        std::map<std::string, double> row_values;
        for (Eigen::Index j = 0; j < m; ++j) {
            row_values.clear();
            // native channels
            const auto& pa = aux[i];
            const auto& pt = target[static_cast<size_t>(j)];
            std::map<std::string, std::optional<double>> native;
            native["name"] = try_name_similarity(pa.attributes, pt.attributes);
            native["location"] =
                try_location_similarity(pa.attributes, pt.attributes, local.location_lambda_km);
            native["gender"] = try_gender_similarity(pa.attributes, pt.attributes, db);
            native["activity"] =
                try_activity_similarity(pa.attributes, pt.attributes, local.activity_horizon_s);
            if (aux_features[i] && target_features[static_cast<size_t>(j)]) {
                native["graph"] =
                    graph_similarity(*aux_features[i], *target_features[static_cast<size_t>(j)]);
            } else {
                native["graph"] = std::nullopt;
            }

            const auto ii = static_cast<Eigen::Index>(i);
            for (const auto& [channel, value] : native) {
                if (value) {
                    r.per_channel[channel](ii, j) = *value;
                    r.channel_mask[channel](ii, j) = 1;
                }
            }

            for (const auto& channel : w.channel_names) {
                const auto nat = native.find(channel);
                if (nat != native.end()) {
                    row_values[channel] = nat->second ? *nat->second : imputed[channel];
                    continue;
                }
                const auto ext = r.per_channel.find(channel);
                if (ext != r.per_channel.end() && r.channel_mask[channel](ii, j)) {
                    row_values[channel] = ext->second(ii, j);
                } else {
                    row_values[channel] = imputed[channel];
                }
            }
            r.combined(ii, j) = combined_similarity(row_values, w);
        }
    });

    return r;
}

}  // namespace matchrisk
