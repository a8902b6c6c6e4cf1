// Copyright 2026 The matchrisk Authors. Apache 2.0 licensed. See LICENSE in the project root.

#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "matchrisk/text.hpp"
#include "matchrisk/types.hpp"

namespace matchrisk {

// ---------------------------------------------------------------------------
// Graphs
// ---------------------------------------------------------------------------

/// Undirected simple graph over string node ids. Nodes can be registered
/// without edges so that an isolated user is distinguishable from an unknown
/// one.
class Graph {
public:
    int add_node(const std::string& id);
    void add_edge(const std::string& u, const std::string& v);

    bool has_node(const std::string& id) const { return index_.count(id) != 0; }
    std::optional<int> node_index(const std::string& id) const;
    int degree(int node) const { return static_cast<int>(adjacency_[node].size()); }
    const std::vector<int>& neighbors(int node) const { return adjacency_[node]; }
    size_t node_count() const { return adjacency_.size(); }
    size_t edge_count() const { return edge_count_; }

    static Graph from_edge_list(const std::vector<std::pair<std::string, std::string>>& edges);

private:
    std::map<std::string, int> index_;
    std::vector<std::vector<int>> adjacency_;
    size_t edge_count_ = 0;
};

// ---------------------------------------------------------------------------
// Degree features
// ---------------------------------------------------------------------------

/// Histogram of neighbor degrees: counts[k] is the number of neighbors with
/// degree in the half-open range [k*b, (k+1)*b); degrees past the last bin
/// overflow into it, so the counts always sum to the node's degree.
struct DegreeFeatureVector {
    Eigen::VectorXd counts;
    int bin_size = 15;

    int length() const { return static_cast<int>(counts.size()); }
};

constexpr int kDefaultDegreeVectorLength = 70;
constexpr int kDefaultDegreeBinSize = 15;

DegreeFeatureVector degree_features(const Graph& graph, const std::string& node,
                                    int length = kDefaultDegreeVectorLength,
                                    int bin_size = kDefaultDegreeBinSize);

double graph_similarity(const DegreeFeatureVector& a, const DegreeFeatureVector& b);

// ---------------------------------------------------------------------------
// Attribute similarities
// ---------------------------------------------------------------------------

constexpr double kDefaultLocationLambdaKm = 100.0;
constexpr double kDefaultActivityHorizonS = 86400.0;

/// 1 - editdistance / max length over Unicode scalars, after case folding
/// and whitespace trim. Throws MissingAttribute when either side is empty.
double name_similarity(std::string_view a, std::string_view b);

/// exp(-d / lambda) with d the great-circle distance in km.
double location_similarity(const Coordinates& a, const Coordinates& b,
                           double lambda_km = kDefaultLocationLambdaKm);

/// Known genders compare exactly; unknown ones become (p_male, p_female)
/// vectors inferred from the first token of the user name, and the score is
/// the probability both genders agree.
double gender_similarity(const AttributeRecord& a, const AttributeRecord& b,
                         const NameGenderTable& name_db);

/// Greedily pairs the min(|a|,|b|) cross pairs with the smallest absolute
/// time difference (each timestamp used at most once; ties broken by earlier
/// a then earlier b timestamp), then maps the mean difference through the
/// horizon: 1 - clamp(mean/H, 0, 1).
double activity_similarity(std::span<const int64_t> a, std::span<const int64_t> b,
                           double horizon_s = kDefaultActivityHorizonS);

// Optional-returning variants for pipeline assembly: missing attributes are
// nullopt instead of exceptions so imputation can be applied in bulk.
std::optional<double> try_name_similarity(const AttributeRecord& a, const AttributeRecord& b);
std::optional<double> try_location_similarity(const AttributeRecord& a, const AttributeRecord& b,
                                              double lambda_km);
std::optional<double> try_gender_similarity(const AttributeRecord& a, const AttributeRecord& b,
                                            const NameGenderTable& name_db);
std::optional<double> try_activity_similarity(const AttributeRecord& a, const AttributeRecord& b,
                                              double horizon_s);

// ---------------------------------------------------------------------------
// External channels
// ---------------------------------------------------------------------------

struct ChannelTriplet {
    std::string aux_id;
    std::string target_id;
    double similarity = 0.0;
};

/// Assemble per-pair triplets into a component matrix over the given id
/// universe. Values outside [0, 1] raise InvalidChannelValue; ids outside
/// the universe raise UnknownUser unless ignore_unlisted is set (the
/// pipeline sets it when a channel file also covers training pairs).
std::pair<Eigen::MatrixXd, Eigen::Matrix<uint8_t, Eigen::Dynamic, Eigen::Dynamic>>
load_external_channel(const std::vector<ChannelTriplet>& triplets,
                      const std::vector<std::string>& aux_ids,
                      const std::vector<std::string>& target_ids,
                      bool ignore_unlisted = false);

// ---------------------------------------------------------------------------
// Channel statistics and imputation
// ---------------------------------------------------------------------------

constexpr int kChannelHistogramBins = 100;

/// Empirical distribution of observed similarity values per channel over the
/// pooled (coupled and uncoupled) training pairs. Drives imputation of
/// missing attributes.
class ChannelStats {
public:
    void add(const std::string& channel, double value);

    bool has(const std::string& channel) const;
    size_t observations(const std::string& channel) const;
    double mean(const std::string& channel) const;

    /// Normalized 100-bin histogram over [0, 1]; mass sums to 1.
    Eigen::VectorXd histogram(const std::string& channel) const;

    std::vector<std::string> channel_names() const;

private:
    struct Accum {
        Eigen::VectorXd bins = Eigen::VectorXd::Zero(kChannelHistogramBins);
        double sum = 0.0;
        size_t count = 0;
    };
    std::map<std::string, Accum> channels_;
};

/// Pooled-distribution mean for the channel; unseen channels fall back to
/// 0.5 with a warning on stderr.
double impute_missing(const ChannelStats& stats, const std::string& channel);

}  // namespace matchrisk
