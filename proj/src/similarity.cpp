// Copyright 2026 The matchrisk Authors. Apache 2.0 licensed. See LICENSE in the project root.

#include "matchrisk/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <mutex>
#include <set>

#include "matchrisk/math.hpp"

namespace matchrisk {

// ---------------------------------------------------------------------------
// Graph
// ---------------------------------------------------------------------------

int Graph::add_node(const std::string& id) {
    const auto it = index_.find(id);
    if (it != index_.end()) return it->second;
    const int idx = static_cast<int>(adjacency_.size());
    index_.emplace(id, idx);
    adjacency_.emplace_back();
    return idx;
}

void Graph::add_edge(const std::string& u, const std::string& v) {
    const int a = add_node(u);
    const int b = add_node(v);
    if (a == b) return;
    // keep the graph simple
    for (const int n : adjacency_[a])
        if (n == b) return;
    adjacency_[a].push_back(b);
    adjacency_[b].push_back(a);
    ++edge_count_;
}

std::optional<int> Graph::node_index(const std::string& id) const {
    const auto it = index_.find(id);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

Graph Graph::from_edge_list(const std::vector<std::pair<std::string, std::string>>& edges) {
    Graph g;
    for (const auto& [u, v] : edges) g.add_edge(u, v);
    return g;
}

// ---------------------------------------------------------------------------
// Degree features
// ---------------------------------------------------------------------------

DegreeFeatureVector degree_features(const Graph& graph, const std::string& node, int length,
                                    int bin_size) {
    const auto idx = graph.node_index(node);
    if (!idx) throw UnknownNode("degree_features: unknown node " + node);
    DegreeFeatureVector f;
    f.counts = Eigen::VectorXd::Zero(length);
    f.bin_size = bin_size;
    for (const int neighbor : graph.neighbors(*idx)) {
        int bin = graph.degree(neighbor) / bin_size;
        if (bin >= length) bin = length - 1;  // overflow into the last bin
        f.counts[bin] += 1.0;
    }
    return f;
}

double graph_similarity(const DegreeFeatureVector& a, const DegreeFeatureVector& b) {
    if (a.length() != b.length() || a.bin_size != b.bin_size) {
        throw ShapeMismatch("graph_similarity: feature vectors disagree on length or bin size");
    }
    return cosine_similarity(a.counts, b.counts);
}

// ---------------------------------------------------------------------------
// Attribute similarities
// ---------------------------------------------------------------------------

double name_similarity(std::string_view a, std::string_view b) {
    const std::string fa = fold_name(a);
    const std::string fb = fold_name(b);
    if (fa.empty() || fb.empty()) throw MissingAttribute("name_similarity: empty name");
    const auto ua = utf8_decode(fa);
    const auto ub = utf8_decode(fb);
    const size_t dist = edit_distance({ua.data(), ua.size()}, {ub.data(), ub.size()});
    const size_t longest = std::max(ua.size(), ub.size());
    return 1.0 - static_cast<double>(dist) / static_cast<double>(longest);
}

double location_similarity(const Coordinates& a, const Coordinates& b, double lambda_km) {
    const double d = haversine_km(a.lat_deg, a.lon_deg, b.lat_deg, b.lon_deg);
    return std::exp(-d / lambda_km);
}

namespace {

// Gender as a probability vector (p_male, p_female).
std::optional<std::pair<double, double>> gender_vector(const AttributeRecord& rec,
                                                       const NameGenderTable& name_db) {
    if (rec.gender && *rec.gender != Gender::Unknown) {
        return *rec.gender == Gender::M ? std::make_pair(1.0, 0.0) : std::make_pair(0.0, 1.0);
    }
    if (!rec.name) return std::nullopt;
    return name_db.lookup(first_token(fold_name(*rec.name)));
}

}  // namespace

double gender_similarity(const AttributeRecord& a, const AttributeRecord& b,
                         const NameGenderTable& name_db) {
    const auto va = gender_vector(a, name_db);
    const auto vb = gender_vector(b, name_db);
    if (!va || !vb) throw MissingAttribute("gender_similarity: gender unknown and name unusable");
    return va->first * vb->first + va->second * vb->second;
}

double activity_similarity(std::span<const int64_t> a, std::span<const int64_t> b,
                           double horizon_s) {
    if (a.empty() || b.empty()) throw MissingAttribute("activity_similarity: empty event list");

    struct CrossPair {
        int64_t diff;
        int64_t ta;
        int64_t tb;
        size_t ia;
        size_t ib;
    };
    std::vector<CrossPair> cross;
    cross.reserve(a.size() * b.size());
    for (size_t i = 0; i < a.size(); ++i) {
        for (size_t j = 0; j < b.size(); ++j) {
            cross.push_back({std::abs(a[i] - b[j]), a[i], b[j], i, j});
        }
    }
    std::sort(cross.begin(), cross.end(), [](const CrossPair& x, const CrossPair& y) {
        if (x.diff != y.diff) return x.diff < y.diff;
        if (x.ta != y.ta) return x.ta < y.ta;
        return x.tb < y.tb;
    });

    const size_t m = std::min(a.size(), b.size());
    std::vector<char> used_a(a.size(), 0), used_b(b.size(), 0);
    size_t taken = 0;
    double total = 0.0;
    for (const auto& p : cross) {
        if (taken == m) break;
        if (used_a[p.ia] || used_b[p.ib]) continue;
        used_a[p.ia] = used_b[p.ib] = 1;
        total += static_cast<double>(p.diff);
        ++taken;
    }
    const double mean = total / static_cast<double>(m);
    return 1.0 - std::clamp(mean / horizon_s, 0.0, 1.0);
}

std::optional<double> try_name_similarity(const AttributeRecord& a, const AttributeRecord& b) {
    if (!a.name || !b.name) return std::nullopt;
    if (fold_name(*a.name).empty() || fold_name(*b.name).empty()) return std::nullopt;
    return name_similarity(*a.name, *b.name);
}

std::optional<double> try_location_similarity(const AttributeRecord& a, const AttributeRecord& b,
                                              double lambda_km) {
    if (!a.location || !b.location) return std::nullopt;
    return location_similarity(*a.location, *b.location, lambda_km);
}

std::optional<double> try_gender_similarity(const AttributeRecord& a, const AttributeRecord& b,
                                            const NameGenderTable& name_db) {
    const auto va = gender_vector(a, name_db);
    const auto vb = gender_vector(b, name_db);
    if (!va || !vb) return std::nullopt;
    return va->first * vb->first + va->second * vb->second;
}

std::optional<double> try_activity_similarity(const AttributeRecord& a, const AttributeRecord& b,
                                              double horizon_s) {
    if (!a.activity_times || !b.activity_times) return std::nullopt;
    if (a.activity_times->empty() || b.activity_times->empty()) return std::nullopt;
    return activity_similarity(*a.activity_times, *b.activity_times, horizon_s);
}

// ---------------------------------------------------------------------------
// External channels
// ---------------------------------------------------------------------------

std::pair<Eigen::MatrixXd, Eigen::Matrix<uint8_t, Eigen::Dynamic, Eigen::Dynamic>>
load_external_channel(const std::vector<ChannelTriplet>& triplets,
                      const std::vector<std::string>& aux_ids,
                      const std::vector<std::string>& target_ids, bool ignore_unlisted) {
    std::map<std::string, int> aux_index, target_index;
    for (size_t i = 0; i < aux_ids.size(); ++i) aux_index[aux_ids[i]] = static_cast<int>(i);
    for (size_t j = 0; j < target_ids.size(); ++j) target_index[target_ids[j]] = static_cast<int>(j);

    Eigen::MatrixXd values = Eigen::MatrixXd::Zero(aux_ids.size(), target_ids.size());
    Eigen::Matrix<uint8_t, Eigen::Dynamic, Eigen::Dynamic> mask =
        Eigen::Matrix<uint8_t, Eigen::Dynamic, Eigen::Dynamic>::Zero(aux_ids.size(),
                                                                     target_ids.size());
    for (const auto& t : triplets) {
        if (t.similarity < 0.0 || t.similarity > 1.0 || !std::isfinite(t.similarity)) {
            throw InvalidChannelValue("channel value out of [0,1]: " +
                                      std::to_string(t.similarity));
        }
        const auto ai = aux_index.find(t.aux_id);
        const auto ti = target_index.find(t.target_id);
        if (ai == aux_index.end() || ti == target_index.end()) {
            if (ignore_unlisted) continue;
            throw UnknownUser("channel references unknown user pair (" + t.aux_id + ", " +
                              t.target_id + ")");
        }
        values(ai->second, ti->second) = t.similarity;
        mask(ai->second, ti->second) = 1;
    }
    return {std::move(values), std::move(mask)};
}

// ---------------------------------------------------------------------------
// Channel statistics
// ---------------------------------------------------------------------------

void ChannelStats::add(const std::string& channel, double value) {
    auto& acc = channels_[channel];
    int bin = static_cast<int>(value * kChannelHistogramBins);
    bin = std::clamp(bin, 0, kChannelHistogramBins - 1);
    acc.bins[bin] += 1.0;
    acc.sum += value;
    acc.count += 1;
}

bool ChannelStats::has(const std::string& channel) const {
    const auto it = channels_.find(channel);
    return it != channels_.end() && it->second.count > 0;
}

size_t ChannelStats::observations(const std::string& channel) const {
    const auto it = channels_.find(channel);
    return it == channels_.end() ? 0 : it->second.count;
}

double ChannelStats::mean(const std::string& channel) const {
    const auto it = channels_.find(channel);
    if (it == channels_.end() || it->second.count == 0) {
        throw MissingChannel("no observations for channel " + channel);
    }
    return it->second.sum / static_cast<double>(it->second.count);
}

Eigen::VectorXd ChannelStats::histogram(const std::string& channel) const {
    const auto it = channels_.find(channel);
    if (it == channels_.end() || it->second.count == 0) {
        throw MissingChannel("no observations for channel " + channel);
    }
    return it->second.bins / static_cast<double>(it->second.count);
}

std::vector<std::string> ChannelStats::channel_names() const {
    std::vector<std::string> names;
    names.reserve(channels_.size());
    for (const auto& [name, acc] : channels_) {
        if (acc.count > 0) names.push_back(name);
    }
    return names;
}

double impute_missing(const ChannelStats& stats, const std::string& channel) {
    if (stats.has(channel)) return stats.mean(channel);
    static std::mutex warn_mutex;
    static std::set<std::string> warned;
    {
        std::lock_guard<std::mutex> lock(warn_mutex);
        if (warned.insert(channel).second) {
            std::cerr << "warning: channel '" << channel
                      << "' unseen in training, imputing 0.5\n";
        }
    }
    return 0.5;
}

}  // namespace matchrisk
