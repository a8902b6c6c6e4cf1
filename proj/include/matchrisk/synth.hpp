// Copyright 2026 The matchrisk Authors. Apache 2.0 licensed. See LICENSE in the project root.

#pragma once

#include <map>
#include <string>
#include <vector>

#include "matchrisk/similarity.hpp"
#include "matchrisk/types.hpp"

namespace matchrisk {

struct GraphModel {
    enum class Kind { PreferentialAttachment, ErdosRenyi };
    Kind kind = Kind::PreferentialAttachment;
    int pa_m = 6;       // edges added per joining node
    double er_p = 0.0;  // independent edge probability

    static GraphModel preferential_attachment(int m) { return {Kind::PreferentialAttachment, m, 0.0}; }
    static GraphModel erdos_renyi(double p) { return {Kind::ErdosRenyi, 2, p}; }
};

struct ChannelBetas {
    double coupled_alpha = 8.0;
    double coupled_beta = 2.0;
    double uncoupled_alpha = 2.0;
    double uncoupled_beta = 8.0;
};

struct SynthConfig {
    int n_users = 500;
    int n_target_users = -1;  // -1: same population in both views
    GraphModel graph_model;
    double vertex_overlap = 1.0;
    double edge_overlap = 0.9;

    // attribute noise between the two views of one persona
    double name_typo_rate = 0.05;
    double location_jitter_km = 20.0;
    double activity_offset_s = 3600.0;
    double gender_flip_rate = 0.03;
    int activity_events = 12;

    // Training pairs mirror how coupled profiles get harvested in practice
    // (verified cross-links, hence cleaner attributes); profiles of personas
    // outside the training split carry this noise multiplier.
    double eval_noise_multiplier = 6.5;

    // per-channel probability that a user does not share the attribute at
    // all; pair channels need both endpoints sharing
    std::map<std::string, double> missing_rate = {
        {"name", 0.05},  {"location", 0.10}, {"activity", 0.10},
        {"gender", 0.10}, {"photo", 0.20},   {"freetext", 0.20},
    };

    // Privacy-cautious users share far less across the board; their missing
    // rate is the per-channel maximum of missing_rate and private_missing.
    double private_user_fraction = 0.20;
    double private_missing = 0.75;

    // Personas cluster around city centers, so location similarity grades
    // smoothly instead of being a single spike per coupled pair.
    int n_cities = 40;
    double intra_city_km = 15.0;

    // external channels drawn from coupled/uncoupled Beta models
    std::map<std::string, ChannelBetas> channel_betas = {
        {"photo", {5.0, 2.5, 2.0, 5.0}},
        {"freetext", {4.0, 2.5, 2.2, 4.0}},
    };

    // training split carved out of the generated population; 0 disables
    int train_coupled = 0;
    int train_uncoupled = 0;
    int eval_users = -1;  // -1: everyone not used for training

    uint64_t seed = 1;
};

using EdgeList = std::vector<std::pair<int, int>>;

/// Simple undirected base graph from the configured model, deterministic
/// per seed. Preferential attachment grows from a two-node seed adding pa_m
/// distinct neighbors per join, so n nodes carry 1 + pa_m*(n-2) edges.
EdgeList generate_base_graph(const SynthConfig& cfg, uint64_t seed);

struct GraphViews {
    EdgeList aux_edges;
    EdgeList target_edges;
};

/// Two views of the base graph: each edge enters each view independently
/// with probability 2*ov/(1+ov), which makes the expected Jaccard edge
/// overlap equal ov.
GraphViews sample_views(const EdgeList& base, const SynthConfig& cfg, uint64_t seed);

/// A fully materialized synthetic dataset in the shapes the pipeline
/// consumes. Coupled pairs share a perturbed persona; ids are re-randomized
/// per view, so identity leaks only through structure and attributes.
struct SynthDataset {
    std::vector<UserProfile> aux_profiles;     // sorted by id
    std::vector<UserProfile> target_profiles;  // sorted by id
    std::vector<std::pair<std::string, std::string>> aux_edges;
    std::vector<std::pair<std::string, std::string>> target_edges;
    CouplingGroundTruth truth;
    DatasetSplit split;
    std::map<std::string, std::vector<ChannelTriplet>> channels;
};

SynthDataset generate_dataset(const SynthConfig& cfg);

}  // namespace matchrisk
