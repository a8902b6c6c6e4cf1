// Copyright 2026 The matchrisk Authors. Apache 2.0 licensed. See LICENSE in the project root.

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "matchrisk/evaluation.hpp"
#include "matchrisk/logistic.hpp"
#include "matchrisk/similarity.hpp"
#include "matchrisk/synth.hpp"
#include "matchrisk/types.hpp"

namespace matchrisk {

// All files are UTF-8, newline-terminated CSV with '#' comments. The first
// line is a header carrying the format version, the file kind, the hash of
// the generating config, and the hash of the dataset the file derives from;
// eval refuses to score a match set against a truth file whose dataset hash
// disagrees.

uint64_t fnv1a_hash(std::string_view text);
std::string hash_hex(uint64_t value);

struct FileHeader {
    std::string kind;
    std::string config_hash;
    std::string dataset_hash;
};

std::string format_header(const FileHeader& header);
FileHeader parse_header(const std::string& line, const std::string& expected_kind);

// --- dataset bundle ---------------------------------------------------------

/// A dataset directory: profiles.csv, activity.csv, edges.csv, truth.csv,
/// split.csv, channels.csv.
struct Dataset {
    std::vector<UserProfile> aux_profiles;     // sorted by id
    std::vector<UserProfile> target_profiles;  // sorted by id
    Graph aux_graph;
    Graph target_graph;
    CouplingGroundTruth truth;
    DatasetSplit split;
    std::map<std::string, std::vector<ChannelTriplet>> channels;
    std::string dataset_hash;
};

void save_dataset(const std::string& dir, const SynthDataset& data,
                  const std::string& config_hash);
Dataset load_dataset(const std::string& dir);

/// Invariant check over a loaded dataset: id uniqueness, coordinate ranges,
/// sorted activity, one-to-one truth, split disjointness, resolvable ids.
/// Violations are data, not failures.
std::vector<std::string> validate_dataset(const std::vector<UserProfile>& aux,
                                          const std::vector<UserProfile>& target,
                                          const CouplingGroundTruth& truth,
                                          const DatasetSplit& split);
std::vector<std::string> validate_dataset(const Dataset& data);

// --- single-file formats ------------------------------------------------------

void save_weights(const std::string& path, const WeightVector& w, const ChannelStats& stats,
                  const std::string& config_hash, const std::string& dataset_hash);
std::pair<WeightVector, ChannelStats> load_weights(const std::string& path,
                                                   std::string* dataset_hash = nullptr);

void save_matches(const std::string& path, const MatchSet& matches,
                  const std::string& config_hash, const std::string& dataset_hash);
MatchSet load_matches(const std::string& path, std::string* dataset_hash = nullptr);

void save_marginals(const std::string& path, const std::vector<TraceRow>& rows,
                    const std::string& config_hash, const std::string& dataset_hash);
void save_trace(const std::string& path, const std::vector<TraceRow>& rows,
                const std::string& config_hash, const std::string& dataset_hash);
std::vector<TraceRow> load_trace(const std::string& path, std::string* dataset_hash = nullptr);

void save_similarity(const std::string& path, const SimilarityMatrix& r,
                     const std::string& config_hash, const std::string& dataset_hash);
SimilarityMatrix load_similarity(const std::string& path, std::string* dataset_hash = nullptr);

// Formatting helpers shared by the writers (shortest round-trip floats).
std::string format_double(double value);

}  // namespace matchrisk
