// Copyright 2026 The matchrisk Authors. Apache 2.0 licensed. See LICENSE in the project root.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace matchrisk {

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define MATCHRISK_DEFINE_ERROR(Name)                                           \
    class Name : public Error {                                                \
    public:                                                                    \
        explicit Name(const std::string& what) : Error(what) {}                \
    }

MATCHRISK_DEFINE_ERROR(MissingAttribute);
MATCHRISK_DEFINE_ERROR(UnknownNode);
MATCHRISK_DEFINE_ERROR(ShapeMismatch);
MATCHRISK_DEFINE_ERROR(InvalidChannelValue);
MATCHRISK_DEFINE_ERROR(UnknownUser);
MATCHRISK_DEFINE_ERROR(DegenerateTraining);
MATCHRISK_DEFINE_ERROR(InvalidFeature);
MATCHRISK_DEFINE_ERROR(MissingChannel);
MATCHRISK_DEFINE_ERROR(EmptyInput);
MATCHRISK_DEFINE_ERROR(TooLarge);
MATCHRISK_DEFINE_ERROR(EmptyGroundTruth);
MATCHRISK_DEFINE_ERROR(TraceUnavailable);
MATCHRISK_DEFINE_ERROR(InvalidConfig);
MATCHRISK_DEFINE_ERROR(IoError);

#undef MATCHRISK_DEFINE_ERROR

// ---------------------------------------------------------------------------
// Profiles
// ---------------------------------------------------------------------------

enum class NetworkTag : uint8_t { Auxiliary, Target };

enum class Gender : uint8_t { M, F, Unknown };

struct Coordinates {
    double lat_deg = 0.0;
    double lon_deg = 0.0;
};

/// One user's shared attributes. Empty optionals mean "not published",
/// which is distinct from a similarity of zero: missing attributes are
/// imputed downstream, zero is a legitimate score.
struct AttributeRecord {
    std::optional<std::string> name;
    std::optional<Coordinates> location;
    std::optional<Gender> gender;
    std::optional<std::vector<int64_t>> activity_times;  // epoch seconds, ascending
    std::optional<std::string> graph_node;               // node id in the network's edge list
    // Precomputed per-pair channels (photo, freetext, interest, sentiment)
    // are keyed by channel name; the flag records that this user takes part
    // in the channel at all.
    std::map<std::string, bool> external_channels;
};

struct UserProfile {
    std::string user_id;
    NetworkTag network_tag = NetworkTag::Auxiliary;
    AttributeRecord attributes;
};

// ---------------------------------------------------------------------------
// Similarity matrix
// ---------------------------------------------------------------------------

/// The N x M combined similarity matrix plus the per-channel components it
/// was assembled from. Rows are auxiliary users, columns target users, both
/// in sorted-id order so that indices are reproducible across runs.
struct SimilarityMatrix {
    std::vector<std::string> aux_ids;     // size N, sorted
    std::vector<std::string> target_ids;  // size M, sorted
    Eigen::MatrixXd combined;             // N x M, entries in [0, 1]

    // Per-channel raw components and their observation masks. mask(i,j) != 0
    // means the value was observed; 0 means missing (imputed in `combined`).
    std::map<std::string, Eigen::MatrixXd> per_channel;
    std::map<std::string, Eigen::Matrix<uint8_t, Eigen::Dynamic, Eigen::Dynamic>> channel_mask;

    Eigen::Index n_aux() const { return combined.rows(); }
    Eigen::Index m_target() const { return combined.cols(); }
};

// ---------------------------------------------------------------------------
// Ground truth and splits
// ---------------------------------------------------------------------------

using IdPair = std::pair<std::string, std::string>;  // (aux_id, target_id)

/// Coupled profile pairs: cross-network pairs belonging to the same
/// individual. One-to-one by construction; every other cross pair is
/// implicitly uncoupled.
struct CouplingGroundTruth {
    std::vector<IdPair> pairs;

    bool contains(const std::string& aux_id, const std::string& target_id) const {
        for (const auto& p : pairs)
            if (p.first == aux_id && p.second == target_id) return true;
        return false;
    }
};

struct DatasetSplit {
    std::vector<IdPair> train_coupled;
    std::vector<IdPair> train_uncoupled;
    std::vector<std::string> eval_aux;
    std::vector<std::string> eval_target;
};

// ---------------------------------------------------------------------------
// Match sets
// ---------------------------------------------------------------------------

struct Match {
    std::string aux_id;
    std::string target_id;
    double score = 0.0;  // marginal for BP, similarity for assignment solvers
};

struct MatchSet {
    std::vector<Match> matches;
};

}  // namespace matchrisk
