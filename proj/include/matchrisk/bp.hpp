// Copyright 2026 The matchrisk Authors. Apache 2.0 licensed. See LICENSE in the project root.

#pragma once

#include <string>
#include <vector>

#include "matchrisk/factor_graph.hpp"
#include "matchrisk/types.hpp"

namespace matchrisk {

/// How the per-pair products of incoming messages are reported. Raw keeps
/// the product of the two (already per-factor-normalized) incoming messages,
/// which is exact on tree graphs; the other modes rescale so each target's
/// (or auxiliary's) candidate marginals sum to 1.
enum class MarginalNorm { Raw, PerTarget, PerAux };

MarginalNorm parse_marginal_norm(const std::string& text);
std::string to_string(MarginalNorm norm);

struct BpConfig {
    int max_iters = 200;
    double tol = 1e-6;
    double damping = 0.0;  // 0 = plain updates; (1-d)*new + d*old otherwise
    MarginalNorm marginal_norm = MarginalNorm::Raw;
    int workers = 1;
};

/// Converged per-pair match probabilities plus the per-iteration trace
/// needed by the sufficient-condition check. All vectors align with the
/// graph's variable order.
struct MarginalTable {
    std::vector<double> marginal;
    std::vector<double> iter1;
    std::vector<double> iter2;
    std::vector<double> max_delta_history;
    bool converged = false;
    int iterations_run = 0;
    uint64_t message_updates = 0;
};

/// Synchronous sum-product over the bipartite pair graph. Per iteration:
/// every variable relays the opposite factor's previous message, then every
/// factor emits S(pair) times the product of (1 - mu) over its other
/// neighbors, normalized so its outgoing messages sum to one. Stops when the
/// largest marginal change drops below tol.
MarginalTable run_bp(const FactorGraph& g, const BpConfig& config = {});

enum class MatchMode { OneToOne, PerTargetArgmax };

/// Threshold-gated matching from marginals. OneToOne greedily accepts pairs
/// in decreasing marginal order (ties by similarity, then index) while both
/// endpoints are free; PerTargetArgmax takes each target's best candidate.
MatchSet extract_matching(const FactorGraph& g, const MarginalTable& m, double threshold,
                          MatchMode mode = MatchMode::OneToOne);

struct RankedCandidate {
    std::string aux_id;
    double marginal = 0.0;
    double similarity = 0.0;
};

/// Auxiliary candidates of one target, best marginal first (targeted attack
/// view). Unknown targets raise UnknownUser; a fully pruned target yields an
/// empty list.
std::vector<RankedCandidate> targeted_rank(const FactorGraph& g, const MarginalTable& m,
                                           const std::string& target_id);

}  // namespace matchrisk
