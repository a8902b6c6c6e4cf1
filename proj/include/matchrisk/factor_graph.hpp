// Copyright 2026 The matchrisk Authors. Apache 2.0 licensed. See LICENSE in the project root.

#pragma once

#include <string>
#include <vector>

#include "matchrisk/types.hpp"

namespace matchrisk {

/// Candidate-pruning policy for the factor graph. Full keeps every pair;
/// the others cap each factor's candidate list at a per-factor budget
/// (ceil(sqrt(N)), ceil(log2(N)), or k, never below 1), and a pair survives
/// when it makes the cut for either of its endpoints.
struct PrunePolicy {
    enum class Kind { Full, Sqrt, Log, TopK };
    Kind kind = Kind::Full;
    int k = 1;

    static PrunePolicy full() { return {Kind::Full, 1}; }
    static PrunePolicy sqrt() { return {Kind::Sqrt, 1}; }
    static PrunePolicy log() { return {Kind::Log, 1}; }
    static PrunePolicy top_k(int k);

    /// "full" | "sqrt" | "log" | "topk:K"
    static PrunePolicy parse(const std::string& text);
    std::string to_string() const;

    int budget(int n_aux) const;
};

/// Bipartite factor graph over profile pairs: one auxiliary factor per row
/// of R, one target factor per column, one variable node per surviving pair.
/// Variables are ordered row-major by (aux, target) index, so the aux
/// adjacency lists are contiguous ranges.
struct FactorGraph {
    int n_aux = 0;
    int m_target = 0;
    std::vector<std::string> aux_ids;
    std::vector<std::string> target_ids;

    // per variable node
    std::vector<int> var_aux;
    std::vector<int> var_target;
    std::vector<double> var_sim;

    // CSR adjacency: variables of aux factor i are aux_vars[aux_offsets[i] ..
    // aux_offsets[i+1]), likewise for target factors.
    std::vector<int> aux_offsets;
    std::vector<int> aux_vars;
    std::vector<int> target_offsets;
    std::vector<int> target_vars;

    size_t variable_count() const { return var_aux.size(); }
    int aux_degree(int i) const { return aux_offsets[i + 1] - aux_offsets[i]; }
    int target_degree(int j) const { return target_offsets[j + 1] - target_offsets[j]; }
};

FactorGraph build_factor_graph(const SimilarityMatrix& r, const PrunePolicy& policy);

/// Build directly from a dense matrix (ids synthesized from indices).
/// Convenient for benchmarks and tests.
FactorGraph build_factor_graph(const Eigen::MatrixXd& combined, const PrunePolicy& policy);

}  // namespace matchrisk
