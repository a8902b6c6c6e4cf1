// Copyright 2026 The matchrisk Authors. Apache 2.0 licensed. See LICENSE in the project root.

#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "matchrisk/types.hpp"

namespace matchrisk {

/// A one-to-one assignment of auxiliary to target users.
struct Assignment {
    std::vector<std::pair<int, int>> pairs;  // (aux index, target index)
    double total_similarity = 0.0;           // sum of assigned similarities
    double objective_value = 0.0;            // objective the solver maximized
};

/// Maximum-total-similarity assignment via shortest augmenting paths with
/// potentials (Jonker-Volgenant flavor), O(max(N,M)^3). Rectangular inputs
/// are padded with zero similarity and the padded matches stripped, so the
/// result always holds min(N, M) pairs on a complete matrix.
Assignment hungarian(const Eigen::MatrixXd& similarity);
Assignment hungarian(const SimilarityMatrix& r);

/// Declares every pair with similarity >= threshold a match, many-to-many.
/// This is the per-pair classifier baseline.
MatchSet threshold_classifier(const SimilarityMatrix& r, double threshold);

enum class AssignmentObjective { MaxSum, MaxProduct };

/// Exhaustive assignment search for test oracles; max(N, M) must be <= 8.
/// MaxSum oracles the Hungarian solver, MaxProduct the MAP matching a
/// product-of-similarities posterior would pick.
Assignment brute_force_assignment(const Eigen::MatrixXd& similarity,
                                  AssignmentObjective objective);

}  // namespace matchrisk
