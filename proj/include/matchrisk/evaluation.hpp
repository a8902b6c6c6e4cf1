// Copyright 2026 The matchrisk Authors. Apache 2.0 licensed. See LICENSE in the project root.

#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "matchrisk/types.hpp"

namespace matchrisk {

struct ScoreRow {
    double threshold = 0.0;
    long tp = 0;
    long fp = 0;
    long fn = 0;
    double precision = 1.0;
    double recall = 0.0;
    bool zero_denominator = false;  // precision reported as 1 with TP+FP == 0
};

struct EvaluationReport {
    std::vector<ScoreRow> rows;
    long truth_size = 0;
    long correct_matches = 0;
    double accuracy = 0.0;  // threshold-free: |matches intersect truth| / |truth|
    double epsilon = 0.0;   // 100 * accuracy
};

/// Per-threshold precision/recall over a match set: a returned pair counts
/// at threshold t only when its score clears t; accuracy ignores thresholds.
EvaluationReport score(const MatchSet& matches, const CouplingGroundTruth& truth,
                       const std::vector<double>& thresholds);

/// The epsilon for which the run is epsilon-accurate (percentage of coupled
/// pairs matched correctly).
double epsilon_accuracy(const MatchSet& matches, const CouplingGroundTruth& truth);

// ---------------------------------------------------------------------------
// Sufficient condition (iteration-2 marginal strictly above iteration-1)
// ---------------------------------------------------------------------------

struct TraceRow {
    std::string aux_id;
    std::string target_id;
    double iter1 = 0.0;
    double iter2 = 0.0;
    double final_marginal = 0.0;
    double similarity = 0.0;
};

struct SufficientConditionResult {
    double rate_all = 0.0;       // over truth pairs surviving pruning
    double rate_correct = 0.0;   // over correctly matched truth pairs
    long surviving_pairs = 0;
    long correct_pairs = 0;
    bool degenerate = false;     // no surviving pair moved at all (e.g. 1x1 fixed point)
};

/// Fraction of coupled pairs whose iteration-2 marginal strictly exceeds
/// the iteration-1 marginal. Needs the per-iteration trace; pairs pruned
/// from the graph are excluded from the denominator.
SufficientConditionResult sufficient_condition_rate(const std::vector<TraceRow>& trace,
                                                    const CouplingGroundTruth& truth,
                                                    const MatchSet* matches = nullptr);

// ---------------------------------------------------------------------------
// Variance segmentation
// ---------------------------------------------------------------------------

enum class VarianceMode { Low, High };

struct VarianceSegmentReport {
    std::vector<std::string> selected_targets;
    EvaluationReport report;
    bool empty_segment = false;
    double variance_threshold = 0.0;
    VarianceMode mode = VarianceMode::High;
};

/// Population variance of each target's similarity column selects a target
/// subset (above the threshold for High, below for Low); matching quality is
/// then re-scored on that subset only.
VarianceSegmentReport variance_segmentation(const SimilarityMatrix& r,
                                            const CouplingGroundTruth& truth,
                                            double variance_threshold, VarianceMode mode,
                                            const MatchSet& matches,
                                            const std::vector<double>& thresholds);

// ---------------------------------------------------------------------------
// Runtime scaling
// ---------------------------------------------------------------------------

struct BenchAlgorithm {
    std::string name;
    // Runs the algorithm once on a similarity matrix; returns nothing, the
    // harness times the call.
    std::function<void(const Eigen::MatrixXd&)> run;
    // Problem-size measure for the log-log fit (e.g. variable-node count
    // for BP, max(N, M) for Hungarian).
    std::function<double(int n, int m)> size_measure;
    int inner_repeats = 1;  // fixed per algorithm so the fitted slope is unbiased
};

struct BenchRow {
    std::string algorithm;
    int n = 0;
    int m = 0;
    double size_measure = 0.0;
    double median_ms = 0.0;
};

struct BenchResult {
    std::vector<BenchRow> rows;
    std::map<std::string, double> slope;  // per algorithm; absent when < 3 sizes
    bool slope_available = false;
};

/// Times each algorithm on generated matrices of the given sizes (median of
/// three runs) and fits the log-log slope of runtime against the algorithm's
/// size measure.
BenchResult bench_scaling(const std::vector<std::pair<int, int>>& sizes,
                          const std::function<Eigen::MatrixXd(int, int)>& generator,
                          const std::vector<BenchAlgorithm>& algorithms);

}  // namespace matchrisk
