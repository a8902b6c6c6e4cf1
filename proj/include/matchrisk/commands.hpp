// Copyright 2026 The matchrisk Authors. Apache 2.0 licensed. See LICENSE in the project root.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "matchrisk/bp.hpp"
#include "matchrisk/evaluation.hpp"
#include "matchrisk/io.hpp"
#include "matchrisk/logistic.hpp"
#include "matchrisk/synth.hpp"

namespace matchrisk {

struct GlobalConfig {
    uint64_t seed = 1;
    int workers = 0;  // 0: one per hardware thread, capped at 8
    std::string out_dir = "out";
};

int effective_workers(const GlobalConfig& g);

// --- synth -------------------------------------------------------------------

struct SynthCommand {
    GlobalConfig global;
    SynthConfig synth;
};

/// Writes profiles/activity/edges/truth/split/channels CSVs into out_dir.
void cmd_synth(const SynthCommand& cmd);

// --- train -------------------------------------------------------------------

struct TrainCommand {
    GlobalConfig global;
    std::string dataset_dir;
    int n_coupled = 1500;
    int n_uncoupled = 1500;
    LogisticConfig logistic;
    double location_lambda_km = kDefaultLocationLambdaKm;
    double activity_horizon_s = kDefaultActivityHorizonS;
    std::string name_db_path;  // empty: builtin table
};

struct TrainResult {
    WeightVector weights;
    ChannelStats stats;
    FitDiagnostics diagnostics;
    std::string weights_path;
};

TrainResult cmd_train(const TrainCommand& cmd);

// --- match -------------------------------------------------------------------

struct MatchCommand {
    GlobalConfig global;
    std::string dataset_dir;
    std::string weights_path;
    std::string algo = "bp";  // bp | hungarian | threshold
    PrunePolicy prune = PrunePolicy::full();
    double threshold = 0.0;   // match acceptance gate (classifier cut for algo=threshold)
    // The pipeline reports per-target marginal distributions (the
    // deanonymization direction); run_bp itself defaults to raw products,
    // which are the exact tree semantics.
    BpConfig bp{.max_iters = 200, .tol = 1e-6, .damping = 0.0,
                .marginal_norm = MarginalNorm::PerTarget, .workers = 1};
    MatchMode mode = MatchMode::OneToOne;
    double location_lambda_km = kDefaultLocationLambdaKm;
    double activity_horizon_s = kDefaultActivityHorizonS;
    std::string name_db_path;
};

struct MatchResult {
    MatchSet matches;
    std::vector<TraceRow> trace;  // empty unless algo == bp
    double build_ms = 0.0;
    double solve_ms = 0.0;
    double per_iteration_ms = 0.0;
    int iterations = 0;
    bool converged = true;
    size_t variable_nodes = 0;
    std::string matches_path;
};

MatchResult cmd_match(const MatchCommand& cmd);

// --- eval --------------------------------------------------------------------

struct EvalCommand {
    GlobalConfig global;
    std::string dataset_dir;
    std::string matches_path;
    std::string trace_path;       // optional
    std::string similarity_path;  // optional, enables variance segmentation
    std::vector<double> thresholds = {0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
    std::optional<double> variance_threshold;
};

struct EvalResult {
    EvaluationReport report;
    std::optional<SufficientConditionResult> sufficient_condition;
    std::optional<VarianceSegmentReport> low_variance;
    std::optional<VarianceSegmentReport> high_variance;
    std::string report_path;
};

EvalResult cmd_eval(const EvalCommand& cmd);

// --- bench -------------------------------------------------------------------

struct BenchCommand {
    GlobalConfig global;
    std::string mode = "scaling";  // scaling | prune-compare
    std::vector<int> bp_sizes = {100, 200, 300, 400, 500};
    std::vector<int> hungarian_sizes = {100, 200, 300, 400, 500, 600};
    int bp_iterations = 20;  // fixed so the fit sees per-iteration cost
    // prune-compare inputs
    std::string dataset_dir;
    std::string weights_path;
    std::vector<std::string> policies = {"full", "sqrt", "log"};
    double table_threshold = 0.5;
    BpConfig bp{.max_iters = 200, .tol = 1e-6, .damping = 0.0,
                .marginal_norm = MarginalNorm::PerTarget, .workers = 1};
};

struct PruneRow {
    std::string policy;
    size_t variable_nodes = 0;
    double avg_factor_degree = 0.0;
    double precision = 0.0;
    double recall = 0.0;
    double accuracy = 0.0;
    double per_iteration_ms = 0.0;
    int iterations = 0;
};

struct BenchCommandResult {
    BenchResult scaling;
    std::vector<PruneRow> prune_rows;
};

BenchCommandResult cmd_bench(const BenchCommand& cmd);

/// Beta-model similarity matrix used by the scaling benches: coupled pairs
/// on the diagonal draw from Beta(8,2), everything else from Beta(2,8).
Eigen::MatrixXd bench_similarity_matrix(int n, int m, uint64_t seed);

}  // namespace matchrisk
