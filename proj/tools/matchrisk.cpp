// Copyright 2026 The matchrisk Authors. Apache 2.0 licensed. See LICENSE in the project root.
#include <cstdio>

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "matchrisk/commands.hpp"

namespace {

using namespace matchrisk;

void add_global(CLI::App* app, GlobalConfig& global) {
    app->add_option("--seed", global.seed, "Seed for every random choice");
    app->add_option("--workers", global.workers, "Worker threads (0 = auto)");
    app->add_option("--out", global.out_dir, "Output directory");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"matchrisk: profile-matching risk quantification across social networks"};
    app.require_subcommand(1);

    // --- synth ---------------------------------------------------------------
    SynthCommand synth;
    std::string graph_model = "pa";
    auto* synth_app = app.add_subcommand("synth", "Generate a coupled synthetic dataset");
    add_global(synth_app, synth.global);
    synth_app->add_option("--n-users", synth.synth.n_users, "Auxiliary population size");
    synth_app->add_option("--n-target-users", synth.synth.n_target_users,
                          "Target population size (-1: same as --n-users)");
    synth_app->add_option("--graph-model", graph_model, "pa | er");
    synth_app->add_option("--pa-m", synth.synth.graph_model.pa_m,
                          "Edges per joining node (preferential attachment)");
    synth_app->add_option("--er-p", synth.synth.graph_model.er_p, "Edge probability (Erdos-Renyi)");
    synth_app->add_option("--edge-overlap", synth.synth.edge_overlap,
                          "Expected Jaccard overlap of the two graph views");
    synth_app->add_option("--name-typo-rate", synth.synth.name_typo_rate, "Per-char typo rate");
    synth_app->add_option("--location-jitter-km", synth.synth.location_jitter_km,
                          "Location noise (km)");
    synth_app->add_option("--activity-offset-s", synth.synth.activity_offset_s,
                          "Activity timestamp noise (s)");
    synth_app->add_option("--gender-flip-rate", synth.synth.gender_flip_rate, "Gender flip rate");
    synth_app->add_option("--activity-events", synth.synth.activity_events, "Events per user");
    synth_app->add_option("--eval-noise-multiplier", synth.synth.eval_noise_multiplier,
                          "Noise multiplier for profiles outside the training split");
    synth_app->add_option("--private-fraction", synth.synth.private_user_fraction,
                          "Fraction of privacy-cautious users");
    synth_app->add_option("--private-missing", synth.synth.private_missing,
                          "Per-channel missing rate for privacy-cautious users");
    synth_app->add_option("--n-cities", synth.synth.n_cities, "Location cluster count");
    synth_app->add_option("--intra-city-km", synth.synth.intra_city_km,
                          "Within-city location spread (km)");
    synth_app->add_option("--train-coupled", synth.synth.train_coupled,
                          "Coupled training pairs carved from the population");
    synth_app->add_option("--train-uncoupled", synth.synth.train_uncoupled,
                          "Uncoupled training pairs carved from the population");
    synth_app->add_option("--eval-users", synth.synth.eval_users,
                          "Coupled eval personas (-1: everyone left)");
    std::vector<std::string> missing_specs, beta_specs;
    synth_app->add_option("--missing", missing_specs,
                          "Per-channel missing rate, channel=rate (repeatable)");
    synth_app->add_option("--channel-beta", beta_specs,
                          "External channel, name=cA,cB,uA,uB (repeatable; 'name=off' removes)");

    // --- train ---------------------------------------------------------------
    TrainCommand train;
    auto* train_app = app.add_subcommand("train", "Fit per-attribute logistic weights");
    add_global(train_app, train.global);
    train_app->add_option("--dataset", train.dataset_dir, "Dataset directory")->required();
    train_app->add_option("--n-coupled", train.n_coupled, "Coupled pairs to train on");
    train_app->add_option("--n-uncoupled", train.n_uncoupled, "Uncoupled pairs to train on");
    train_app->add_option("--learning-rate", train.logistic.learning_rate, "GD learning rate");
    train_app->add_option("--epochs", train.logistic.epochs, "GD epochs");
    train_app->add_option("--l2", train.logistic.l2, "L2 regularization");
    train_app->add_option("--location-lambda-km", train.location_lambda_km,
                          "Location decay length (km)");
    train_app->add_option("--activity-horizon-s", train.activity_horizon_s,
                          "Activity normalization horizon (s)");
    train_app->add_option("--name-db", train.name_db_path, "Name/gender table CSV");

    // --- match ---------------------------------------------------------------
    MatchCommand match;
    std::string prune = "full";
    std::string marginal_norm = "per-target";
    std::string mode = "one_to_one";
    auto* match_app = app.add_subcommand("match", "Run a matching algorithm over the eval slice");
    add_global(match_app, match.global);
    match_app->add_option("--dataset", match.dataset_dir, "Dataset directory")->required();
    match_app->add_option("--weights", match.weights_path, "Weights file")->required();
    match_app->add_option("--algo", match.algo, "bp | hungarian | threshold");
    match_app->add_option("--prune", prune, "full | sqrt | log | topk:K");
    match_app->add_option("--threshold", match.threshold, "Match acceptance threshold");
    match_app->add_option("--max-iters", match.bp.max_iters, "BP iteration cap");
    match_app->add_option("--tol", match.bp.tol, "BP convergence tolerance on marginals");
    match_app->add_option("--damping", match.bp.damping, "BP damping in [0, 0.9]");
    match_app->add_option("--marginal-norm", marginal_norm, "raw | per-target | per-aux");
    match_app->add_option("--mode", mode, "one_to_one | per_target_argmax");
    match_app->add_option("--location-lambda-km", match.location_lambda_km,
                          "Location decay length (km)");
    match_app->add_option("--activity-horizon-s", match.activity_horizon_s,
                          "Activity normalization horizon (s)");
    match_app->add_option("--name-db", match.name_db_path, "Name/gender table CSV");

    // --- eval ----------------------------------------------------------------
    EvalCommand eval;
    double variance_threshold = -1.0;
    auto* eval_app = app.add_subcommand("eval", "Score a match set against the ground truth");
    add_global(eval_app, eval.global);
    eval_app->add_option("--dataset", eval.dataset_dir, "Dataset directory")->required();
    eval_app->add_option("--matches", eval.matches_path, "Match set file")->required();
    eval_app->add_option("--trace", eval.trace_path, "BP trace file (sufficient condition)");
    eval_app->add_option("--similarity", eval.similarity_path,
                         "Similarity dump (variance segmentation)");
    eval_app->add_option("--thresholds", eval.thresholds, "Score thresholds")->delimiter(',');
    eval_app->add_option("--variance-threshold", variance_threshold,
                         "Target-variance split point (negative: off)");

    // --- bench ---------------------------------------------------------------
    BenchCommand bench;
    auto* bench_app = app.add_subcommand("bench", "Runtime scaling and pruning comparisons");
    add_global(bench_app, bench.global);
    bench_app->add_option("--mode", bench.mode, "scaling | prune-compare");
    bench_app->add_option("--bp-sizes", bench.bp_sizes, "Square sizes for BP")->delimiter(',');
    bench_app->add_option("--hungarian-sizes", bench.hungarian_sizes, "Sizes for Hungarian")
        ->delimiter(',');
    bench_app->add_option("--bp-iterations", bench.bp_iterations, "Fixed BP iterations");
    bench_app->add_option("--dataset", bench.dataset_dir, "Dataset (prune-compare)");
    bench_app->add_option("--weights", bench.weights_path, "Weights file (prune-compare)");
    bench_app->add_option("--policies", bench.policies, "Prune policies to compare")
        ->delimiter(',');
    bench_app->add_option("--table-threshold", bench.table_threshold,
                          "Threshold for the comparison table");

    CLI11_PARSE(app, argc, argv);

    try {
        if (synth_app->parsed()) {
            synth.synth.graph_model.kind = graph_model == "er"
                                               ? GraphModel::Kind::ErdosRenyi
                                               : GraphModel::Kind::PreferentialAttachment;
            for (const auto& spec : missing_specs) {
                const auto eq = spec.find('=');
                if (eq == std::string::npos) throw InvalidConfig("bad --missing spec: " + spec);
                synth.synth.missing_rate[spec.substr(0, eq)] = std::stod(spec.substr(eq + 1));
            }
            for (const auto& spec : beta_specs) {
                const auto eq = spec.find('=');
                if (eq == std::string::npos) {
                    throw InvalidConfig("bad --channel-beta spec: " + spec);
                }
                const std::string name = spec.substr(0, eq);
                const std::string params = spec.substr(eq + 1);
                if (params == "off") {
                    synth.synth.channel_betas.erase(name);
                    continue;
                }
                ChannelBetas betas;
                if (std::sscanf(params.c_str(), "%lf,%lf,%lf,%lf", &betas.coupled_alpha,
                                &betas.coupled_beta, &betas.uncoupled_alpha,
                                &betas.uncoupled_beta) != 4) {
                    throw InvalidConfig("bad --channel-beta spec: " + spec);
                }
                synth.synth.channel_betas[name] = betas;
            }
            cmd_synth(synth);
            std::cout << "dataset written to " << synth.global.out_dir << "\n";
        } else if (train_app->parsed()) {
            const TrainResult result = cmd_train(train);
            std::cout << "weights written to " << result.weights_path
                      << " (train accuracy " << result.diagnostics.train_accuracy << ")\n";
        } else if (match_app->parsed()) {
            match.prune = PrunePolicy::parse(prune);
            match.bp.marginal_norm = parse_marginal_norm(marginal_norm);
            if (mode == "per_target_argmax") {
                match.mode = MatchMode::PerTargetArgmax;
            } else if (mode != "one_to_one") {
                throw InvalidConfig("unknown mode: " + mode);
            }
            const MatchResult result = cmd_match(match);
            std::cout << "matches written to " << result.matches_path << " ("
                      << result.matches.matches.size() << " pairs, build " << result.build_ms
                      << " ms, solve " << result.solve_ms << " ms)\n";
        } else if (eval_app->parsed()) {
            if (variance_threshold >= 0.0) eval.variance_threshold = variance_threshold;
            const EvalResult result = cmd_eval(eval);
            std::cout << "report written to " << result.report_path << " (accuracy "
                      << result.report.accuracy << ", epsilon " << result.report.epsilon
                      << ")\n";
        } else if (bench_app->parsed()) {
            const BenchCommandResult result = cmd_bench(bench);
            for (const auto& [name, slope] : result.scaling.slope) {
                std::cout << name << " log-log slope: " << slope << "\n";
            }
            for (const auto& row : result.prune_rows) {
                std::cout << row.policy << ": accuracy " << row.accuracy << ", per-iteration "
                          << row.per_iteration_ms << " ms\n";
            }
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
