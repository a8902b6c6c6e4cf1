// Copyright 2026 The matchrisk Authors. Apache 2.0 licensed. See LICENSE in the project root.

#include "matchrisk/commands.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <set>
#include <thread>
#include <unordered_map>

#include <json.hpp>

#include "matchrisk/assignment.hpp"
#include "matchrisk/rng.hpp"

namespace matchrisk {

namespace fs = std::filesystem;
using nlohmann::json;
using Clock = std::chrono::steady_clock;

namespace {

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::string config_hash_of(const json& config) { return hash_hex(fnv1a_hash(config.dump())); }

void write_json(const std::string& path, const json& value) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    out << value.dump(2) << "\n";
}

json global_json(const GlobalConfig& g) {
    return {{"seed", g.seed}, {"workers", g.workers}, {"out", g.out_dir}};
}

/// Training/eval channel value lookup: channel -> (aux|target -> value).
using ChannelLookup =
    std::map<std::string, std::unordered_map<std::string, double>>;

std::string pair_key(const std::string& aux, const std::string& target) {
    return aux + "|" + target;
}

ChannelLookup index_channels(const std::map<std::string, std::vector<ChannelTriplet>>& channels) {
    ChannelLookup lookup;
    for (const auto& [channel, triplets] : channels) {
        auto& sink = lookup[channel];
        sink.reserve(triplets.size());
        for (const auto& t : triplets) sink[pair_key(t.aux_id, t.target_id)] = t.similarity;
    }
    return lookup;
}

const UserProfile* find_profile(const std::vector<UserProfile>& profiles, const std::string& id) {
    const auto it = std::lower_bound(
        profiles.begin(), profiles.end(), id,
        [](const UserProfile& p, const std::string& key) { return p.user_id < key; });
    if (it == profiles.end() || it->user_id != id) return nullptr;
    return &*it;
}

std::vector<UserProfile> select_profiles(const std::vector<UserProfile>& all,
                                         const std::vector<std::string>& ids) {
    if (ids.empty()) return all;
    std::vector<UserProfile> out;
    out.reserve(ids.size());
    for (const auto& id : ids) {
        const UserProfile* p = find_profile(all, id);
        if (!p) throw UnknownUser("split references unknown user " + id);
        out.push_back(*p);
    }
    std::sort(out.begin(), out.end(),
              [](const UserProfile& a, const UserProfile& b) { return a.user_id < b.user_id; });
    return out;
}

void require_valid(const Dataset& data) {
    const auto violations = validate_dataset(data);
    if (!violations.empty()) {
        std::string msg = "dataset failed validation:";
        for (size_t i = 0; i < violations.size() && i < 5; ++i) msg += "\n  " + violations[i];
        if (violations.size() > 5) {
            msg += "\n  (+" + std::to_string(violations.size() - 5) + " more)";
        }
        throw InvalidConfig(msg);
    }
}

}  // namespace

int effective_workers(const GlobalConfig& g) {
    if (g.workers > 0) return g.workers;
    const unsigned hw = std::thread::hardware_concurrency();
    return static_cast<int>(std::clamp(hw, 1u, 8u));
}

// ---------------------------------------------------------------------------
// synth
// ---------------------------------------------------------------------------

void cmd_synth(const SynthCommand& cmd) {
    SynthConfig cfg = cmd.synth;
    cfg.seed = cmd.global.seed;

    json echo = global_json(cmd.global);
    echo["command"] = "synth";
    echo["n_users"] = cfg.n_users;
    echo["n_target_users"] = cfg.n_target_users;
    echo["graph_model"] =
        cfg.graph_model.kind == GraphModel::Kind::PreferentialAttachment
            ? json{{"kind", "preferential_attachment"}, {"m", cfg.graph_model.pa_m}}
            : json{{"kind", "erdos_renyi"}, {"p", cfg.graph_model.er_p}};
    echo["vertex_overlap"] = cfg.vertex_overlap;
    echo["edge_overlap"] = cfg.edge_overlap;
    echo["name_typo_rate"] = cfg.name_typo_rate;
    echo["location_jitter_km"] = cfg.location_jitter_km;
    echo["activity_offset_s"] = cfg.activity_offset_s;
    echo["gender_flip_rate"] = cfg.gender_flip_rate;
    echo["activity_events"] = cfg.activity_events;
    echo["eval_noise_multiplier"] = cfg.eval_noise_multiplier;
    echo["private_user_fraction"] = cfg.private_user_fraction;
    echo["private_missing"] = cfg.private_missing;
    echo["n_cities"] = cfg.n_cities;
    echo["intra_city_km"] = cfg.intra_city_km;
    echo["missing_rate"] = cfg.missing_rate;
    {
        json betas = json::object();
        for (const auto& [name, b] : cfg.channel_betas) {
            betas[name] = {b.coupled_alpha, b.coupled_beta, b.uncoupled_alpha, b.uncoupled_beta};
        }
        echo["channel_betas"] = betas;
    }
    echo["train_coupled"] = cfg.train_coupled;
    echo["train_uncoupled"] = cfg.train_uncoupled;
    echo["eval_users"] = cfg.eval_users;

    const SynthDataset data = generate_dataset(cfg);
    const std::string hash = config_hash_of(echo);
    save_dataset(cmd.global.out_dir, data, hash);
    write_json(cmd.global.out_dir + "/synth_report.json", echo);
}

// ---------------------------------------------------------------------------
// train
// ---------------------------------------------------------------------------

TrainResult cmd_train(const TrainCommand& cmd) {
    if (cmd.n_coupled <= 0) throw InvalidConfig("train needs a positive coupled pair count");
    if (cmd.n_uncoupled < 0) throw InvalidConfig("negative uncoupled pair count");

    const Dataset data = load_dataset(cmd.dataset_dir);
    require_valid(data);

    if (static_cast<int>(data.split.train_coupled.size()) < cmd.n_coupled) {
        throw DegenerateTraining(
            "split offers " + std::to_string(data.split.train_coupled.size()) +
            " coupled training pairs, need " + std::to_string(cmd.n_coupled));
    }
    if (static_cast<int>(data.split.train_uncoupled.size()) < cmd.n_uncoupled) {
        throw DegenerateTraining(
            "split offers " + std::to_string(data.split.train_uncoupled.size()) +
            " uncoupled training pairs, need " + std::to_string(cmd.n_uncoupled));
    }

    const NameGenderTable name_db = cmd.name_db_path.empty()
                                        ? NameGenderTable::builtin()
                                        : NameGenderTable::from_csv_file(cmd.name_db_path);
    SimilarityContext ctx;
    ctx.name_db = &name_db;
    ctx.aux_graph = &data.aux_graph;
    ctx.target_graph = &data.target_graph;
    ctx.location_lambda_km = cmd.location_lambda_km;
    ctx.activity_horizon_s = cmd.activity_horizon_s;

    const ChannelLookup external = index_channels(data.channels);

    struct PairRow {
        std::map<std::string, std::optional<double>> values;
        double label;
    };
    std::vector<PairRow> rows;
    rows.reserve(cmd.n_coupled + cmd.n_uncoupled);
    ChannelStats stats;

    auto add_pair = [&](const IdPair& pair, double label) {
        const UserProfile* aux = find_profile(data.aux_profiles, pair.first);
        const UserProfile* target = find_profile(data.target_profiles, pair.second);
        if (!aux || !target) {
            throw UnknownUser("training pair references unknown user (" + pair.first + ", " +
                              pair.second + ")");
        }
        PairRow row;
        row.label = label;
        row.values = native_channel_values(*aux, *target, ctx);
        for (const auto& [channel, lookup] : external) {
            const auto it = lookup.find(pair_key(pair.first, pair.second));
            row.values[channel] =
                it == lookup.end() ? std::nullopt : std::optional<double>(it->second);
        }
        for (const auto& [channel, value] : row.values) {
            if (value) stats.add(channel, *value);
        }
        rows.push_back(std::move(row));
    };

    for (int i = 0; i < cmd.n_coupled; ++i) add_pair(data.split.train_coupled[i], 1.0);
    for (int i = 0; i < cmd.n_uncoupled; ++i) add_pair(data.split.train_uncoupled[i], 0.0);

    // Channels never observed in training carry no information; drop them.
    const std::vector<std::string> channels = stats.channel_names();
    if (channels.empty()) throw DegenerateTraining("no channel observed in any training pair");

    TrainingMatrix matrix;
    matrix.channel_names = channels;
    matrix.features.resize(static_cast<Eigen::Index>(rows.size()),
                           static_cast<Eigen::Index>(channels.size()));
    matrix.labels.resize(static_cast<Eigen::Index>(rows.size()));
    for (size_t r = 0; r < rows.size(); ++r) {
        matrix.labels[static_cast<Eigen::Index>(r)] = rows[r].label;
        for (size_t c = 0; c < channels.size(); ++c) {
            const auto& value = rows[r].values.at(channels[c]);
            matrix.features(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                value ? *value : impute_missing(stats, channels[c]);
        }
    }

    TrainResult result;
    LogisticConfig logistic = cmd.logistic;
    logistic.seed = cmd.global.seed;
    result.weights = fit_logistic(matrix, logistic, &result.diagnostics);
    result.stats = std::move(stats);

    json echo = global_json(cmd.global);
    echo["command"] = "train";
    echo["dataset"] = cmd.dataset_dir;
    echo["n_coupled"] = cmd.n_coupled;
    echo["n_uncoupled"] = cmd.n_uncoupled;
    echo["learning_rate"] = logistic.learning_rate;
    echo["epochs"] = logistic.epochs;
    echo["l2"] = logistic.l2;
    echo["location_lambda_km"] = cmd.location_lambda_km;
    echo["activity_horizon_s"] = cmd.activity_horizon_s;

    fs::create_directories(cmd.global.out_dir);
    result.weights_path = cmd.global.out_dir + "/weights.csv";
    save_weights(result.weights_path, result.weights, result.stats, config_hash_of(echo),
                 data.dataset_hash);

    json report = echo;
    report["train_accuracy"] = result.diagnostics.train_accuracy;
    report["final_loss"] = result.diagnostics.final_loss;
    report["epochs_run"] = result.diagnostics.loss_per_epoch.size();
    report["channels"] = channels;
    {
        json weights = json::object();
        for (size_t c = 0; c < channels.size(); ++c) {
            weights[channels[c]] = result.weights.weights[static_cast<Eigen::Index>(c)];
        }
        report["weights"] = weights;
        report["bias"] = result.weights.bias;
    }
    write_json(cmd.global.out_dir + "/train_report.json", report);
    return result;
}

// ---------------------------------------------------------------------------
// match
// ---------------------------------------------------------------------------

MatchResult cmd_match(const MatchCommand& cmd) {
    const Dataset data = load_dataset(cmd.dataset_dir);
    require_valid(data);
    auto [weights, stats] = load_weights(cmd.weights_path);

    const NameGenderTable name_db = cmd.name_db_path.empty()
                                        ? NameGenderTable::builtin()
                                        : NameGenderTable::from_csv_file(cmd.name_db_path);
    SimilarityContext ctx;
    ctx.name_db = &name_db;
    ctx.aux_graph = &data.aux_graph;
    ctx.target_graph = &data.target_graph;
    ctx.location_lambda_km = cmd.location_lambda_km;
    ctx.activity_horizon_s = cmd.activity_horizon_s;

    const std::vector<UserProfile> aux = select_profiles(data.aux_profiles, data.split.eval_aux);
    const std::vector<UserProfile> target =
        select_profiles(data.target_profiles, data.split.eval_target);

    const int workers = effective_workers(cmd.global);
    MatchResult result;

    const auto build_start = Clock::now();
    const SimilarityMatrix r =
        build_similarity_matrix(aux, target, weights, data.channels, stats, ctx, workers);
    result.build_ms = ms_since(build_start);

    json echo = global_json(cmd.global);
    echo["command"] = "match";
    echo["dataset"] = cmd.dataset_dir;
    echo["weights"] = cmd.weights_path;
    echo["algo"] = cmd.algo;
    echo["prune"] = cmd.prune.to_string();
    echo["threshold"] = cmd.threshold;
    echo["max_iters"] = cmd.bp.max_iters;
    echo["tol"] = cmd.bp.tol;
    echo["damping"] = cmd.bp.damping;
    echo["marginal_norm"] = to_string(cmd.bp.marginal_norm);
    echo["mode"] = cmd.mode == MatchMode::OneToOne ? "one_to_one" : "per_target_argmax";
    const std::string config_hash = config_hash_of(echo);

    fs::create_directories(cmd.global.out_dir);
    const std::string& dh = data.dataset_hash;
    save_similarity(cmd.global.out_dir + "/similarity.csv", r, config_hash, dh);

    if (cmd.algo == "bp") {
        const auto solve_start = Clock::now();
        const FactorGraph graph = build_factor_graph(r, cmd.prune);
        BpConfig bp = cmd.bp;
        bp.workers = workers;
        const MarginalTable table = run_bp(graph, bp);
        result.solve_ms = ms_since(solve_start);
        result.iterations = table.iterations_run;
        result.converged = table.converged;
        result.variable_nodes = graph.variable_count();
        result.per_iteration_ms =
            table.iterations_run > 0 ? result.solve_ms / table.iterations_run : 0.0;

        result.matches = extract_matching(graph, table, cmd.threshold, cmd.mode);
        result.trace.reserve(graph.variable_count());
        for (size_t v = 0; v < graph.variable_count(); ++v) {
            result.trace.push_back({graph.aux_ids[graph.var_aux[v]],
                                    graph.target_ids[graph.var_target[v]], table.iter1[v],
                                    table.iter2[v], table.marginal[v], graph.var_sim[v]});
        }
        save_marginals(cmd.global.out_dir + "/marginals.csv", result.trace, config_hash, dh);
        save_trace(cmd.global.out_dir + "/trace.csv", result.trace, config_hash, dh);
    } else if (cmd.algo == "hungarian") {
        const auto solve_start = Clock::now();
        const Assignment assignment = hungarian(r);
        result.solve_ms = ms_since(solve_start);
        result.variable_nodes = r.combined.size();
        for (const auto& [i, j] : assignment.pairs) {
            result.matches.matches.push_back({r.aux_ids[static_cast<size_t>(i)],
                                              r.target_ids[static_cast<size_t>(j)],
                                              r.combined(i, j)});
        }
    } else if (cmd.algo == "threshold") {
        const auto solve_start = Clock::now();
        result.matches = threshold_classifier(r, cmd.threshold);
        result.solve_ms = ms_since(solve_start);
        result.variable_nodes = r.combined.size();
    } else {
        throw InvalidConfig("unknown matching algorithm: " + cmd.algo);
    }

    result.matches_path = cmd.global.out_dir + "/matches.csv";
    save_matches(result.matches_path, result.matches, config_hash, dh);
    write_json(cmd.global.out_dir + "/match_report.json", echo);

    json timings = {{"build_ms", result.build_ms},
                    {"solve_ms", result.solve_ms},
                    {"per_iteration_ms", result.per_iteration_ms},
                    {"iterations", result.iterations},
                    {"converged", result.converged},
                    {"variable_nodes", result.variable_nodes}};
    write_json(cmd.global.out_dir + "/timings.json", timings);
    return result;
}

// ---------------------------------------------------------------------------
// eval
// ---------------------------------------------------------------------------

EvalResult cmd_eval(const EvalCommand& cmd) {
    const Dataset data = load_dataset(cmd.dataset_dir);

    std::string match_dataset_hash;
    MatchSet matches = load_matches(cmd.matches_path, &match_dataset_hash);
    if (!match_dataset_hash.empty() && !data.dataset_hash.empty() &&
        match_dataset_hash != data.dataset_hash) {
        throw IoError("match file was produced from a different dataset (hash " +
                      match_dataset_hash + " vs " + data.dataset_hash + ")");
    }

    // Restrict the truth to the eval slice when the dataset carries a split.
    CouplingGroundTruth truth;
    if (!data.split.eval_aux.empty() || !data.split.eval_target.empty()) {
        const std::set<std::string> aux(data.split.eval_aux.begin(), data.split.eval_aux.end());
        const std::set<std::string> target(data.split.eval_target.begin(),
                                           data.split.eval_target.end());
        for (const auto& p : data.truth.pairs) {
            if (aux.count(p.first) && target.count(p.second)) truth.pairs.push_back(p);
        }
    } else {
        truth = data.truth;
    }

    EvalResult result;
    result.report = score(matches, truth, cmd.thresholds);

    if (!cmd.trace_path.empty()) {
        std::string trace_hash;
        const std::vector<TraceRow> trace = load_trace(cmd.trace_path, &trace_hash);
        if (!trace_hash.empty() && trace_hash != data.dataset_hash) {
            throw IoError("trace file was produced from a different dataset");
        }
        result.sufficient_condition = sufficient_condition_rate(trace, truth, &matches);
    }

    if (!cmd.similarity_path.empty() && cmd.variance_threshold) {
        std::string sim_hash;
        const SimilarityMatrix r = load_similarity(cmd.similarity_path, &sim_hash);
        if (!sim_hash.empty() && sim_hash != data.dataset_hash) {
            throw IoError("similarity file was produced from a different dataset");
        }
        result.low_variance = variance_segmentation(r, truth, *cmd.variance_threshold,
                                                    VarianceMode::Low, matches, cmd.thresholds);
        result.high_variance = variance_segmentation(r, truth, *cmd.variance_threshold,
                                                     VarianceMode::High, matches, cmd.thresholds);
    }

    json echo = global_json(cmd.global);
    echo["command"] = "eval";
    echo["dataset"] = cmd.dataset_dir;
    echo["matches"] = cmd.matches_path;
    echo["trace"] = cmd.trace_path;
    echo["similarity"] = cmd.similarity_path;
    echo["thresholds"] = cmd.thresholds;
    if (cmd.variance_threshold) echo["variance_threshold"] = *cmd.variance_threshold;

    auto report_json = [](const EvaluationReport& rep) {
        json rows = json::array();
        for (const auto& row : rep.rows) {
            rows.push_back({{"threshold", row.threshold},
                            {"tp", row.tp},
                            {"fp", row.fp},
                            {"fn", row.fn},
                            {"precision", row.precision},
                            {"recall", row.recall},
                            {"zero_denominator", row.zero_denominator}});
        }
        return json{{"rows", rows},
                    {"accuracy", rep.accuracy},
                    {"epsilon", rep.epsilon},
                    {"truth_size", rep.truth_size},
                    {"correct_matches", rep.correct_matches}};
    };

    json report;
    report["config"] = echo;
    report["scores"] = report_json(result.report);
    if (result.sufficient_condition) {
        const auto& sc = *result.sufficient_condition;
        report["sufficient_condition"] = {{"rate_all", sc.rate_all},
                                          {"rate_correct", sc.rate_correct},
                                          {"surviving_pairs", sc.surviving_pairs},
                                          {"correct_pairs", sc.correct_pairs},
                                          {"degenerate", sc.degenerate}};
    }
    auto segment_json = [&](const VarianceSegmentReport& seg) {
        json j = {{"variance_threshold", seg.variance_threshold},
                  {"mode", seg.mode == VarianceMode::High ? "high" : "low"},
                  {"selected_targets", seg.selected_targets.size()},
                  {"empty_segment", seg.empty_segment}};
        if (!seg.empty_segment) j["scores"] = report_json(seg.report);
        return j;
    };
    if (result.low_variance) report["low_variance"] = segment_json(*result.low_variance);
    if (result.high_variance) report["high_variance"] = segment_json(*result.high_variance);

    fs::create_directories(cmd.global.out_dir);
    result.report_path = cmd.global.out_dir + "/report.json";
    write_json(result.report_path, report);

    {
        std::ofstream csv(cmd.global.out_dir + "/threshold_sweep.csv", std::ios::binary);
        csv << format_header({"report_sweep", config_hash_of(echo), data.dataset_hash}) << "\n";
        csv << "# threshold,tp,fp,fn,precision,recall\n";
        for (const auto& row : result.report.rows) {
            csv << format_double(row.threshold) << ',' << row.tp << ',' << row.fp << ','
                << row.fn << ',' << format_double(row.precision) << ','
                << format_double(row.recall) << "\n";
        }
    }
    return result;
}

// ---------------------------------------------------------------------------
// bench
// ---------------------------------------------------------------------------

Eigen::MatrixXd bench_similarity_matrix(int n, int m, uint64_t seed) {
    Rng rng(seed ^ (static_cast<uint64_t>(n) << 32) ^ static_cast<uint64_t>(m));
    Eigen::MatrixXd r(n, m);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < m; ++j) {
            r(i, j) = i == j ? rng.beta(8.0, 2.0) : rng.beta(2.0, 8.0);
        }
    }
    return r;
}

BenchCommandResult cmd_bench(const BenchCommand& cmd) {
    BenchCommandResult result;
    fs::create_directories(cmd.global.out_dir);

    json echo = global_json(cmd.global);
    echo["command"] = "bench";
    echo["mode"] = cmd.mode;

    if (cmd.mode == "scaling") {
        const uint64_t seed = cmd.global.seed;
        const auto generator = [seed](int n, int m) {
            return bench_similarity_matrix(n, m, seed);
        };

        const int iters = cmd.bp_iterations;
        BenchAlgorithm bp_algo{
            "bp",
            [iters](const Eigen::MatrixXd& r) {
                const FactorGraph g = build_factor_graph(r, PrunePolicy::full());
                BpConfig cfg;
                cfg.max_iters = iters;
                cfg.tol = 0.0;  // run the full iteration budget at every size
                run_bp(g, cfg);
            },
            [](int n, int m) { return static_cast<double>(n) * m; },
            1};
        BenchAlgorithm hungarian_algo{
            "hungarian", [](const Eigen::MatrixXd& r) { hungarian(r); },
            [](int n, int m) { return static_cast<double>(std::max(n, m)); }, 1};

        std::vector<std::pair<int, int>> bp_sizes, hungarian_sizes;
        for (const int s : cmd.bp_sizes) bp_sizes.emplace_back(s, s);
        for (const int s : cmd.hungarian_sizes) hungarian_sizes.emplace_back(s, s);

        const BenchResult bp_result = bench_scaling(bp_sizes, generator, {bp_algo});
        const BenchResult hungarian_result =
            bench_scaling(hungarian_sizes, generator, {hungarian_algo});

        result.scaling = bp_result;
        result.scaling.rows.insert(result.scaling.rows.end(), hungarian_result.rows.begin(),
                                   hungarian_result.rows.end());
        for (const auto& [name, slope] : hungarian_result.slope) {
            result.scaling.slope[name] = slope;
        }
        result.scaling.slope_available =
            bp_result.slope_available || hungarian_result.slope_available;

        std::ofstream csv(cmd.global.out_dir + "/bench.csv", std::ios::binary);
        csv << format_header({"bench", config_hash_of(echo), ""}) << "\n";
        csv << "# algorithm,n,m,size_measure,median_ms\n";
        for (const auto& row : result.scaling.rows) {
            csv << row.algorithm << ',' << row.n << ',' << row.m << ','
                << format_double(row.size_measure) << ',' << format_double(row.median_ms)
                << "\n";
        }

        json report = echo;
        report["slopes"] = result.scaling.slope;
        report["slope_available"] = result.scaling.slope_available;
        write_json(cmd.global.out_dir + "/bench_report.json", report);
        return result;
    }

    if (cmd.mode != "prune-compare") throw InvalidConfig("unknown bench mode: " + cmd.mode);

    // Table-style comparison of pruning regimes on a real dataset.
    MatchCommand base;
    base.global = cmd.global;
    base.dataset_dir = cmd.dataset_dir;
    base.weights_path = cmd.weights_path;
    base.algo = "bp";
    base.bp = cmd.bp;

    const Dataset data = load_dataset(cmd.dataset_dir);
    CouplingGroundTruth truth;
    if (!data.split.eval_aux.empty()) {
        const std::set<std::string> aux(data.split.eval_aux.begin(), data.split.eval_aux.end());
        const std::set<std::string> target(data.split.eval_target.begin(),
                                           data.split.eval_target.end());
        for (const auto& p : data.truth.pairs) {
            if (aux.count(p.first) && target.count(p.second)) truth.pairs.push_back(p);
        }
    } else {
        truth = data.truth;
    }

    for (const auto& policy_text : cmd.policies) {
        MatchCommand mc = base;
        mc.prune = PrunePolicy::parse(policy_text);
        mc.global.out_dir = cmd.global.out_dir + "/prune_" + policy_text;
        const MatchResult match = cmd_match(mc);

        const EvaluationReport rep = score(match.matches, truth, {cmd.table_threshold});
        PruneRow row;
        row.policy = policy_text;
        row.variable_nodes = match.variable_nodes;
        row.avg_factor_degree =
            static_cast<double>(match.variable_nodes) / std::max<size_t>(1, truth.pairs.size());
        row.precision = rep.rows.at(0).precision;
        row.recall = rep.rows.at(0).recall;
        row.accuracy = rep.accuracy;
        row.per_iteration_ms = match.per_iteration_ms;
        row.iterations = match.iterations;
        result.prune_rows.push_back(row);
    }

    std::ofstream csv(cmd.global.out_dir + "/prune_table.csv", std::ios::binary);
    csv << format_header({"prune_table", config_hash_of(echo), data.dataset_hash}) << "\n";
    csv << "# policy,variable_nodes,avg_factor_degree,precision,recall,accuracy,per_iteration_ms\n";
    for (const auto& row : result.prune_rows) {
        csv << row.policy << ',' << row.variable_nodes << ','
            << format_double(row.avg_factor_degree) << ',' << format_double(row.precision) << ','
            << format_double(row.recall) << ',' << format_double(row.accuracy) << ','
            << format_double(row.per_iteration_ms) << "\n";
    }
    return result;
}

}  // namespace matchrisk
