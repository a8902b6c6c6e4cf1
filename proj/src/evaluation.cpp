// Copyright 2026 The matchrisk Authors. Apache 2.0 licensed. See LICENSE in the project root.

#include "matchrisk/evaluation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <set>

#include "matchrisk/math.hpp"

namespace matchrisk {

EvaluationReport score(const MatchSet& matches, const CouplingGroundTruth& truth,
                       const std::vector<double>& thresholds) {
    if (truth.pairs.empty()) throw EmptyGroundTruth("score: ground truth is empty");

    std::set<IdPair> truth_set(truth.pairs.begin(), truth.pairs.end());

    EvaluationReport report;
    report.truth_size = static_cast<long>(truth.pairs.size());
    for (const auto& m : matches.matches) {
        if (truth_set.count({m.aux_id, m.target_id})) ++report.correct_matches;
    }
    report.accuracy =
        static_cast<double>(report.correct_matches) / static_cast<double>(report.truth_size);
    report.epsilon = 100.0 * report.accuracy;

    for (const double t : thresholds) {
        ScoreRow row;
        row.threshold = t;
        for (const auto& m : matches.matches) {
            if (m.score < t) continue;
            if (truth_set.count({m.aux_id, m.target_id})) {
                ++row.tp;
            } else {
                ++row.fp;
            }
        }
        row.fn = report.truth_size - row.tp;
        if (row.tp + row.fp > 0) {
            row.precision = static_cast<double>(row.tp) / static_cast<double>(row.tp + row.fp);
        } else {
            row.precision = 1.0;
            row.zero_denominator = true;
        }
        row.recall = static_cast<double>(row.tp) / static_cast<double>(report.truth_size);
        report.rows.push_back(row);
    }
    return report;
}

double epsilon_accuracy(const MatchSet& matches, const CouplingGroundTruth& truth) {
    return score(matches, truth, {}).epsilon;
}

SufficientConditionResult sufficient_condition_rate(const std::vector<TraceRow>& trace,
                                                    const CouplingGroundTruth& truth,
                                                    const MatchSet* matches) {
    if (trace.empty()) throw TraceUnavailable("sufficient_condition_rate: trace is empty");

    std::set<IdPair> correct;
    if (matches) {
        std::set<IdPair> truth_set(truth.pairs.begin(), truth.pairs.end());
        for (const auto& m : matches->matches) {
            if (truth_set.count({m.aux_id, m.target_id})) correct.insert({m.aux_id, m.target_id});
        }
    }

    std::set<IdPair> truth_set(truth.pairs.begin(), truth.pairs.end());
    SufficientConditionResult result;
    long holds_all = 0, holds_correct = 0;
    bool any_movement = false;
    for (const auto& row : trace) {
        const IdPair pair{row.aux_id, row.target_id};
        if (!truth_set.count(pair)) continue;
        ++result.surviving_pairs;
        if (row.iter2 != row.iter1) any_movement = true;
        const bool holds = row.iter2 > row.iter1;
        if (holds) ++holds_all;
        if (correct.count(pair)) {
            ++result.correct_pairs;
            if (holds) ++holds_correct;
        }
    }
    if (result.surviving_pairs > 0) {
        result.rate_all = static_cast<double>(holds_all) /
                          static_cast<double>(result.surviving_pairs);
    }
    if (result.correct_pairs > 0) {
        result.rate_correct =
            static_cast<double>(holds_correct) / static_cast<double>(result.correct_pairs);
    }
    result.degenerate = !any_movement;
    return result;
}

VarianceSegmentReport variance_segmentation(const SimilarityMatrix& r,
                                            const CouplingGroundTruth& truth,
                                            double variance_threshold, VarianceMode mode,
                                            const MatchSet& matches,
                                            const std::vector<double>& thresholds) {
    VarianceSegmentReport out;
    out.variance_threshold = variance_threshold;
    out.mode = mode;

    std::set<std::string> selected;
    for (Eigen::Index j = 0; j < r.combined.cols(); ++j) {
        const double var = population_variance(r.combined.col(j));
        const bool take = mode == VarianceMode::High ? var > variance_threshold
                                                     : var < variance_threshold;
        if (take) {
            selected.insert(r.target_ids[static_cast<size_t>(j)]);
            out.selected_targets.push_back(r.target_ids[static_cast<size_t>(j)]);
        }
    }

    CouplingGroundTruth sub_truth;
    for (const auto& p : truth.pairs) {
        if (selected.count(p.second)) sub_truth.pairs.push_back(p);
    }
    MatchSet sub_matches;
    for (const auto& m : matches.matches) {
        if (selected.count(m.target_id)) sub_matches.matches.push_back(m);
    }

    if (selected.empty() || sub_truth.pairs.empty()) {
        out.empty_segment = true;
        return out;
    }
    out.report = score(sub_matches, sub_truth, thresholds);
    return out;
}

BenchResult bench_scaling(const std::vector<std::pair<int, int>>& sizes,
                          const std::function<Eigen::MatrixXd(int, int)>& generator,
                          const std::vector<BenchAlgorithm>& algorithms) {
    using Clock = std::chrono::steady_clock;
    BenchResult result;

    for (const auto& [n, m] : sizes) {
        const Eigen::MatrixXd r = generator(n, m);
        for (const auto& algo : algorithms) {
            std::vector<double> samples;
            for (int rep = 0; rep < 3; ++rep) {
                const auto start = Clock::now();
                for (int k = 0; k < algo.inner_repeats; ++k) algo.run(r);
                const auto end = Clock::now();
                samples.push_back(
                    std::chrono::duration<double, std::milli>(end - start).count() /
                    static_cast<double>(algo.inner_repeats));
            }
            std::sort(samples.begin(), samples.end());
            BenchRow row;
            row.algorithm = algo.name;
            row.n = n;
            row.m = m;
            row.size_measure = algo.size_measure(n, m);
            row.median_ms = samples[1];
            result.rows.push_back(row);
        }
    }

    if (sizes.size() >= 3) {
        result.slope_available = true;
        for (const auto& algo : algorithms) {
            Eigen::VectorXd x(static_cast<Eigen::Index>(sizes.size()));
            Eigen::VectorXd y(static_cast<Eigen::Index>(sizes.size()));
            Eigen::Index k = 0;
            for (const auto& row : result.rows) {
                if (row.algorithm != algo.name) continue;
                x[k] = std::log(row.size_measure);
                y[k] = std::log(std::max(row.median_ms, 1e-6));
                ++k;
            }
            result.slope[algo.name] = least_squares_fit(x.head(k), y.head(k)).first;
        }
    }
    return result;
}

}  // namespace matchrisk
