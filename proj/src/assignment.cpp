// Copyright 2026 The matchrisk Authors. Apache 2.0 licensed. See LICENSE in the project root.

#include "matchrisk/assignment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace matchrisk {

Assignment hungarian(const Eigen::MatrixXd& similarity) {
    const int rows = static_cast<int>(similarity.rows());
    const int cols = static_cast<int>(similarity.cols());
    if (rows == 0 || cols == 0) throw EmptyInput("hungarian: empty similarity matrix");

    // Minimization form on a square matrix: cost = max_sim - sim, padding
    // cells carry similarity 0.
    const int n = std::max(rows, cols);
    const double max_sim = similarity.maxCoeff();
    Eigen::MatrixXd cost = Eigen::MatrixXd::Constant(n, n, max_sim);
    cost.topLeftCorner(rows, cols) = (max_sim - similarity.array()).matrix();

    constexpr double kInf = std::numeric_limits<double>::infinity();
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0), minv(n + 1);
    std::vector<int> p(n + 1, 0), way(n + 1, 0);

    for (int i = 1; i <= n; ++i) {
        p[0] = i;
        int j0 = 0;
        std::fill(minv.begin(), minv.end(), kInf);
        std::vector<char> used(n + 1, 0);
        do {
            used[j0] = 1;
            const int i0 = p[j0];
            int j1 = -1;
            double delta = kInf;
            for (int j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            const int j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0 != 0);
    }

    Assignment out;
    for (int j = 1; j <= n; ++j) {
        const int i = p[j];
        if (i == 0 || i > rows || j > cols) continue;  // padding
        out.pairs.emplace_back(i - 1, j - 1);
        out.total_similarity += similarity(i - 1, j - 1);
    }
    std::sort(out.pairs.begin(), out.pairs.end());
    out.objective_value = out.total_similarity;
    return out;
}

Assignment hungarian(const SimilarityMatrix& r) { return hungarian(r.combined); }

MatchSet threshold_classifier(const SimilarityMatrix& r, double threshold) {
    MatchSet out;
    for (Eigen::Index i = 0; i < r.combined.rows(); ++i) {
        for (Eigen::Index j = 0; j < r.combined.cols(); ++j) {
            if (r.combined(i, j) >= threshold) {
                out.matches.push_back({r.aux_ids[static_cast<size_t>(i)],
                                       r.target_ids[static_cast<size_t>(j)], r.combined(i, j)});
            }
        }
    }
    return out;
}

namespace {

// Enumerates complete matchings only: exactly min(rows, cols) pairs, with
// rows - cols skips permitted when rows outnumber columns.
void enumerate(const Eigen::MatrixXd& s, int row, int skips_left, std::vector<char>& used,
               std::vector<int>& chosen, AssignmentObjective objective, double value,
               double sum, Assignment& best, bool& have_best) {
    const int rows = static_cast<int>(s.rows());
    const int cols = static_cast<int>(s.cols());
    if (row == rows) {
        if (!have_best || value > best.objective_value) {
            have_best = true;
            best.objective_value = value;
            best.total_similarity = sum;
            best.pairs.clear();
            for (int i = 0; i < rows; ++i) {
                if (chosen[i] >= 0) best.pairs.emplace_back(i, chosen[i]);
            }
        }
        return;
    }
    for (int j = 0; j < cols; ++j) {
        if (used[j]) continue;
        used[j] = 1;
        chosen[row] = j;
        const double next = objective == AssignmentObjective::MaxSum ? value + s(row, j)
                                                                     : value * s(row, j);
        enumerate(s, row + 1, skips_left, used, chosen, objective, next, sum + s(row, j), best,
                  have_best);
        used[j] = 0;
        chosen[row] = -1;
    }
    if (skips_left > 0) {
        enumerate(s, row + 1, skips_left - 1, used, chosen, objective, value, sum, best,
                  have_best);
    }
}

}  // namespace

Assignment brute_force_assignment(const Eigen::MatrixXd& similarity,
                                  AssignmentObjective objective) {
    const int rows = static_cast<int>(similarity.rows());
    const int cols = static_cast<int>(similarity.cols());
    if (rows == 0 || cols == 0) throw EmptyInput("brute_force_assignment: empty matrix");
    if (std::max(rows, cols) > 8) {
        throw TooLarge("brute_force_assignment caps at 8x8");
    }

    Assignment best;
    bool have_best = false;
    std::vector<char> used(cols, 0);
    std::vector<int> chosen(rows, -1);
    const double seed_value = objective == AssignmentObjective::MaxSum ? 0.0 : 1.0;
    const int skips = std::max(0, rows - cols);
    enumerate(similarity, 0, skips, used, chosen, objective, seed_value, 0.0, best, have_best);
    return best;
}

}  // namespace matchrisk
