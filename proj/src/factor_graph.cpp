// Copyright 2026 The matchrisk Authors. Apache 2.0 licensed. See LICENSE in the project root.

#include "matchrisk/factor_graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace matchrisk {

PrunePolicy PrunePolicy::top_k(int k) {
    if (k < 1) throw InvalidConfig("topk budget must be >= 1");
    return {Kind::TopK, k};
}

PrunePolicy PrunePolicy::parse(const std::string& text) {
    if (text == "full") return full();
    if (text == "sqrt") return sqrt();
    if (text == "log") return log();
    if (text.rfind("topk:", 0) == 0) {
        const int k = std::stoi(text.substr(5));
        return top_k(k);
    }
    throw InvalidConfig("unknown prune policy: " + text);
}

std::string PrunePolicy::to_string() const {
    switch (kind) {
        case Kind::Full: return "full";
        case Kind::Sqrt: return "sqrt";
        case Kind::Log: return "log";
        case Kind::TopK: return "topk:" + std::to_string(k);
    }
    return "full";
}

int PrunePolicy::budget(int n_aux) const {
    switch (kind) {
        case Kind::Full: return n_aux;  // unused
        case Kind::Sqrt: return std::max(1, static_cast<int>(std::ceil(std::sqrt(n_aux))));
        case Kind::Log: return std::max(1, static_cast<int>(std::ceil(std::log2(n_aux))));
        case Kind::TopK: return std::max(1, k);
    }
    return n_aux;
}

namespace {

FactorGraph assemble(const Eigen::MatrixXd& s, std::vector<std::string> aux_ids,
                     std::vector<std::string> target_ids, const PrunePolicy& policy) {
    const int n = static_cast<int>(s.rows());
    const int m = static_cast<int>(s.cols());
    if (n == 0 || m == 0) throw EmptyInput("similarity matrix is empty");

    FactorGraph g;
    g.n_aux = n;
    g.m_target = m;
    g.aux_ids = std::move(aux_ids);
    g.target_ids = std::move(target_ids);

    // survives(i,j): pair kept as a variable node
    std::vector<char> keep(static_cast<size_t>(n) * m, policy.kind == PrunePolicy::Kind::Full);

    if (policy.kind != PrunePolicy::Kind::Full) {
        const int budget = policy.budget(n);

        // Top candidates of each auxiliary factor; ties by lower target index.
        std::vector<int> order;
        for (int i = 0; i < n; ++i) {
            order.resize(m);
            std::iota(order.begin(), order.end(), 0);
            const int take = std::min(budget, m);
            std::partial_sort(order.begin(), order.begin() + take, order.end(),
                              [&](int a, int b) {
                                  if (s(i, a) != s(i, b)) return s(i, a) > s(i, b);
                                  return a < b;
                              });
            for (int t = 0; t < take; ++t) keep[static_cast<size_t>(i) * m + order[t]] = 1;
        }
        // Top candidates of each target factor; ties by lower aux index.
        for (int j = 0; j < m; ++j) {
            order.resize(n);
            std::iota(order.begin(), order.end(), 0);
            const int take = std::min(budget, n);
            std::partial_sort(order.begin(), order.begin() + take, order.end(),
                              [&](int a, int b) {
                                  if (s(a, j) != s(b, j)) return s(a, j) > s(b, j);
                                  return a < b;
                              });
            for (int t = 0; t < take; ++t) keep[static_cast<size_t>(order[t]) * m + j] = 1;
        }
    }

    // Variables in row-major order; aux adjacency is contiguous by
    // construction, target adjacency gets an explicit index list.
    g.aux_offsets.assign(n + 1, 0);
    g.target_offsets.assign(m + 1, 0);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < m; ++j) {
            if (!keep[static_cast<size_t>(i) * m + j]) continue;
            g.var_aux.push_back(i);
            g.var_target.push_back(j);
            g.var_sim.push_back(s(i, j));
            ++g.aux_offsets[i + 1];
            ++g.target_offsets[j + 1];
        }
    }
    for (int i = 0; i < n; ++i) g.aux_offsets[i + 1] += g.aux_offsets[i];
    for (int j = 0; j < m; ++j) g.target_offsets[j + 1] += g.target_offsets[j];

    g.aux_vars.resize(g.variable_count());
    std::iota(g.aux_vars.begin(), g.aux_vars.end(), 0);

    g.target_vars.resize(g.variable_count());
    std::vector<int> cursor(m, 0);
    for (size_t v = 0; v < g.variable_count(); ++v) {
        const int j = g.var_target[v];
        g.target_vars[g.target_offsets[j] + cursor[j]] = static_cast<int>(v);
        ++cursor[j];
    }
    return g;
}

}  // namespace

FactorGraph build_factor_graph(const SimilarityMatrix& r, const PrunePolicy& policy) {
    return assemble(r.combined, r.aux_ids, r.target_ids, policy);
}

FactorGraph build_factor_graph(const Eigen::MatrixXd& combined, const PrunePolicy& policy) {
    std::vector<std::string> aux_ids, target_ids;
    aux_ids.reserve(combined.rows());
    target_ids.reserve(combined.cols());
    for (Eigen::Index i = 0; i < combined.rows(); ++i) aux_ids.push_back("a" + std::to_string(i));
    for (Eigen::Index j = 0; j < combined.cols(); ++j)
        target_ids.push_back("t" + std::to_string(j));
    return assemble(combined, std::move(aux_ids), std::move(target_ids), policy);
}

}  // namespace matchrisk
