// Copyright 2026 The matchrisk Authors. Apache 2.0 licensed. See LICENSE in the project root.

#include "matchrisk/bp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "matchrisk/parallel.hpp"

namespace matchrisk {

MarginalNorm parse_marginal_norm(const std::string& text) {
    if (text == "raw") return MarginalNorm::Raw;
    if (text == "per-target") return MarginalNorm::PerTarget;
    if (text == "per-aux") return MarginalNorm::PerAux;
    throw InvalidConfig("unknown marginal normalization: " + text);
}

std::string to_string(MarginalNorm norm) {
    switch (norm) {
        case MarginalNorm::Raw: return "raw";
        case MarginalNorm::PerTarget: return "per-target";
        case MarginalNorm::PerAux: return "per-aux";
    }
    return "raw";
}

namespace {

// Above this factor degree the neighborhood products move to the log
// domain; (1-mu)^deg underflows once messages sharpen on large graphs.
constexpr int kLogDomainDegree = 64;

/// One factor family's update. For every member variable x of the factor:
///   out_raw[x] = sim[x] * prod over other members d of (1 - mu[d])
/// then the outgoing set is normalized to sum to 1. An all-zero outgoing
/// set carries no information; the factor keeps its previous messages (or
/// uniform on the first iteration). Products use prefix/suffix sweeps, so
/// the cost is linear in the factor degree and exact zeros need no special
/// treatment.
void update_factor_family(const std::vector<int>& offsets, const std::vector<int>& members,
                          const std::vector<double>& sim, const std::vector<double>& mu,
                          const std::vector<double>& out_prev, std::vector<double>& out,
                          std::vector<double>& scratch, int factor, double damping,
                          bool first_iteration) {
    const int begin = offsets[factor];
    const int end = offsets[factor + 1];
    const int deg = end - begin;
    if (deg == 0) return;

    scratch.resize(static_cast<size_t>(deg) * 2);
    double* prefix = scratch.data();
    double* suffix = scratch.data() + deg;

    if (deg <= kLogDomainDegree) {
        double acc = 1.0;
        for (int k = 0; k < deg; ++k) {
            prefix[k] = acc;
            acc *= 1.0 - mu[members[begin + k]];
        }
        acc = 1.0;
        for (int k = deg - 1; k >= 0; --k) {
            suffix[k] = acc;
            acc *= 1.0 - mu[members[begin + k]];
        }
        for (int k = 0; k < deg; ++k) {
            out[members[begin + k]] = sim[members[begin + k]] * prefix[k] * suffix[k];
        }
    } else {
        double acc = 0.0;
        for (int k = 0; k < deg; ++k) {
            prefix[k] = acc;
            acc += std::log1p(-mu[members[begin + k]]);  // -inf on exact 1 is fine
        }
        acc = 0.0;
        for (int k = deg - 1; k >= 0; --k) {
            suffix[k] = acc;
            acc += std::log1p(-mu[members[begin + k]]);
        }
        for (int k = 0; k < deg; ++k) {
            out[members[begin + k]] = sim[members[begin + k]] * std::exp(prefix[k] + suffix[k]);
        }
    }

    double z = 0.0;
    for (int k = begin; k < end; ++k) z += out[members[k]];

    if (z <= 0.0) {
        if (first_iteration) {
            const double uniform = 1.0 / static_cast<double>(deg);
            for (int k = begin; k < end; ++k) out[members[k]] = uniform;
        } else {
            for (int k = begin; k < end; ++k) out[members[k]] = out_prev[members[k]];
        }
        return;
    }

    const double inv_z = 1.0 / z;
    if (damping > 0.0 && !first_iteration) {
        for (int k = begin; k < end; ++k) {
            const int x = members[k];
            out[x] = (1.0 - damping) * out[x] * inv_z + damping * out_prev[x];
        }
    } else {
        for (int k = begin; k < end; ++k) out[members[k]] *= inv_z;
    }
}

void normalize_by_factor(const std::vector<int>& offsets, const std::vector<int>& members,
                         int factors, std::vector<double>& values) {
    for (int f = 0; f < factors; ++f) {
        double z = 0.0;
        for (int k = offsets[f]; k < offsets[f + 1]; ++k) z += values[members[k]];
        if (z <= 0.0) continue;
        const double inv = 1.0 / z;
        for (int k = offsets[f]; k < offsets[f + 1]; ++k) values[members[k]] *= inv;
    }
}

}  // namespace

MarginalTable run_bp(const FactorGraph& g, const BpConfig& config) {
    const size_t nv = g.variable_count();
    MarginalTable table;
    if (nv == 0) return table;
    if (config.damping < 0.0 || config.damping > 0.9) {
        throw InvalidConfig("damping must lie in [0, 0.9]");
    }

    // Variable -> factor messages, initialized to 1/degree of the receiving
    // factor (the uniform start; 1/N on the full graph).
    std::vector<double> mu_to_aux(nv), mu_to_target(nv);
    for (size_t v = 0; v < nv; ++v) {
        mu_to_aux[v] = 1.0 / static_cast<double>(g.aux_degree(g.var_aux[v]));
        mu_to_target[v] = 1.0 / static_cast<double>(g.target_degree(g.var_target[v]));
    }

    std::vector<double> lambda(nv, 0.0), beta(nv, 0.0);
    std::vector<double> lambda_prev(nv, 0.0), beta_prev(nv, 0.0);
    std::vector<double> marginal_prev(nv, 0.0);
    table.marginal.assign(nv, 0.0);

    uint64_t updates = 0;
    const int workers = std::max(1, config.workers);

    for (int iter = 1; iter <= config.max_iters; ++iter) {
        const bool first = iter == 1;

        if (!first) {
            // Each variable has exactly two neighbors, so its message to one
            // factor is simply the other factor's previous message.
            parallel_for(0, nv, workers, [&](size_t v) {
                mu_to_aux[v] = beta_prev[v];
                mu_to_target[v] = lambda_prev[v];
            });
        }
        updates += 2 * nv;

        parallel_for(0, static_cast<size_t>(g.n_aux), workers, [&](size_t i) {
            thread_local std::vector<double> scratch;
            update_factor_family(g.aux_offsets, g.aux_vars, g.var_sim, mu_to_aux, lambda_prev,
                                 lambda, scratch, static_cast<int>(i), config.damping, first);
        });
        parallel_for(0, static_cast<size_t>(g.m_target), workers, [&](size_t j) {
            thread_local std::vector<double> scratch;
            update_factor_family(g.target_offsets, g.target_vars, g.var_sim, mu_to_target,
                                 beta_prev, beta, scratch, static_cast<int>(j), config.damping,
                                 first);
        });
        updates += 2 * nv;  // one outgoing message per (factor, variable) edge

        // Marginal of each pair: product of its two incoming messages.
        for (size_t v = 0; v < nv; ++v) table.marginal[v] = lambda[v] * beta[v];
        switch (config.marginal_norm) {
            case MarginalNorm::Raw: break;
            case MarginalNorm::PerTarget:
                normalize_by_factor(g.target_offsets, g.target_vars, g.m_target, table.marginal);
                break;
            case MarginalNorm::PerAux:
                normalize_by_factor(g.aux_offsets, g.aux_vars, g.n_aux, table.marginal);
                break;
        }

        if (iter == 1) table.iter1 = table.marginal;
        if (iter == 2) table.iter2 = table.marginal;

        table.iterations_run = iter;
        if (!first) {
            double delta = 0.0;
            for (size_t v = 0; v < nv; ++v) {
                delta = std::max(delta, std::abs(table.marginal[v] - marginal_prev[v]));
            }
            table.max_delta_history.push_back(delta);
            if (delta < config.tol) {
                table.converged = true;
                break;
            }
        }

        marginal_prev = table.marginal;
        lambda_prev = lambda;
        beta_prev = beta;
    }

    if (table.iter2.empty()) table.iter2 = table.marginal;  // single-iteration runs
    table.message_updates = updates;
    return table;
}

MatchSet extract_matching(const FactorGraph& g, const MarginalTable& m, double threshold,
                          MatchMode mode) {
    MatchSet out;
    const size_t nv = g.variable_count();
    if (nv == 0 || m.marginal.size() != nv) return out;

    std::vector<int> order(nv);
    std::iota(order.begin(), order.end(), 0);
    const auto better = [&](int a, int b) {
        if (m.marginal[a] != m.marginal[b]) return m.marginal[a] > m.marginal[b];
        if (g.var_sim[a] != g.var_sim[b]) return g.var_sim[a] > g.var_sim[b];
        if (g.var_aux[a] != g.var_aux[b]) return g.var_aux[a] < g.var_aux[b];
        return g.var_target[a] < g.var_target[b];
    };

    if (mode == MatchMode::OneToOne) {
        std::sort(order.begin(), order.end(), better);
        std::vector<char> aux_used(g.n_aux, 0), target_used(g.m_target, 0);
        for (const int v : order) {
            if (m.marginal[v] < threshold) break;  // sorted, nothing below can clear it
            if (aux_used[g.var_aux[v]] || target_used[g.var_target[v]]) continue;
            aux_used[g.var_aux[v]] = target_used[g.var_target[v]] = 1;
            out.matches.push_back(
                {g.aux_ids[g.var_aux[v]], g.target_ids[g.var_target[v]], m.marginal[v]});
        }
    } else {
        for (int j = 0; j < g.m_target; ++j) {
            int best = -1;
            for (int k = g.target_offsets[j]; k < g.target_offsets[j + 1]; ++k) {
                const int v = g.target_vars[k];
                if (best < 0 || better(v, best)) best = v;
            }
            if (best >= 0 && m.marginal[best] >= threshold) {
                out.matches.push_back(
                    {g.aux_ids[g.var_aux[best]], g.target_ids[j], m.marginal[best]});
            }
        }
    }
    return out;
}

std::vector<RankedCandidate> targeted_rank(const FactorGraph& g, const MarginalTable& m,
                                           const std::string& target_id) {
    int j = -1;
    for (int t = 0; t < g.m_target; ++t) {
        if (g.target_ids[t] == target_id) {
            j = t;
            break;
        }
    }
    if (j < 0) throw UnknownUser("targeted_rank: unknown target " + target_id);

    std::vector<int> vars(g.target_vars.begin() + g.target_offsets[j],
                          g.target_vars.begin() + g.target_offsets[j + 1]);
    std::sort(vars.begin(), vars.end(), [&](int a, int b) {
        if (m.marginal[a] != m.marginal[b]) return m.marginal[a] > m.marginal[b];
        if (g.var_sim[a] != g.var_sim[b]) return g.var_sim[a] > g.var_sim[b];
        return g.var_aux[a] < g.var_aux[b];
    });

    std::vector<RankedCandidate> ranked;
    ranked.reserve(vars.size());
    for (const int v : vars) {
        ranked.push_back({g.aux_ids[g.var_aux[v]], m.marginal[v], g.var_sim[v]});
    }
    return ranked;
}

}  // namespace matchrisk
