// Copyright 2026 The matchrisk Authors. Apache 2.0 licensed. See LICENSE in the project root.

#include "matchrisk/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "matchrisk/rng.hpp"

namespace matchrisk {

namespace {

void validate(const SynthConfig& cfg) {
    if (cfg.n_users < 2) throw InvalidConfig("n_users must be >= 2");
    if (cfg.n_target_users == 0 || cfg.n_target_users < -1) {
        throw InvalidConfig("n_target_users must be positive (or -1 for all)");
    }
    if (cfg.n_target_users > cfg.n_users) {
        throw InvalidConfig("n_target_users cannot exceed n_users");
    }
    if (cfg.vertex_overlap <= 0.0 || cfg.vertex_overlap > 1.0) {
        throw InvalidConfig("vertex_overlap must lie in (0, 1]");
    }
    if (cfg.edge_overlap <= 0.0 || cfg.edge_overlap > 1.0) {
        throw InvalidConfig("edge_overlap must lie in (0, 1]");
    }
    for (const auto& [name, rate] : cfg.missing_rate) {
        if (rate < 0.0 || rate > 1.0) throw InvalidConfig("missing rate out of [0,1]: " + name);
    }
    if (cfg.private_user_fraction < 0.0 || cfg.private_user_fraction > 1.0 ||
        cfg.private_missing < 0.0 || cfg.private_missing > 1.0) {
        throw InvalidConfig("privacy parameters must lie in [0,1]");
    }
    for (const auto& [name, betas] : cfg.channel_betas) {
        if (betas.coupled_alpha <= 0.0 || betas.coupled_beta <= 0.0 ||
            betas.uncoupled_alpha <= 0.0 || betas.uncoupled_beta <= 0.0) {
            throw InvalidConfig("beta parameters must be positive: " + name);
        }
    }
    if (cfg.name_typo_rate < 0.0 || cfg.name_typo_rate > 1.0 || cfg.gender_flip_rate < 0.0 ||
        cfg.gender_flip_rate > 1.0) {
        throw InvalidConfig("noise rates must lie in [0,1]");
    }
    if (cfg.graph_model.kind == GraphModel::Kind::PreferentialAttachment &&
        cfg.graph_model.pa_m < 1) {
        throw InvalidConfig("preferential attachment needs pa_m >= 1");
    }
    if (cfg.graph_model.kind == GraphModel::Kind::ErdosRenyi &&
        (cfg.graph_model.er_p < 0.0 || cfg.graph_model.er_p > 1.0)) {
        throw InvalidConfig("erdos-renyi p must lie in [0,1]");
    }
    if (cfg.activity_events < 1) throw InvalidConfig("activity_events must be >= 1");
    if (cfg.n_cities < 1) throw InvalidConfig("n_cities must be >= 1");
    if (cfg.train_coupled < 0 || cfg.train_uncoupled < 0) {
        throw InvalidConfig("training pair counts must be non-negative");
    }
}

}  // namespace

EdgeList generate_base_graph(const SynthConfig& cfg, uint64_t seed) {
    validate(cfg);
    Rng rng(seed);
    const int n = cfg.n_users;
    EdgeList edges;

    if (cfg.graph_model.kind == GraphModel::Kind::ErdosRenyi) {
        const double p = cfg.graph_model.er_p;
        for (int u = 0; u < n; ++u) {
            for (int v = u + 1; v < n; ++v) {
                if (rng.bernoulli(p)) edges.emplace_back(u, v);
            }
        }
        return edges;
    }

    // Preferential attachment from a two-node seed; each joining node links
    // to pa_m distinct existing nodes drawn proportional to degree.
    const int m = std::min(cfg.graph_model.pa_m, n - 1);
    edges.emplace_back(0, 1);
    std::vector<int> repeated = {0, 1};  // one entry per unit of degree
    for (int u = 2; u < n; ++u) {
        std::set<int> targets;
        const int want = std::min(m, u);
        while (static_cast<int>(targets.size()) < want) {
            targets.insert(repeated[rng.uniform_index(repeated.size())]);
        }
        for (const int v : targets) {
            edges.emplace_back(v, u);
            repeated.push_back(v);
            repeated.push_back(u);
        }
    }
    return edges;
}

GraphViews sample_views(const EdgeList& base, const SynthConfig& cfg, uint64_t seed) {
    if (base.empty()) throw EmptyInput("sample_views: base graph has no edges");
    Rng rng(seed);
    const double ov = cfg.edge_overlap;
    const double inclusion = std::min(1.0, 2.0 * ov / (1.0 + ov));
    GraphViews views;
    for (const auto& e : base) {
        if (rng.bernoulli(inclusion)) views.aux_edges.push_back(e);
        if (rng.bernoulli(inclusion)) views.target_edges.push_back(e);
    }
    return views;
}

namespace {

constexpr int64_t kEpochBase = 1700000000;  // fixed reference instant
constexpr int64_t kActivityWindowS = 30LL * 86400LL;

struct Persona {
    std::string name;
    Gender gender = Gender::Unknown;
    double lat = 0.0, lon = 0.0;
    std::vector<int64_t> activity;
    bool privacy_cautious = false;
};

std::string mutate_name(const std::string& name, double typo_rate, Rng& rng) {
    std::string out;
    out.reserve(name.size() + 2);
    for (const char c : name) {
        if (!rng.bernoulli(typo_rate)) {
            out.push_back(c);
            continue;
        }
        switch (rng.uniform_index(3)) {
            case 0:  // substitute
                out.push_back(static_cast<char>('a' + rng.uniform_index(26)));
                break;
            case 1:  // delete
                break;
            default:  // insert before
                out.push_back(static_cast<char>('a' + rng.uniform_index(26)));
                out.push_back(c);
                break;
        }
    }
    if (out.empty()) out.push_back(name.empty() ? 'x' : name[0]);
    return out;
}

std::string padded_id(char prefix, int index, int width) {
    std::string digits = std::to_string(index);
    std::string out(1, prefix);
    out.append(width > static_cast<int>(digits.size()) ? width - digits.size() : 0, '0');
    out += digits;
    return out;
}

double missing_rate_of(const SynthConfig& cfg, const std::string& channel, bool privacy_cautious) {
    const auto it = cfg.missing_rate.find(channel);
    const double base = it == cfg.missing_rate.end() ? 0.0 : it->second;
    return privacy_cautious ? std::max(base, cfg.private_missing) : base;
}

}  // namespace

SynthDataset generate_dataset(const SynthConfig& cfg) {
    validate(cfg);
    Rng root(cfg.seed);
    Rng graph_rng = root.fork(1);
    Rng views_rng = root.fork(2);
    Rng persona_rng = root.fork(3);
    Rng split_rng = root.fork(4);
    Rng channel_rng = root.fork(5);
    Rng id_rng = root.fork(6);

    const int n = cfg.n_users;
    const int n_target = cfg.n_target_users < 0 ? n : cfg.n_target_users;

    // --- base graph and the two sampled views -----------------------------
    const EdgeList base = generate_base_graph(cfg, graph_rng.next_u64());
    const GraphViews views = sample_views(base, cfg, views_rng.next_u64());

    // Target view keeps a random persona subset when the two populations
    // differ in size; everything else stays aux-only background.
    std::vector<int> persona_order(n);
    std::iota(persona_order.begin(), persona_order.end(), 0);
    id_rng.shuffle(persona_order);
    std::vector<char> in_target(n, 0);
    for (int k = 0; k < n_target; ++k) in_target[persona_order[k]] = 1;

    // Training personas are fixed up front: their profiles keep the base
    // noise level (coupled training pairs come from verified cross-links),
    // everyone else gets eval_noise_multiplier applied.
    std::vector<int> coupled;
    for (int k = 0; k < n; ++k)
        if (in_target[k]) coupled.push_back(k);
    split_rng.shuffle(coupled);
    if (cfg.train_coupled > static_cast<int>(coupled.size())) {
        throw InvalidConfig("not enough coupled personas for the requested training pairs");
    }
    std::vector<int> train_personas(coupled.begin(), coupled.begin() + cfg.train_coupled);
    std::vector<int> eval_personas(coupled.begin() + cfg.train_coupled, coupled.end());
    if (cfg.eval_users >= 0) {
        if (cfg.eval_users > static_cast<int>(eval_personas.size())) {
            throw InvalidConfig("not enough personas left for the requested eval slice");
        }
        eval_personas.resize(cfg.eval_users);
    }
    std::vector<char> is_train(n, 0);
    for (const int k : train_personas) is_train[k] = 1;

    // --- personas ----------------------------------------------------------
    // Names are drawn by their real-world frequency, so common names carry
    // genuine impostor clusters the matcher has to disambiguate.
    std::vector<std::string> name_pool;
    std::vector<double> name_cdf;
    {
        double total = 0.0;
        for (const auto& [name, counts] : NameGenderTable::builtin().rows()) {
            name_pool.push_back(name);
            total += static_cast<double>(counts.first + counts.second);
            name_cdf.push_back(total);
        }
        for (auto& c : name_cdf) c /= total;
    }
    auto draw_name = [&](Rng& rng) {
        const double u = rng.uniform();
        const auto it = std::lower_bound(name_cdf.begin(), name_cdf.end(), u);
        return name_pool[std::min(name_pool.size() - 1,
                                  static_cast<size_t>(it - name_cdf.begin()))];
    };

    const int n_cities = std::max(1, cfg.n_cities);
    std::vector<std::pair<double, double>> cities(n_cities);
    for (auto& [clat, clon] : cities) {
        clat = persona_rng.uniform(27.0, 47.0);
        clon = persona_rng.uniform(-122.0, -69.0);
    }

    std::vector<Persona> personas(n);
    for (int k = 0; k < n; ++k) {
        Persona& p = personas[k];
        // Training personas are harvested through their public cross-links,
        // which selects for users who share; the privacy-cautious tier only
        // exists outside the training split.
        p.privacy_cautious = !is_train[k] && persona_rng.bernoulli(cfg.private_user_fraction);
        p.name = draw_name(persona_rng);
        const auto probs = NameGenderTable::builtin().lookup(p.name);
        p.gender = persona_rng.bernoulli(probs ? probs->first : 0.5) ? Gender::M : Gender::F;
        const auto& [clat, clon] = cities[persona_rng.uniform_index(cities.size())];
        p.lat = std::clamp(clat + persona_rng.normal(0.0, cfg.intra_city_km / 111.0), -90.0, 90.0);
        p.lon = std::clamp(clon + persona_rng.normal(0.0, cfg.intra_city_km / 111.0), -180.0, 180.0);
        p.activity.resize(cfg.activity_events);
        for (auto& t : p.activity) {
            t = kEpochBase + static_cast<int64_t>(persona_rng.uniform() * kActivityWindowS);
        }
        std::sort(p.activity.begin(), p.activity.end());
    }

    // --- per-view profiles ---------------------------------------------------
    const int aux_width = static_cast<int>(std::to_string(n - 1).size());
    const int target_width = aux_width;

    std::vector<int> aux_index(n), target_index(n);
    std::iota(aux_index.begin(), aux_index.end(), 0);
    id_rng.shuffle(aux_index);
    {
        std::vector<int> targets;
        for (int k = 0; k < n; ++k)
            if (in_target[k]) targets.push_back(k);
        std::vector<int> slots(targets.size());
        std::iota(slots.begin(), slots.end(), 0);
        id_rng.shuffle(slots);
        target_index.assign(n, -1);
        for (size_t i = 0; i < targets.size(); ++i) target_index[targets[i]] = slots[i];
    }

    SynthDataset out;
    std::vector<std::string> aux_id_of(n), target_id_of(n);
    std::map<std::string, std::map<std::string, bool>> shares;  // user id -> channel -> flag

    auto make_profile = [&](int k, NetworkTag tag, const std::string& id, Rng& rng) {
        const Persona& p = personas[k];
        const double mult = is_train[k] ? 1.0 : std::max(1.0, cfg.eval_noise_multiplier);
        UserProfile profile;
        profile.user_id = id;
        profile.network_tag = tag;
        AttributeRecord& rec = profile.attributes;

        if (!rng.bernoulli(missing_rate_of(cfg, "name", p.privacy_cautious))) {
            rec.name = mutate_name(p.name, std::min(0.9, cfg.name_typo_rate * mult), rng);
        }

        if (!rng.bernoulli(missing_rate_of(cfg, "location", p.privacy_cautious))) {
            const double jitter = cfg.location_jitter_km * mult;
            const double dlat = rng.normal(0.0, jitter / 111.0);
            const double cos_lat = std::max(0.2, std::cos(p.lat * M_PI / 180.0));
            const double dlon = rng.normal(0.0, jitter / (111.0 * cos_lat));
            rec.location = Coordinates{std::clamp(p.lat + dlat, -90.0, 90.0),
                                       std::clamp(p.lon + dlon, -180.0, 180.0)};
        }

        if (!rng.bernoulli(missing_rate_of(cfg, "gender", p.privacy_cautious))) {
            Gender gender = p.gender;
            if (rng.bernoulli(std::min(0.5, cfg.gender_flip_rate * mult))) {
                gender = gender == Gender::M ? Gender::F : Gender::M;
            }
            rec.gender = gender;
        } else {
            rec.gender = Gender::Unknown;
        }

        if (!rng.bernoulli(missing_rate_of(cfg, "activity", p.privacy_cautious))) {
            std::vector<int64_t> times = p.activity;
            for (auto& t : times) {
                t += static_cast<int64_t>(
                    std::llround(rng.normal(0.0, cfg.activity_offset_s * mult)));
            }
            std::sort(times.begin(), times.end());
            rec.activity_times = std::move(times);
        }

        rec.graph_node = id;

        for (const auto& [channel, betas] : cfg.channel_betas) {
            const bool share = !rng.bernoulli(missing_rate_of(cfg, channel, p.privacy_cautious));
            rec.external_channels[channel] = share;
            shares[id][channel] = share;
        }
        return profile;
    };

    for (int k = 0; k < n; ++k) {
        aux_id_of[k] = padded_id('a', aux_index[k], aux_width);
        out.aux_profiles.push_back(
            make_profile(k, NetworkTag::Auxiliary, aux_id_of[k], persona_rng));
        if (in_target[k]) {
            target_id_of[k] = padded_id('t', target_index[k], target_width);
            out.target_profiles.push_back(
                make_profile(k, NetworkTag::Target, target_id_of[k], persona_rng));
            out.truth.pairs.emplace_back(aux_id_of[k], target_id_of[k]);
        }
    }

    auto by_id = [](const UserProfile& a, const UserProfile& b) { return a.user_id < b.user_id; };
    std::sort(out.aux_profiles.begin(), out.aux_profiles.end(), by_id);
    std::sort(out.target_profiles.begin(), out.target_profiles.end(), by_id);
    std::sort(out.truth.pairs.begin(), out.truth.pairs.end());

    for (const auto& [u, v] : views.aux_edges) {
        out.aux_edges.emplace_back(aux_id_of[u], aux_id_of[v]);
    }
    for (const auto& [u, v] : views.target_edges) {
        if (in_target[u] && in_target[v]) {
            out.target_edges.emplace_back(target_id_of[u], target_id_of[v]);
        }
    }

    // --- train / eval split -------------------------------------------------
    for (const int k : train_personas) {
        out.split.train_coupled.emplace_back(aux_id_of[k], target_id_of[k]);
    }
    if (cfg.train_uncoupled > 0) {
        if (train_personas.size() < 2) {
            throw InvalidConfig("uncoupled training pairs need at least 2 training personas");
        }
        std::set<std::pair<int, int>> seen;
        while (static_cast<int>(out.split.train_uncoupled.size()) < cfg.train_uncoupled) {
            const int a = train_personas[split_rng.uniform_index(train_personas.size())];
            const int t = train_personas[split_rng.uniform_index(train_personas.size())];
            if (a == t) continue;
            if (!seen.insert({a, t}).second) continue;
            out.split.train_uncoupled.emplace_back(aux_id_of[a], target_id_of[t]);
        }
    }

    std::set<int> train_set(train_personas.begin(), train_personas.end());
    std::set<int> eval_set(eval_personas.begin(), eval_personas.end());
    for (int k = 0; k < n; ++k) {
        if (train_set.count(k)) continue;
        if (!in_target[k]) {
            out.split.eval_aux.push_back(aux_id_of[k]);  // background aux users
        } else if (eval_set.count(k)) {
            out.split.eval_aux.push_back(aux_id_of[k]);
            out.split.eval_target.push_back(target_id_of[k]);
        }
    }
    std::sort(out.split.eval_aux.begin(), out.split.eval_aux.end());
    std::sort(out.split.eval_target.begin(), out.split.eval_target.end());

    // --- external channels ----------------------------------------------------
    // Rows are emitted for training pairs and the whole eval block; a pair
    // has a value only when both endpoints share the channel.
    auto emit = [&](const std::string& channel, const ChannelBetas& betas, int persona_a,
                    int persona_t) {
        const std::string& aux_id = aux_id_of[persona_a];
        const std::string& target_id = target_id_of[persona_t];
        if (!shares[aux_id][channel] || !shares[target_id][channel]) return;
        const bool is_coupled = persona_a == persona_t;
        const double value = is_coupled
                                 ? channel_rng.beta(betas.coupled_alpha, betas.coupled_beta)
                                 : channel_rng.beta(betas.uncoupled_alpha, betas.uncoupled_beta);
        out.channels[channel].push_back({aux_id, target_id, value});
    };

    std::map<std::string, int> persona_of_aux, persona_of_target;
    for (int k = 0; k < n; ++k) {
        persona_of_aux[aux_id_of[k]] = k;
        if (in_target[k]) persona_of_target[target_id_of[k]] = k;
    }
    std::vector<int> eval_aux_personas, eval_target_personas;
    for (const auto& id : out.split.eval_aux) eval_aux_personas.push_back(persona_of_aux[id]);
    for (const auto& id : out.split.eval_target) {
        eval_target_personas.push_back(persona_of_target[id]);
    }

    for (const auto& [channel, betas] : cfg.channel_betas) {
        out.channels[channel];  // materialize even when fully masked
        for (const int k : train_personas) emit(channel, betas, k, k);
        for (const auto& [aux_id, target_id] : out.split.train_uncoupled) {
            emit(channel, betas, persona_of_aux[aux_id], persona_of_target[target_id]);
        }
        for (const int pa : eval_aux_personas) {
            for (const int pt : eval_target_personas) emit(channel, betas, pa, pt);
        }
    }

    return out;
}

}  // namespace matchrisk
