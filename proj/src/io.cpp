// Copyright 2026 The matchrisk Authors. Apache 2.0 licensed. See LICENSE in the project root.

#include "matchrisk/io.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

namespace matchrisk {

namespace fs = std::filesystem;

uint64_t fnv1a_hash(std::string_view text) {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (const char c : text) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string hash_hex(uint64_t value) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(value));
    return buf;
}

std::string format_header(const FileHeader& header) {
    return "# matchrisk-v1 kind=" + header.kind + " config=" + header.config_hash +
           " dataset=" + header.dataset_hash;
}

FileHeader parse_header(const std::string& line, const std::string& expected_kind) {
    FileHeader h;
    std::istringstream in(line);
    std::string hash_mark, version, token;
    in >> hash_mark >> version;
    if (hash_mark != "#" || version != "matchrisk-v1") {
        throw IoError("missing or unrecognized file header: " + line);
    }
    while (in >> token) {
        const auto eq = token.find('=');
        if (eq == std::string::npos) continue;
        const std::string key = token.substr(0, eq);
        const std::string value = token.substr(eq + 1);
        if (key == "kind") {
            h.kind = value;
        } else if (key == "config") {
            h.config_hash = value;
        } else if (key == "dataset") {
            h.dataset_hash = value;
        }
    }
    if (!expected_kind.empty() && h.kind != expected_kind) {
        throw IoError("expected a '" + expected_kind + "' file, found '" + h.kind + "'");
    }
    return h;
}

std::string format_double(double value) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    // trim to the shortest representation that round-trips
    for (int precision = 1; precision < 17; ++precision) {
        char shorter[32];
        std::snprintf(shorter, sizeof(shorter), "%.*g", precision, value);
        double parsed = 0.0;
        std::sscanf(shorter, "%lf", &parsed);
        if (parsed == value) return shorter;
    }
    return buf;
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

double parse_double(const std::string& text, const std::string& what) {
    try {
        size_t pos = 0;
        const double v = std::stod(text, &pos);
        if (pos != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw IoError("bad numeric field '" + text + "' in " + what);
    }
}

class LineReader {
public:
    LineReader(const std::string& path, const std::string& kind) : path_(path), in_(path) {
        if (!in_) throw IoError("cannot open " + path);
        std::string first;
        if (!std::getline(in_, first)) throw IoError("empty file " + path);
        header_ = parse_header(first, kind);
    }

    const FileHeader& header() const { return header_; }

    bool next(std::vector<std::string>& fields, size_t expected) {
        std::string line;
        while (std::getline(in_, line)) {
            if (line.empty() || line[0] == '#') continue;
            fields = split_csv(line);
            if (fields.size() != expected) {
                throw IoError(path_ + ": expected " + std::to_string(expected) +
                              " fields, got " + std::to_string(fields.size()) + " in: " + line);
            }
            return true;
        }
        return false;
    }

private:
    std::string path_;
    std::ifstream in_;
    FileHeader header_;
};

class FileWriter {
public:
    FileWriter(const std::string& path, const std::string& kind, const std::string& config_hash,
               const std::string& dataset_hash)
        : path_(path), out_(path, std::ios::binary) {
        if (!out_) throw IoError("cannot write " + path);
        out_ << format_header({kind, config_hash, dataset_hash}) << "\n";
    }

    std::ofstream& stream() { return out_; }

    ~FileWriter() { out_.close(); }

private:
    std::string path_;
    std::ofstream out_;
};

std::string gender_code(Gender g) {
    switch (g) {
        case Gender::M: return "M";
        case Gender::F: return "F";
        case Gender::Unknown: return "U";
    }
    return "U";
}

Gender parse_gender(const std::string& text) {
    if (text == "M") return Gender::M;
    if (text == "F") return Gender::F;
    if (text == "U" || text.empty()) return Gender::Unknown;
    throw IoError("bad gender code: " + text);
}

}  // namespace

// ---------------------------------------------------------------------------
// Dataset bundle
// ---------------------------------------------------------------------------

void save_dataset(const std::string& dir, const SynthDataset& data,
                  const std::string& config_hash) {
    fs::create_directories(dir);
    const std::string& dh = config_hash;  // dataset files are their own provenance

    {
        FileWriter w(dir + "/profiles.csv", "profiles", config_hash, dh);
        auto emit = [&](const UserProfile& p, const char* network) {
            const auto& a = p.attributes;
            w.stream() << network << ',' << p.user_id << ','
                       << (a.name ? *a.name : "") << ','
                       << (a.location ? format_double(a.location->lat_deg) : "") << ','
                       << (a.location ? format_double(a.location->lon_deg) : "") << ','
                       << (a.gender ? gender_code(*a.gender) : "") << "\n";
        };
        for (const auto& p : data.aux_profiles) emit(p, "A");
        for (const auto& p : data.target_profiles) emit(p, "T");
    }
    {
        FileWriter w(dir + "/activity.csv", "activity", config_hash, dh);
        auto emit = [&](const UserProfile& p, const char* network) {
            if (!p.attributes.activity_times) return;
            for (const int64_t t : *p.attributes.activity_times) {
                w.stream() << network << ',' << p.user_id << ',' << t << "\n";
            }
        };
        for (const auto& p : data.aux_profiles) emit(p, "A");
        for (const auto& p : data.target_profiles) emit(p, "T");
    }
    {
        FileWriter w(dir + "/edges.csv", "edges", config_hash, dh);
        for (const auto& [u, v] : data.aux_edges) w.stream() << "A," << u << ',' << v << "\n";
        for (const auto& [u, v] : data.target_edges) w.stream() << "T," << u << ',' << v << "\n";
    }
    {
        FileWriter w(dir + "/truth.csv", "truth", config_hash, dh);
        for (const auto& [a, t] : data.truth.pairs) w.stream() << a << ',' << t << "\n";
    }
    {
        FileWriter w(dir + "/split.csv", "split", config_hash, dh);
        for (const auto& [a, t] : data.split.train_coupled) {
            w.stream() << "train_coupled," << a << ',' << t << "\n";
        }
        for (const auto& [a, t] : data.split.train_uncoupled) {
            w.stream() << "train_uncoupled," << a << ',' << t << "\n";
        }
        for (const auto& a : data.split.eval_aux) w.stream() << "eval_aux," << a << ",\n";
        for (const auto& t : data.split.eval_target) w.stream() << "eval_target,," << t << "\n";
    }
    {
        FileWriter w(dir + "/channels.csv", "channels", config_hash, dh);
        for (const auto& [channel, triplets] : data.channels) {
            for (const auto& t : triplets) {
                w.stream() << channel << ',' << t.aux_id << ',' << t.target_id << ','
                           << format_double(t.similarity) << "\n";
            }
        }
    }
}

Dataset load_dataset(const std::string& dir) {
    Dataset data;

    std::map<std::string, std::vector<int64_t>> activity_aux, activity_target;
    {
        LineReader r(dir + "/activity.csv", "activity");
        std::vector<std::string> f;
        while (r.next(f, 3)) {
            auto& sink = f[0] == "A" ? activity_aux : activity_target;
            sink[f[1]].push_back(static_cast<int64_t>(parse_double(f[2], "activity")));
        }
    }

    {
        LineReader r(dir + "/profiles.csv", "profiles");
        data.dataset_hash = r.header().dataset_hash;
        std::vector<std::string> f;
        while (r.next(f, 6)) {
            UserProfile p;
            p.user_id = f[1];
            p.network_tag = f[0] == "A" ? NetworkTag::Auxiliary : NetworkTag::Target;
            if (!f[2].empty()) p.attributes.name = f[2];
            if (!f[3].empty() && !f[4].empty()) {
                p.attributes.location =
                    Coordinates{parse_double(f[3], "profiles"), parse_double(f[4], "profiles")};
            }
            if (!f[5].empty()) p.attributes.gender = parse_gender(f[5]);
            auto& activity = f[0] == "A" ? activity_aux : activity_target;
            const auto it = activity.find(p.user_id);
            if (it != activity.end()) p.attributes.activity_times = it->second;
            p.attributes.graph_node = p.user_id;
            (f[0] == "A" ? data.aux_profiles : data.target_profiles).push_back(std::move(p));
        }
    }
    auto by_id = [](const UserProfile& a, const UserProfile& b) { return a.user_id < b.user_id; };
    std::sort(data.aux_profiles.begin(), data.aux_profiles.end(), by_id);
    std::sort(data.target_profiles.begin(), data.target_profiles.end(), by_id);

    // Every profile is a node even when isolated.
    for (const auto& p : data.aux_profiles) data.aux_graph.add_node(p.user_id);
    for (const auto& p : data.target_profiles) data.target_graph.add_node(p.user_id);
    {
        LineReader r(dir + "/edges.csv", "edges");
        std::vector<std::string> f;
        while (r.next(f, 3)) {
            (f[0] == "A" ? data.aux_graph : data.target_graph).add_edge(f[1], f[2]);
        }
    }
    {
        LineReader r(dir + "/truth.csv", "truth");
        std::vector<std::string> f;
        while (r.next(f, 2)) data.truth.pairs.emplace_back(f[0], f[1]);
    }
    if (fs::exists(dir + "/split.csv")) {
        LineReader r(dir + "/split.csv", "split");
        std::vector<std::string> f;
        while (r.next(f, 3)) {
            if (f[0] == "train_coupled") {
                data.split.train_coupled.emplace_back(f[1], f[2]);
            } else if (f[0] == "train_uncoupled") {
                data.split.train_uncoupled.emplace_back(f[1], f[2]);
            } else if (f[0] == "eval_aux") {
                data.split.eval_aux.push_back(f[1]);
            } else if (f[0] == "eval_target") {
                data.split.eval_target.push_back(f[2]);
            } else {
                throw IoError("unknown split role: " + f[0]);
            }
        }
    }
    if (fs::exists(dir + "/channels.csv")) {
        LineReader r(dir + "/channels.csv", "channels");
        std::vector<std::string> f;
        while (r.next(f, 4)) {
            data.channels[f[0]].push_back({f[1], f[2], parse_double(f[3], "channels")});
        }
    }
    return data;
}

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

std::vector<std::string> validate_dataset(const std::vector<UserProfile>& aux,
                                          const std::vector<UserProfile>& target,
                                          const CouplingGroundTruth& truth,
                                          const DatasetSplit& split) {
    std::vector<std::string> violations;

    auto check_profiles = [&](const std::vector<UserProfile>& profiles, const char* network) {
        std::set<std::string> ids;
        for (const auto& p : profiles) {
            if (!ids.insert(p.user_id).second) {
                violations.push_back(std::string("duplicate ") + network + " id " + p.user_id);
            }
            const auto& a = p.attributes;
            if (a.location) {
                if (a.location->lat_deg < -90.0 || a.location->lat_deg > 90.0 ||
                    a.location->lon_deg < -180.0 || a.location->lon_deg > 180.0) {
                    violations.push_back("coordinates out of range for " + p.user_id);
                }
            }
            if (a.activity_times && !std::is_sorted(a.activity_times->begin(),
                                                    a.activity_times->end())) {
                violations.push_back("activity times out of order for " + p.user_id);
            }
        }
        return ids;
    };
    const std::set<std::string> aux_ids = check_profiles(aux, "aux");
    const std::set<std::string> target_ids = check_profiles(target, "target");

    std::set<std::string> truth_aux, truth_target;
    for (const auto& [a, t] : truth.pairs) {
        if (!aux_ids.count(a)) violations.push_back("truth references unknown aux " + a);
        if (!target_ids.count(t)) violations.push_back("truth references unknown target " + t);
        if (!truth_aux.insert(a).second) violations.push_back("aux " + a + " coupled twice");
        if (!truth_target.insert(t).second) violations.push_back("target " + t + " coupled twice");
    }

    std::set<std::string> train_users;
    auto check_pair_list = [&](const std::vector<IdPair>& pairs, const char* what) {
        for (const auto& [a, t] : pairs) {
            if (!aux_ids.count(a)) {
                violations.push_back(std::string(what) + " references unknown aux " + a);
            }
            if (!target_ids.count(t)) {
                violations.push_back(std::string(what) + " references unknown target " + t);
            }
            train_users.insert(a);
            train_users.insert(t);
        }
    };
    check_pair_list(split.train_coupled, "train_coupled");
    check_pair_list(split.train_uncoupled, "train_uncoupled");

    for (const auto& id : split.eval_aux) {
        if (!aux_ids.count(id)) violations.push_back("eval_aux references unknown aux " + id);
        if (train_users.count(id)) violations.push_back("split overlap: " + id);
    }
    for (const auto& id : split.eval_target) {
        if (!target_ids.count(id)) {
            violations.push_back("eval_target references unknown target " + id);
        }
        if (train_users.count(id)) violations.push_back("split overlap: " + id);
    }
    return violations;
}

std::vector<std::string> validate_dataset(const Dataset& data) {
    std::vector<std::string> violations =
        validate_dataset(data.aux_profiles, data.target_profiles, data.truth, data.split);
    std::set<std::string> aux_ids, target_ids;
    for (const auto& p : data.aux_profiles) aux_ids.insert(p.user_id);
    for (const auto& p : data.target_profiles) target_ids.insert(p.user_id);
    for (const auto& [channel, triplets] : data.channels) {
        for (const auto& t : triplets) {
            if (t.similarity < 0.0 || t.similarity > 1.0) {
                violations.push_back("channel " + channel + " value out of range for (" +
                                     t.aux_id + ", " + t.target_id + ")");
            }
            if (!aux_ids.count(t.aux_id) || !target_ids.count(t.target_id)) {
                violations.push_back("channel " + channel + " references unknown pair (" +
                                     t.aux_id + ", " + t.target_id + ")");
            }
        }
    }
    return violations;
}

// ---------------------------------------------------------------------------
// Weights and stats
// ---------------------------------------------------------------------------

void save_weights(const std::string& path, const WeightVector& w, const ChannelStats& stats,
                  const std::string& config_hash, const std::string& dataset_hash) {
    FileWriter out(path, "weights", config_hash, dataset_hash);
    for (size_t c = 0; c < w.channel_names.size(); ++c) {
        const auto ci = static_cast<Eigen::Index>(c);
        out.stream() << w.channel_names[c] << ',' << format_double(w.weights[ci]) << ','
                     << format_double(w.feature_mean[ci]) << ','
                     << format_double(w.feature_std[ci]) << "\n";
    }
    out.stream() << "bias," << format_double(w.bias) << "\n";
    // imputation statistics ride along as comment-prefixed diagnostics rows
    for (const auto& channel : stats.channel_names()) {
        out.stream() << "#impute," << channel << ',' << format_double(stats.mean(channel)) << ','
                     << stats.observations(channel) << "\n";
    }
}

std::pair<WeightVector, ChannelStats> load_weights(const std::string& path,
                                                   std::string* dataset_hash) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw IoError("empty file " + path);
    const FileHeader header = parse_header(line, "weights");
    if (dataset_hash) *dataset_hash = header.dataset_hash;

    WeightVector w;
    ChannelStats stats;
    std::vector<double> weights, means, stds;
    bool bias_seen = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line.rfind("#impute,", 0) == 0) {
            const auto f = split_csv(line.substr(1));
            if (f.size() != 4) throw IoError("malformed impute row: " + line);
            const double mean = parse_double(f[2], "weights");
            const long count = static_cast<long>(parse_double(f[3], "weights"));
            for (long k = 0; k < count; ++k) stats.add(f[1], mean);
            continue;
        }
        if (line[0] == '#') continue;
        const auto f = split_csv(line);
        if (f.size() == 2 && f[0] == "bias") {
            w.bias = parse_double(f[1], "weights");
            bias_seen = true;
            continue;
        }
        if (f.size() != 4) throw IoError("malformed weights row: " + line);
        w.channel_names.push_back(f[0]);
        weights.push_back(parse_double(f[1], "weights"));
        means.push_back(parse_double(f[2], "weights"));
        stds.push_back(parse_double(f[3], "weights"));
    }
    if (!bias_seen) throw IoError("weights file lacks a bias row: " + path);
    w.weights = Eigen::Map<Eigen::VectorXd>(weights.data(), weights.size());
    w.feature_mean = Eigen::Map<Eigen::VectorXd>(means.data(), means.size());
    w.feature_std = Eigen::Map<Eigen::VectorXd>(stds.data(), stds.size());
    return {std::move(w), std::move(stats)};
}

// ---------------------------------------------------------------------------
// Matches, marginals, traces, similarity dumps
// ---------------------------------------------------------------------------

void save_matches(const std::string& path, const MatchSet& matches,
                  const std::string& config_hash, const std::string& dataset_hash) {
    FileWriter out(path, "matches", config_hash, dataset_hash);
    for (const auto& m : matches.matches) {
        out.stream() << m.aux_id << ',' << m.target_id << ',' << format_double(m.score) << "\n";
    }
}

MatchSet load_matches(const std::string& path, std::string* dataset_hash) {
    LineReader r(path, "matches");
    if (dataset_hash) *dataset_hash = r.header().dataset_hash;
    MatchSet out;
    std::vector<std::string> f;
    while (r.next(f, 3)) out.matches.push_back({f[0], f[1], parse_double(f[2], "matches")});
    return out;
}

void save_marginals(const std::string& path, const std::vector<TraceRow>& rows,
                    const std::string& config_hash, const std::string& dataset_hash) {
    FileWriter out(path, "marginals", config_hash, dataset_hash);
    for (const auto& row : rows) {
        out.stream() << row.aux_id << ',' << row.target_id << ','
                     << format_double(row.final_marginal) << ','
                     << format_double(row.similarity) << "\n";
    }
}

void save_trace(const std::string& path, const std::vector<TraceRow>& rows,
                const std::string& config_hash, const std::string& dataset_hash) {
    FileWriter out(path, "trace", config_hash, dataset_hash);
    for (const auto& row : rows) {
        out.stream() << row.aux_id << ',' << row.target_id << ',' << format_double(row.iter1)
                     << ',' << format_double(row.iter2) << ','
                     << format_double(row.final_marginal) << ','
                     << format_double(row.similarity) << "\n";
    }
}

std::vector<TraceRow> load_trace(const std::string& path, std::string* dataset_hash) {
    LineReader r(path, "trace");
    if (dataset_hash) *dataset_hash = r.header().dataset_hash;
    std::vector<TraceRow> rows;
    std::vector<std::string> f;
    while (r.next(f, 6)) {
        rows.push_back({f[0], f[1], parse_double(f[2], "trace"), parse_double(f[3], "trace"),
                        parse_double(f[4], "trace"), parse_double(f[5], "trace")});
    }
    return rows;
}

void save_similarity(const std::string& path, const SimilarityMatrix& r,
                     const std::string& config_hash, const std::string& dataset_hash) {
    FileWriter out(path, "similarity", config_hash, dataset_hash);
    for (Eigen::Index i = 0; i < r.combined.rows(); ++i) {
        for (Eigen::Index j = 0; j < r.combined.cols(); ++j) {
            out.stream() << r.aux_ids[static_cast<size_t>(i)] << ','
                         << r.target_ids[static_cast<size_t>(j)] << ','
                         << format_double(r.combined(i, j)) << "\n";
        }
    }
}

SimilarityMatrix load_similarity(const std::string& path, std::string* dataset_hash) {
    LineReader r(path, "similarity");
    if (dataset_hash) *dataset_hash = r.header().dataset_hash;

    std::vector<std::tuple<std::string, std::string, double>> rows;
    std::set<std::string> aux_set, target_set;
    std::vector<std::string> f;
    while (r.next(f, 3)) {
        rows.emplace_back(f[0], f[1], parse_double(f[2], "similarity"));
        aux_set.insert(f[0]);
        target_set.insert(f[1]);
    }

    SimilarityMatrix out;
    out.aux_ids.assign(aux_set.begin(), aux_set.end());
    out.target_ids.assign(target_set.begin(), target_set.end());
    std::map<std::string, int> aux_index, target_index;
    for (size_t i = 0; i < out.aux_ids.size(); ++i) aux_index[out.aux_ids[i]] = static_cast<int>(i);
    for (size_t j = 0; j < out.target_ids.size(); ++j) {
        target_index[out.target_ids[j]] = static_cast<int>(j);
    }
    out.combined = Eigen::MatrixXd::Zero(out.aux_ids.size(), out.target_ids.size());
    for (const auto& [a, t, v] : rows) out.combined(aux_index[a], target_index[t]) = v;
    return out;
}

}  // namespace matchrisk
