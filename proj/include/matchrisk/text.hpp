// Copyright 2026 The matchrisk Authors. Apache 2.0 licensed. See LICENSE in the project root.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace matchrisk {

/// Decode UTF-8 into Unicode scalar values. Invalid bytes decode as U+FFFD
/// so that dirty scraped data still gets a defined distance.
std::vector<char32_t> utf8_decode(std::string_view s);

/// ASCII case fold plus whitespace trim; non-ASCII passes through.
std::string fold_name(std::string_view s);

/// First whitespace-separated token of a folded name.
std::string first_token(std::string_view s);

/// Unit-cost insert/delete/substitute edit distance over Unicode scalars.
size_t edit_distance(std::u32string_view a, std::u32string_view b);

/// Per-name male/female occurrence counts, keyed by case-folded name.
/// Same row format as the US social security baby-name table
/// (`name,male_count,female_count`), so the real table drops in.
class NameGenderTable {
public:
    void insert(std::string_view name, uint64_t male, uint64_t female);

    /// (p_male, p_female) for a name, or nullopt when absent/zero-count.
    std::optional<std::pair<double, double>> lookup(std::string_view folded_name) const;

    bool empty() const { return table_.empty(); }
    size_t size() const { return table_.size(); }

    static NameGenderTable from_csv_file(const std::string& path);

    /// Bundled 200-name stand-in for the real table.
    static const NameGenderTable& builtin();

    const std::map<std::string, std::pair<uint64_t, uint64_t>>& rows() const { return table_; }

private:
    std::map<std::string, std::pair<uint64_t, uint64_t>> table_;
};

}  // namespace matchrisk
