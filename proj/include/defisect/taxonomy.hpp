// defisect: DeFi incident forensics toolkit
// Copyright 2026 The defisect Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

namespace defisect {

enum class Layer { NET, CON, SC, PRO, AUX };

std::string_view layer_name(Layer layer);
Layer parse_layer(std::string_view name);

struct TaxonomyEntry {
    Layer layer = Layer::NET;
    std::string cause;
    std::string incident_type;

    auto operator<=>(const TaxonomyEntry&) const = default;
};

// Closed table of recognized (layer, cause, incident_type) triples, loaded
// from a versioned CSV data file.
class Taxonomy {
  public:
    static Taxonomy from_csv(const std::string& text);
    static Taxonomy load(const std::string& path);
    // The table shipped with the tool (data/taxonomy.csv).
    static const Taxonomy& builtin();

    bool contains(const TaxonomyEntry& entry) const;
    std::size_t size() const { return entries_.size(); }
    const std::string& version() const { return version_; }
    const std::vector<TaxonomyEntry>& entries() const { return entries_; }

  private:
    std::vector<TaxonomyEntry> entries_;
    std::set<std::tuple<Layer, std::string, std::string>> index_;
    std::string version_ = "0";
};

bool validate_taxonomy(const TaxonomyEntry& entry);

}  // namespace defisect
