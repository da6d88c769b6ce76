// defisect: DeFi incident forensics toolkit
// Copyright 2026 The defisect Authors.
// SPDX-License-Identifier: Apache-2.0

#include "defisect/labels.hpp"

#include "defisect/csv.hpp"
#include "defisect/error.hpp"
#include "defisect/io_util.hpp"

namespace defisect {

std::string_view source_kind_name(SourceKind kind) {
    switch (kind) {
        case SourceKind::centralized_exchange: return "centralized_exchange";
        case SourceKind::mixer: return "mixer";
        case SourceKind::bridge: return "bridge";
        case SourceKind::mining_pool: return "mining_pool";
        case SourceKind::genesis: return "genesis";
        case SourceKind::unknown: return "unknown";
    }
    return "unknown";
}

SourceKind parse_source_kind(std::string_view name) {
    if (name == "centralized_exchange") return SourceKind::centralized_exchange;
    if (name == "mixer") return SourceKind::mixer;
    if (name == "bridge") return SourceKind::bridge;
    if (name == "mining_pool") return SourceKind::mining_pool;
    if (name == "genesis") return SourceKind::genesis;
    if (name == "unknown") return SourceKind::unknown;
    raise(errc::parse_error, "unknown source kind: " + std::string(name));
}

void LabelRegistry::add(const std::string& address, const std::string& name, SourceKind kind) {
    if (!entries_.emplace(address, LabelEntry{name, kind}).second)
        raise(errc::validation_error, "duplicate label for " + address);
}

const LabelEntry* LabelRegistry::find(const std::string& address) const {
    auto it = entries_.find(address);
    return it == entries_.end() ? nullptr : &it->second;
}

LabelRegistry LabelRegistry::from_csv(const std::string& text) {
    const auto records = parse_csv(text);
    if (records.empty() || records.front() != std::vector<std::string>{"address", "name", "kind"})
        raise(errc::parse_error, "label registry must start with header address,name,kind");
    LabelRegistry registry;
    for (std::size_t i = 1; i < records.size(); ++i) {
        const auto& row = records[i];
        if (row.size() == 1 && row[0].empty()) continue;
        if (row.size() != 3)
            raise(errc::parse_error, "label row " + std::to_string(i + 1) + " needs 3 fields");
        registry.add(row[0], row[1], parse_source_kind(row[2]));
    }
    return registry;
}

LabelRegistry LabelRegistry::load(const std::string& path) {
    return from_csv(read_file(path));
}

}  // namespace defisect
