// defisect: DeFi incident forensics toolkit
// Copyright 2026 The defisect Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <string>
#include <string_view>

namespace defisect {

enum class SourceKind {
    centralized_exchange,
    mixer,
    bridge,
    mining_pool,
    genesis,
    unknown,
};

std::string_view source_kind_name(SourceKind kind);
SourceKind parse_source_kind(std::string_view name);

struct LabelEntry {
    std::string name;
    SourceKind kind = SourceKind::unknown;
};

// Known-entity addresses (exchange hot wallets, mixer contracts, bridges,
// mining pools). CSV input with an `address,name,kind` header row.
class LabelRegistry {
  public:
    void add(const std::string& address, const std::string& name, SourceKind kind);
    const LabelEntry* find(const std::string& address) const;
    std::size_t size() const { return entries_.size(); }

    static LabelRegistry from_csv(const std::string& text);
    static LabelRegistry load(const std::string& path);

  private:
    std::map<std::string, LabelEntry> entries_;
};

}  // namespace defisect
