// defisect: DeFi incident forensics toolkit
// Copyright 2026 The defisect Authors.
// SPDX-License-Identifier: Apache-2.0

#include "defisect/link.hpp"

#include <map>

namespace defisect {

std::vector<LinkedCluster> link_adversaries(
    const std::vector<std::pair<std::string, FundingSource>>& sources, std::size_t k) {
    // suspect -> incident -> closest hop distance
    std::map<std::string, std::map<std::string, std::size_t>> seen;
    for (const auto& [incident, source] : sources) {
        const std::size_t depth = std::min(k, source.path.size());
        for (std::size_t i = 0; i < depth; ++i) {
            const std::string& address = source.path[i].from;
            auto [slot, inserted] = seen[address].emplace(incident, i + 1);
            if (!inserted && i + 1 < slot->second) slot->second = i + 1;
        }
    }

    std::vector<LinkedCluster> clusters;
    for (const auto& [suspect, incidents] : seen) {
        if (incidents.size() < 2) continue;
        LinkedCluster cluster;
        cluster.suspect = suspect;
        cluster.incidents.assign(incidents.begin(), incidents.end());
        clusters.push_back(std::move(cluster));
    }
    return clusters;
}

}  // namespace defisect
