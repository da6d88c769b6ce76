// defisect: DeFi incident forensics toolkit
// Copyright 2026 The defisect Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "defisect/trace.hpp"

namespace defisect {

// Incidents whose funding paths pass through the same address.
struct LinkedCluster {
    std::string suspect;
    // (incident_id, hop distance of the suspect from that incident's
    // adversary), sorted by incident_id; one entry per incident, closest
    // occurrence wins.
    std::vector<std::pair<std::string, std::size_t>> incidents;
};

// Groups incidents sharing any path address within the first k hops.
// Clusters of fewer than two incidents are dropped; output is sorted by
// suspect address.
std::vector<LinkedCluster> link_adversaries(
    const std::vector<std::pair<std::string, FundingSource>>& sources, std::size_t k);

}  // namespace defisect
