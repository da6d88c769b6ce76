// defisect: DeFi incident forensics toolkit
// Copyright 2026 The defisect Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <string>
#include <vector>

#include "defisect/ngram.hpp"

namespace defisect {

// Group of source_ids whose pairwise similarity chain meets the threshold.
struct CloneCluster {
    std::vector<std::string> members;  // sorted
};

struct CloneReport {
    std::size_t total_in_clusters = 0;
    std::size_t cluster_count = 0;

    // Contracts that a scanner aware of one member per cluster could have
    // flagged ahead of time.
    std::size_t detectable() const { return total_in_clusters - cluster_count; }
};

// Single-linkage connected components over the graph with an edge wherever
// jaccard(a, b) >= threshold. Threshold must lie in (0, 1]. Singleton
// components are dropped; clusters and their members are sorted.
std::vector<CloneCluster> cluster(const std::vector<GramProfile>& profiles, double threshold);

// Keeps one profile per incident (the lexicographically smallest source_id)
// so intra-incident redeploys do not count as clones. Every profile must
// map to an incident id.
std::vector<GramProfile> dedupe_by_incident(const std::vector<GramProfile>& profiles,
                                            const std::map<std::string, std::string>& incident_of);

CloneReport report(const std::vector<CloneCluster>& clusters);

}  // namespace defisect
