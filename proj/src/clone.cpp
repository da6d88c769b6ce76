// defisect: DeFi incident forensics toolkit
// Copyright 2026 The defisect Authors.
// SPDX-License-Identifier: Apache-2.0

#include "defisect/clone.hpp"

#include <algorithm>
#include <numeric>

#include "defisect/error.hpp"

namespace defisect {

namespace {

struct UnionFind {
    std::vector<std::size_t> parent;

    explicit UnionFind(std::size_t size) : parent(size) {
        std::iota(parent.begin(), parent.end(), std::size_t{0});
    }

    std::size_t find(std::size_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }

    void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

}  // namespace

std::vector<CloneCluster> cluster(const std::vector<GramProfile>& profiles, double threshold) {
    if (!(threshold > 0.0) || threshold > 1.0)
        raise(errc::invalid_threshold, "threshold must be in (0, 1]");

    UnionFind uf(profiles.size());
    for (std::size_t i = 0; i < profiles.size(); ++i)
        for (std::size_t j = i + 1; j < profiles.size(); ++j)
            if (jaccard(profiles[i], profiles[j]) >= threshold) uf.unite(i, j);

    std::map<std::size_t, std::vector<std::string>> groups;
    for (std::size_t i = 0; i < profiles.size(); ++i)
        groups[uf.find(i)].push_back(profiles[i].source_id);

    std::vector<CloneCluster> clusters;
    for (auto& [root, members] : groups) {
        if (members.size() < 2) continue;
        std::sort(members.begin(), members.end());
        clusters.push_back(CloneCluster{std::move(members)});
    }
    std::sort(clusters.begin(), clusters.end(),
              [](const CloneCluster& a, const CloneCluster& b) {
                  return a.members.front() < b.members.front();
              });
    return clusters;
}

std::vector<GramProfile> dedupe_by_incident(
    const std::vector<GramProfile>& profiles,
    const std::map<std::string, std::string>& incident_of) {
    std::map<std::string, const GramProfile*> keeper;  // incident -> profile
    for (const auto& profile : profiles) {
        auto it = incident_of.find(profile.source_id);
        if (it == incident_of.end())
            raise(errc::missing_incident_id, "no incident id for " + profile.source_id);
        auto [slot, inserted] = keeper.emplace(it->second, &profile);
        if (!inserted && profile.source_id < slot->second->source_id) slot->second = &profile;
    }
    std::vector<GramProfile> deduped;
    deduped.reserve(keeper.size());
    for (const auto& [incident, profile] : keeper) deduped.push_back(*profile);
    std::sort(deduped.begin(), deduped.end(),
              [](const GramProfile& a, const GramProfile& b) {
                  return a.source_id < b.source_id;
              });
    return deduped;
}

CloneReport report(const std::vector<CloneCluster>& clusters) {
    CloneReport summary;
    summary.cluster_count = clusters.size();
    for (const auto& c : clusters) summary.total_in_clusters += c.members.size();
    return summary;
}

}  // namespace defisect
