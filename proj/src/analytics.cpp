// defisect: DeFi incident forensics toolkit
// Copyright 2026 The defisect Authors.
// SPDX-License-Identifier: Apache-2.0

#include "defisect/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "defisect/error.hpp"

namespace defisect {

double round2(double value) {
    return std::round(value * 100.0) / 100.0;
}

std::vector<MonthlyStat> monthly_stats(const std::vector<IncidentRecord>& dataset) {
    if (dataset.empty()) raise(errc::empty_dataset, "no incidents to aggregate");

    std::map<std::pair<int, unsigned>, MonthlyStat> months;
    for (const auto& record : dataset) {
        auto& stat = months[{record.date.year, record.date.month}];
        stat.year = record.date.year;
        stat.month = record.date.month;
        ++stat.incident_count;
        stat.total_loss_cents += record.loss_cents;
    }

    std::vector<MonthlyStat> out;
    auto cursor = months.begin()->first;
    const auto last = months.rbegin()->first;
    while (cursor <= last) {
        auto it = months.find(cursor);
        if (it != months.end()) {
            out.push_back(it->second);
        } else {
            out.push_back(MonthlyStat{cursor.first, cursor.second, 0, 0});
        }
        cursor = cursor.second == 12 ? std::pair{cursor.first + 1, 1u}
                                     : std::pair{cursor.first, cursor.second + 1};
    }
    return out;
}

std::vector<ProtocolTypeStat> protocol_type_stats(const std::vector<IncidentRecord>& dataset) {
    constexpr int kTypes = static_cast<int>(ProtocolType::other) + 1;
    std::vector<ProtocolTypeStat> stats(kTypes);
    std::vector<std::array<std::size_t, 5>> layer_hits(kTypes);
    for (int i = 0; i < kTypes; ++i) stats[i].type = static_cast<ProtocolType>(i);

    std::int64_t total_loss = 0;
    for (const auto& record : dataset) {
        auto& stat = stats[static_cast<int>(record.protocol_type)];
        stat.loss_cents += record.loss_cents;
        ++stat.count;
        total_loss += record.loss_cents;
        std::array<bool, 5> touched{};
        for (const auto& entry : record.taxonomy) touched[static_cast<int>(entry.layer)] = true;
        for (int l = 0; l < 5; ++l)
            if (touched[l]) ++layer_hits[static_cast<int>(record.protocol_type)][l];
    }

    for (int i = 0; i < kTypes; ++i) {
        auto& stat = stats[i];
        if (total_loss > 0)
            stat.pct_loss = 100.0 * static_cast<double>(stat.loss_cents) /
                            static_cast<double>(total_loss);
        if (!dataset.empty())
            stat.pct_count =
                100.0 * static_cast<double>(stat.count) / static_cast<double>(dataset.size());
        if (stat.count > 0)
            for (int l = 0; l < 5; ++l)
                stat.layer_pct[l] = 100.0 * static_cast<double>(layer_hits[i][l]) /
                                    static_cast<double>(stat.count);
    }
    return stats;
}

AuditEffectiveness audit_effectiveness(std::size_t audited_total, std::size_t audited_attacked,
                                       std::size_t unaudited_total,
                                       std::size_t unaudited_attacked) {
    if (audited_total == 0 || unaudited_total == 0)
        raise(errc::invalid_counts, "totals must be positive");
    if (audited_attacked > audited_total || unaudited_attacked > unaudited_total)
        raise(errc::invalid_counts, "attacked counts exceed totals");

    AuditEffectiveness result;
    result.audited_rate_pct =
        100.0 * static_cast<double>(audited_attacked) / static_cast<double>(audited_total);
    result.unaudited_rate_pct =
        100.0 * static_cast<double>(unaudited_attacked) / static_cast<double>(unaudited_total);
    if (audited_attacked > 0) result.ratio = result.unaudited_rate_pct / result.audited_rate_pct;
    return result;
}

PauseBuckets pause_buckets(const std::vector<IncidentRecord>& dataset) {
    constexpr std::uint64_t kHour = 3600;
    constexpr std::uint64_t kEdges[] = {kHour, 6 * kHour, 12 * kHour, 24 * kHour, 48 * kHour};

    PauseBuckets buckets;
    for (const auto& record : dataset) {
        if (!record.supports_pause) continue;
        std::size_t slot = 5;  // >48h or never executed
        if (record.pause_delay_seconds) {
            slot = 0;
            while (slot < 5 && *record.pause_delay_seconds > kEdges[slot]) ++slot;
        }
        ++buckets.counts[slot];
    }
    return buckets;
}

namespace {

std::uint64_t timestamp_of(const IncidentRecord& record, const std::string& tx_id) {
    auto it = record.tx_timestamps.find(tx_id);
    if (it == record.tx_timestamps.end())
        raise(errc::missing_timestamps, record.id + ": no timestamp for " + tx_id);
    return it->second;
}

}  // namespace

TimeFrames time_frames(const IncidentRecord& record) {
    if (!record.first_malicious_tx)
        raise(errc::missing_timestamps, record.id + ": no first malicious tx");
    const std::uint64_t first = timestamp_of(record, *record.first_malicious_tx);

    TimeFrames frames;
    if (!record.deploy_tx || *record.deploy_tx == *record.first_malicious_tx) {
        frames.atomic = true;  // batched deploy+exploit, or no contract at all
    } else {
        const std::uint64_t deploy = timestamp_of(record, *record.deploy_tx);
        if (deploy > first)
            raise(errc::validation_error, record.id + ": deploy after first malicious tx");
        frames.rescue_seconds = first - deploy;
    }
    if (record.last_malicious_tx) {
        const std::uint64_t last = timestamp_of(record, *record.last_malicious_tx);
        if (last < first)
            raise(errc::validation_error, record.id + ": last malicious tx before first");
        frames.incident_seconds = last - first;
    }
    return frames;
}

AtomicitySummary atomicity_summary(const std::vector<IncidentRecord>& dataset) {
    AtomicitySummary summary;
    for (const auto& record : dataset) {
        try {
            if (time_frames(record).rescue_seconds > 0) ++summary.non_atomic_count;
        } catch (const Error&) {
            // no usable timestamps: nothing distinguishes it from atomic
        }
    }
    if (!dataset.empty())
        summary.non_atomic_pct = std::round(100.0 * static_cast<double>(summary.non_atomic_count) /
                                            static_cast<double>(dataset.size()));
    return summary;
}

namespace {

double log_usd(std::int64_t cents) {
    return std::log1p(static_cast<double>(cents) / 100.0);
}

double min_max(double value, double lo, double hi) {
    if (!(hi > lo)) return 0.0;  // degenerate range
    return (value - lo) / (hi - lo);
}

void widen(double value, double& lo, double& hi, bool& seen) {
    if (!seen) {
        lo = hi = value;
        seen = true;
    } else {
        lo = std::min(lo, value);
        hi = std::max(hi, value);
    }
}

}  // namespace

SemExtrema sem_extrema(const std::vector<IncidentRecord>& dataset) {
    SemExtrema e;
    bool tvl = false, loss = false, delay = false, car = false;
    for (const auto& record : dataset) {
        widen(log_usd(record.loss_cents), e.log_loss_min, e.log_loss_max, loss);
        if (record.tvl_cents) widen(log_usd(*record.tvl_cents), e.log_tvl_min, e.log_tvl_max, tvl);
        if (record.pause_delay_seconds)
            widen(static_cast<double>(*record.pause_delay_seconds), e.delay_min, e.delay_max,
                  delay);
        if (record.car) widen(*record.car, e.car_min, e.car_max, car);
    }
    return e;
}

SemFeatures prepare_sem_features(const IncidentRecord& record, const SemExtrema& extrema) {
    if (!record.tvl_cents) raise(errc::missing_feature, record.id + ": no TVL");
    if (!record.pause_delay_seconds)
        raise(errc::missing_feature, record.id + ": no pause delay");
    if (!record.car) raise(errc::missing_feature, record.id + ": no CAR");
    if (!record.disclosed_within_20d)
        raise(errc::missing_feature, record.id + ": no disclosure status");

    SemFeatures f;
    switch (record.audit_status) {
        case AuditStatus::NotAudited: f.PD1 = 0.0; break;
        case AuditStatus::PartiallyAudited: f.PD1 = 0.5; break;
        case AuditStatus::Audited: f.PD1 = 1.0; break;
    }
    f.PD2 = record.supports_pause ? 1.0 : 0.0;
    f.A1 = min_max(log_usd(*record.tvl_cents), extrema.log_tvl_min, extrema.log_tvl_max);
    f.RD1 = min_max(static_cast<double>(*record.pause_delay_seconds), extrema.delay_min,
                    extrema.delay_max);
    f.RD2 = *record.disclosed_within_20d ? 1.0 : 0.0;
    f.H1 = min_max(*record.car, extrema.car_min, extrema.car_max);
    f.H2 = min_max(log_usd(record.loss_cents), extrema.log_loss_min, extrema.log_loss_max);
    return f;
}

}  // namespace defisect
