// defisect: DeFi incident forensics toolkit
// Copyright 2026 The defisect Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <optional>
#include <vector>

#include "defisect/incident.hpp"

namespace defisect {

// Round-half-away-from-zero at two decimals; presentation only.
double round2(double value);

struct MonthlyStat {
    int year = 0;
    unsigned month = 0;
    std::size_t incident_count = 0;
    std::int64_t total_loss_cents = 0;
};

// Calendar-month aggregation, zero-filled so the span is contiguous.
std::vector<MonthlyStat> monthly_stats(const std::vector<IncidentRecord>& dataset);

struct ProtocolTypeStat {
    ProtocolType type = ProtocolType::other;
    std::int64_t loss_cents = 0;
    double pct_loss = 0.0;
    std::size_t count = 0;
    double pct_count = 0.0;
    // share of this type's incidents touching NET, CON, SC, PRO, AUX
    std::array<double, 5> layer_pct{};
};

// One row per protocol type, every type always present.
std::vector<ProtocolTypeStat> protocol_type_stats(const std::vector<IncidentRecord>& dataset);

struct AuditEffectiveness {
    double audited_rate_pct = 0.0;
    double unaudited_rate_pct = 0.0;
    std::optional<double> ratio;  // absent when the audited rate is zero
};

AuditEffectiveness audit_effectiveness(std::size_t audited_total, std::size_t audited_attacked,
                                       std::size_t unaudited_total,
                                       std::size_t unaudited_attacked);

// Reaction-delay histogram over pause-supporting records. Buckets:
// [0,1h], (1h,6h], (6h,12h], (12h,24h], (24h,48h], then >48h or never.
struct PauseBuckets {
    std::array<std::size_t, 6> counts{};

    std::size_t paused_total() const {
        std::size_t sum = 0;
        for (std::size_t c : counts) sum += c;
        return sum;
    }
};

PauseBuckets pause_buckets(const std::vector<IncidentRecord>& dataset);

struct TimeFrames {
    std::uint64_t rescue_seconds = 0;    // deploy -> first malicious tx
    std::uint64_t incident_seconds = 0;  // first -> last malicious tx
    bool atomic = false;                 // no separate deploy tx
};

TimeFrames time_frames(const IncidentRecord& record);

struct AtomicitySummary {
    std::size_t non_atomic_count = 0;
    double non_atomic_pct = 0.0;  // integer-rounded share of all records
};

// Counts records whose rescue window is positive; records without usable
// timestamps count as atomic.
AtomicitySummary atomicity_summary(const std::vector<IncidentRecord>& dataset);

struct SemFeatures {
    double PD1 = 0.0;  // audit status ordinal
    double PD2 = 0.0;  // emergency pause support
    double A1 = 0.0;   // TVL, log then min-max
    double RD1 = 0.0;  // pause delay, min-max
    double RD2 = 0.0;  // disclosed
    double H1 = 0.0;   // CAR, min-max
    double H2 = 0.0;   // loss, log then min-max
};

// Dataset-wide ranges used for min-max scaling; computed per field over
// the records that carry it.
struct SemExtrema {
    double log_tvl_min = 0.0, log_tvl_max = 0.0;
    double log_loss_min = 0.0, log_loss_max = 0.0;
    double delay_min = 0.0, delay_max = 0.0;
    double car_min = 0.0, car_max = 0.0;
};

SemExtrema sem_extrema(const std::vector<IncidentRecord>& dataset);

SemFeatures prepare_sem_features(const IncidentRecord& record, const SemExtrema& extrema);

}  // namespace defisect
