// defisect: DeFi incident forensics toolkit
// Copyright 2026 The defisect Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace defisect {

enum class errc {
    // evm-disasm
    malformed_hex,
    // clone-detect
    invalid_n,
    mismatched_n,
    invalid_threshold,
    missing_incident_id,
    // fund-tracer
    never_active,
    active_at_genesis,
    no_balance_before_activity,
    funding_tx_not_found,
    // event-study
    too_short,
    misaligned_ticks,
    degenerate_regressor,
    empty_series,
    // incident-model / analytics
    parse_error,
    validation_error,
    invalid_counts,
    missing_timestamps,
    missing_feature,
    empty_dataset,
    // cli / io
    io_error,
    usage_error,
};

constexpr std::string_view errc_name(errc c) {
    switch (c) {
        case errc::malformed_hex: return "MalformedHex";
        case errc::invalid_n: return "InvalidN";
        case errc::mismatched_n: return "MismatchedN";
        case errc::invalid_threshold: return "InvalidThreshold";
        case errc::missing_incident_id: return "MissingIncidentId";
        case errc::never_active: return "NeverActive";
        case errc::active_at_genesis: return "ActiveAtGenesis";
        case errc::no_balance_before_activity: return "NoBalanceBeforeActivity";
        case errc::funding_tx_not_found: return "FundingTxNotFound";
        case errc::too_short: return "TooShort";
        case errc::misaligned_ticks: return "MisalignedTicks";
        case errc::degenerate_regressor: return "DegenerateRegressor";
        case errc::empty_series: return "EmptySeries";
        case errc::parse_error: return "ParseError";
        case errc::validation_error: return "ValidationError";
        case errc::invalid_counts: return "InvalidCounts";
        case errc::missing_timestamps: return "MissingTimestamps";
        case errc::missing_feature: return "MissingFeature";
        case errc::empty_dataset: return "EmptyDataset";
        case errc::io_error: return "IoError";
        case errc::usage_error: return "UsageError";
    }
    return "UnknownError";
}

/// Error carrying a stable machine-readable code alongside the message.
class Error : public std::runtime_error {
public:
    Error(errc code, const std::string& msg)
        : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}

    errc code() const noexcept { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void raise(errc code, const std::string& msg) { throw Error(code, msg); }

}  // namespace defisect
