// defisect: DeFi incident forensics toolkit
// Copyright 2026 The defisect Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "defisect/taxonomy.hpp"

namespace defisect {

struct Date {
    int year = 0;
    unsigned month = 0;
    unsigned day = 0;

    auto operator<=>(const Date&) const = default;
};

Date parse_date(std::string_view text);  // strict YYYY-MM-DD, real calendar dates only
std::string format_date(const Date& date);

enum class Chain { Ethereum, BSC };
enum class ProtocolType { yield, bridge, lending, dex, stablecoin, dao, payment, derivatives, insurance, other };
enum class AuditStatus { Audited, PartiallyAudited, NotAudited };

std::string_view chain_name(Chain chain);
Chain parse_chain(std::string_view name);
std::string_view protocol_type_name(ProtocolType type);
ProtocolType parse_protocol_type(std::string_view name);
std::string_view audit_status_name(AuditStatus status);
AuditStatus parse_audit_status(std::string_view name);

// One analyzed incident. Monetary values are kept as integer USD cents;
// the serialized form carries dollars. Optional fields stay absent when
// unobtainable rather than defaulting to zero.
struct IncidentRecord {
    std::string id;
    Chain chain = Chain::Ethereum;
    Date date;
    std::vector<TaxonomyEntry> taxonomy;
    ProtocolType protocol_type = ProtocolType::other;
    std::int64_t loss_cents = 0;
    std::optional<std::int64_t> tvl_cents;
    std::optional<double> car;
    AuditStatus audit_status = AuditStatus::NotAudited;
    std::optional<bool> disclosed_within_20d;
    std::optional<bool> reimbursed_within_20d;
    bool supports_pause = false;
    std::optional<std::uint64_t> pause_delay_seconds;  // absent = never executed
    std::vector<std::string> adversary_addresses;
    std::vector<std::string> victim_contracts;
    std::optional<std::string> deploy_tx;
    std::optional<std::string> first_malicious_tx;
    std::optional<std::string> last_malicious_tx;
    std::map<std::string, std::uint64_t> tx_timestamps;  // tx_id -> block timestamp

    bool operator==(const IncidentRecord&) const = default;
};

// Collection span covered by the replica dataset; records outside it are
// rejected unless permissive validation is requested.
inline constexpr Date kDatasetBegin{2018, 4, 30};
inline constexpr Date kDatasetEnd{2022, 4, 30};

std::string dataset_to_json(const std::vector<IncidentRecord>& records);
std::vector<IncidentRecord> dataset_from_json(const std::string& text, bool permissive = false);
// One row per incident; taxonomy triples layer:cause:type joined by ';'.
std::vector<IncidentRecord> dataset_from_csv(const std::string& text, bool permissive = false);
// Dispatches on content: a JSON array or a CSV table.
std::vector<IncidentRecord> load_dataset(const std::string& path, bool permissive = false);

// Appends human-readable violations for one record; empty result = valid.
void validate_record(const IncidentRecord& record, const Taxonomy& taxonomy, bool permissive,
                     std::vector<std::string>& violations);

}  // namespace defisect
