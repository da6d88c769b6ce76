// defisect: DeFi incident forensics toolkit
// Copyright 2026 The defisect Authors.
// SPDX-License-Identifier: Apache-2.0

#include "defisect/incident.hpp"

#include <charconv>
#include <cmath>

#include <nlohmann/json.hpp>

#include "defisect/csv.hpp"
#include "defisect/error.hpp"
#include "defisect/io_util.hpp"

namespace defisect {

namespace {

unsigned days_in_month(int year, unsigned month) {
    static constexpr unsigned kDays[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (month == 2 && (year % 4 == 0 && (year % 100 != 0 || year % 400 == 0))) return 29;
    return kDays[month - 1];
}

int parse_uint_field(std::string_view text, std::size_t pos, std::size_t len) {
    int value = 0;
    for (std::size_t i = pos; i < pos + len; ++i) {
        const char c = text[i];
        if (c < '0' || c > '9') raise(errc::parse_error, "bad date: " + std::string(text));
        value = value * 10 + (c - '0');
    }
    return value;
}

}  // namespace

Date parse_date(std::string_view text) {
    if (text.size() != 10 || text[4] != '-' || text[7] != '-')
        raise(errc::parse_error, "bad date: " + std::string(text));
    Date date;
    date.year = parse_uint_field(text, 0, 4);
    date.month = static_cast<unsigned>(parse_uint_field(text, 5, 2));
    date.day = static_cast<unsigned>(parse_uint_field(text, 8, 2));
    if (date.month < 1 || date.month > 12 || date.day < 1 ||
        date.day > days_in_month(date.year, date.month))
        raise(errc::parse_error, "impossible date: " + std::string(text));
    return date;
}

std::string format_date(const Date& date) {
    char buf[11];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", date.year, date.month, date.day);
    return buf;
}

std::string_view chain_name(Chain chain) {
    return chain == Chain::Ethereum ? "Ethereum" : "BSC";
}

Chain parse_chain(std::string_view name) {
    if (name == "Ethereum") return Chain::Ethereum;
    if (name == "BSC") return Chain::BSC;
    raise(errc::parse_error, "unknown chain: " + std::string(name));
}

std::string_view protocol_type_name(ProtocolType type) {
    switch (type) {
        case ProtocolType::yield: return "yield";
        case ProtocolType::bridge: return "bridge";
        case ProtocolType::lending: return "lending";
        case ProtocolType::dex: return "dex";
        case ProtocolType::stablecoin: return "stablecoin";
        case ProtocolType::dao: return "dao";
        case ProtocolType::payment: return "payment";
        case ProtocolType::derivatives: return "derivatives";
        case ProtocolType::insurance: return "insurance";
        case ProtocolType::other: return "other";
    }
    return "other";
}

ProtocolType parse_protocol_type(std::string_view name) {
    for (int i = 0; i <= static_cast<int>(ProtocolType::other); ++i)
        if (name == protocol_type_name(static_cast<ProtocolType>(i)))
            return static_cast<ProtocolType>(i);
    raise(errc::parse_error, "unknown protocol type: " + std::string(name));
}

std::string_view audit_status_name(AuditStatus status) {
    switch (status) {
        case AuditStatus::Audited: return "Audited";
        case AuditStatus::PartiallyAudited: return "PartiallyAudited";
        case AuditStatus::NotAudited: return "NotAudited";
    }
    return "NotAudited";
}

AuditStatus parse_audit_status(std::string_view name) {
    if (name == "Audited") return AuditStatus::Audited;
    if (name == "PartiallyAudited") return AuditStatus::PartiallyAudited;
    if (name == "NotAudited") return AuditStatus::NotAudited;
    raise(errc::parse_error, "unknown audit status: " + std::string(name));
}

namespace {

std::int64_t dollars_to_cents(double dollars) {
    if (!std::isfinite(dollars)) raise(errc::parse_error, "non-finite USD amount");
    return std::llround(dollars * 100.0);
}

nlohmann::json cents_to_json(std::int64_t cents) {
    if (cents % 100 == 0) return cents / 100;
    return static_cast<double>(cents) / 100.0;
}

nlohmann::json record_to_json(const IncidentRecord& r) {
    nlohmann::json j;
    j["id"] = r.id;
    j["chain"] = chain_name(r.chain);
    j["date"] = format_date(r.date);
    j["taxonomy"] = nlohmann::json::array();
    for (const auto& entry : r.taxonomy)
        j["taxonomy"].push_back({{"layer", layer_name(entry.layer)},
                                 {"cause", entry.cause},
                                 {"incident_type", entry.incident_type}});
    j["protocol_type"] = protocol_type_name(r.protocol_type);
    j["loss_usd"] = cents_to_json(r.loss_cents);
    if (r.tvl_cents) j["tvl_usd"] = cents_to_json(*r.tvl_cents);
    if (r.car) j["car"] = *r.car;
    j["audit_status"] = audit_status_name(r.audit_status);
    if (r.disclosed_within_20d) j["disclosed_within_20d"] = *r.disclosed_within_20d;
    if (r.reimbursed_within_20d) j["reimbursed_within_20d"] = *r.reimbursed_within_20d;
    j["supports_pause"] = r.supports_pause;
    if (r.pause_delay_seconds) j["pause_delay"] = *r.pause_delay_seconds;
    j["adversary_addresses"] = r.adversary_addresses;
    j["victim_contracts"] = r.victim_contracts;
    if (r.deploy_tx) j["deploy_tx"] = *r.deploy_tx;
    if (r.first_malicious_tx) j["first_malicious_tx"] = *r.first_malicious_tx;
    if (r.last_malicious_tx) j["last_malicious_tx"] = *r.last_malicious_tx;
    j["tx_timestamps"] = r.tx_timestamps;
    return j;
}

IncidentRecord record_from_json(const nlohmann::json& j) {
    IncidentRecord r;
    r.id = j.at("id").get<std::string>();
    r.chain = parse_chain(j.at("chain").get<std::string>());
    r.date = parse_date(j.at("date").get<std::string>());
    for (const auto& entry : j.at("taxonomy")) {
        TaxonomyEntry t;
        t.layer = parse_layer(entry.at("layer").get<std::string>());
        t.cause = entry.at("cause").get<std::string>();
        t.incident_type = entry.at("incident_type").get<std::string>();
        r.taxonomy.push_back(std::move(t));
    }
    r.protocol_type = parse_protocol_type(j.at("protocol_type").get<std::string>());
    r.loss_cents = dollars_to_cents(j.at("loss_usd").get<double>());
    if (j.contains("tvl_usd")) r.tvl_cents = dollars_to_cents(j.at("tvl_usd").get<double>());
    if (j.contains("car")) r.car = j.at("car").get<double>();
    r.audit_status = parse_audit_status(j.at("audit_status").get<std::string>());
    if (j.contains("disclosed_within_20d"))
        r.disclosed_within_20d = j.at("disclosed_within_20d").get<bool>();
    if (j.contains("reimbursed_within_20d"))
        r.reimbursed_within_20d = j.at("reimbursed_within_20d").get<bool>();
    r.supports_pause = j.at("supports_pause").get<bool>();
    if (j.contains("pause_delay")) r.pause_delay_seconds = j.at("pause_delay").get<std::uint64_t>();
    if (j.contains("adversary_addresses"))
        r.adversary_addresses = j.at("adversary_addresses").get<std::vector<std::string>>();
    if (j.contains("victim_contracts"))
        r.victim_contracts = j.at("victim_contracts").get<std::vector<std::string>>();
    if (j.contains("deploy_tx")) r.deploy_tx = j.at("deploy_tx").get<std::string>();
    if (j.contains("first_malicious_tx"))
        r.first_malicious_tx = j.at("first_malicious_tx").get<std::string>();
    if (j.contains("last_malicious_tx"))
        r.last_malicious_tx = j.at("last_malicious_tx").get<std::string>();
    if (j.contains("tx_timestamps"))
        r.tx_timestamps = j.at("tx_timestamps").get<std::map<std::string, std::uint64_t>>();
    return r;
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::size_t pos = 0;
    while (true) {
        const std::size_t next = text.find(sep, pos);
        if (next == std::string::npos) {
            parts.push_back(text.substr(pos));
            return parts;
        }
        parts.push_back(text.substr(pos, next - pos));
        pos = next + 1;
    }
}

bool parse_bool(const std::string& text) {
    if (text == "true") return true;
    if (text == "false") return false;
    raise(errc::parse_error, "bad boolean: " + text);
}

std::uint64_t parse_u64(const std::string& text) {
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size())
        raise(errc::parse_error, "bad integer: " + text);
    return value;
}

double parse_double(const std::string& text) {
    std::size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(text, &used);
    } catch (const std::exception&) {
        raise(errc::parse_error, "bad number: " + text);
    }
    if (used != text.size()) raise(errc::parse_error, "bad number: " + text);
    return value;
}

IncidentRecord record_from_csv_row(const std::vector<std::string>& header,
                                   const std::vector<std::string>& row) {
    if (row.size() != header.size()) raise(errc::parse_error, "row width mismatch");
    IncidentRecord r;
    for (std::size_t i = 0; i < header.size(); ++i) {
        const std::string& key = header[i];
        const std::string& value = row[i];
        if (value.empty() && key != "id") continue;  // absent optional
        if (key == "id") r.id = value;
        else if (key == "chain") r.chain = parse_chain(value);
        else if (key == "date") r.date = parse_date(value);
        else if (key == "taxonomy") {
            for (const auto& triple : split(value, ';')) {
                const auto parts = split(triple, ':');
                if (parts.size() != 3)
                    raise(errc::parse_error, "taxonomy triple needs layer:cause:type");
                r.taxonomy.push_back({parse_layer(parts[0]), parts[1], parts[2]});
            }
        } else if (key == "protocol_type") r.protocol_type = parse_protocol_type(value);
        else if (key == "loss_usd") r.loss_cents = dollars_to_cents(parse_double(value));
        else if (key == "tvl_usd") r.tvl_cents = dollars_to_cents(parse_double(value));
        else if (key == "car") r.car = parse_double(value);
        else if (key == "audit_status") r.audit_status = parse_audit_status(value);
        else if (key == "disclosed_within_20d") r.disclosed_within_20d = parse_bool(value);
        else if (key == "reimbursed_within_20d") r.reimbursed_within_20d = parse_bool(value);
        else if (key == "supports_pause") r.supports_pause = parse_bool(value);
        else if (key == "pause_delay") r.pause_delay_seconds = parse_u64(value);
        else if (key == "adversary_addresses") r.adversary_addresses = split(value, ';');
        else if (key == "victim_contracts") r.victim_contracts = split(value, ';');
        else if (key == "deploy_tx") r.deploy_tx = value;
        else if (key == "first_malicious_tx") r.first_malicious_tx = value;
        else if (key == "last_malicious_tx") r.last_malicious_tx = value;
        else if (key == "tx_timestamps") {
            for (const auto& pair : split(value, ';')) {
                const std::size_t colon = pair.rfind(':');
                if (colon == std::string::npos)
                    raise(errc::parse_error, "tx timestamp needs tx_id:timestamp");
                r.tx_timestamps[pair.substr(0, colon)] = parse_u64(pair.substr(colon + 1));
            }
        } else raise(errc::parse_error, "unknown column: " + key);
    }
    if (r.id.empty()) raise(errc::parse_error, "record without id");
    return r;
}

std::vector<IncidentRecord> validate_all(std::vector<IncidentRecord> records, bool permissive) {
    std::vector<std::string> violations;
    for (const auto& record : records)
        validate_record(record, Taxonomy::builtin(), permissive, violations);
    if (!violations.empty()) {
        std::string message;
        for (const auto& violation : violations) {
            if (!message.empty()) message += "; ";
            message += violation;
        }
        raise(errc::validation_error, message);
    }
    return records;
}

}  // namespace

std::string dataset_to_json(const std::vector<IncidentRecord>& records) {
    nlohmann::json doc = nlohmann::json::array();
    for (const auto& record : records) doc.push_back(record_to_json(record));
    return doc.dump(2) + "\n";
}

std::vector<IncidentRecord> dataset_from_json(const std::string& text, bool permissive) {
    nlohmann::json doc = nlohmann::json::parse(text, nullptr, false);
    if (doc.is_discarded()) raise(errc::parse_error, "invalid JSON");
    if (!doc.is_array()) raise(errc::parse_error, "dataset must be a JSON array");
    std::vector<IncidentRecord> records;
    records.reserve(doc.size());
    for (const auto& item : doc) records.push_back(record_from_json(item));
    return validate_all(std::move(records), permissive);
}

std::vector<IncidentRecord> dataset_from_csv(const std::string& text, bool permissive) {
    const auto rows = parse_csv(text);
    if (rows.empty()) raise(errc::parse_error, "empty dataset CSV");
    std::vector<IncidentRecord> records;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (rows[i].size() == 1 && rows[i][0].empty()) continue;
        records.push_back(record_from_csv_row(rows.front(), rows[i]));
    }
    return validate_all(std::move(records), permissive);
}

std::vector<IncidentRecord> load_dataset(const std::string& path, bool permissive) {
    const std::string text = read_file(path);
    const std::size_t first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '[')
        return dataset_from_json(text, permissive);
    return dataset_from_csv(text, permissive);
}

void validate_record(const IncidentRecord& record, const Taxonomy& taxonomy, bool permissive,
                     std::vector<std::string>& violations) {
    auto flag = [&](const std::string& what) { violations.push_back(record.id + ": " + what); };

    if (record.id.empty()) violations.push_back("(unnamed): empty id");
    if (!permissive && (record.date < kDatasetBegin || kDatasetEnd < record.date))
        flag("date " + format_date(record.date) + " outside collection span");
    if (record.taxonomy.empty()) flag("taxonomy must not be empty");
    for (const auto& entry : record.taxonomy)
        if (!taxonomy.contains(entry))
            flag("unknown taxonomy triple " + std::string(layer_name(entry.layer)) + "/" +
                 entry.cause + "/" + entry.incident_type);
    if (record.loss_cents < 0) flag("negative loss");
    if (record.tvl_cents && *record.tvl_cents < 0) flag("negative TVL");
    if (record.first_malicious_tx && record.last_malicious_tx) {
        auto first = record.tx_timestamps.find(*record.first_malicious_tx);
        auto last = record.tx_timestamps.find(*record.last_malicious_tx);
        if (first != record.tx_timestamps.end() && last != record.tx_timestamps.end() &&
            first->second > last->second)
            flag("first malicious tx after last");
    }
}

}  // namespace defisect
