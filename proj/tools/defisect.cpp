// defisect: DeFi incident forensics toolkit
// Copyright 2026 The defisect Authors.
// SPDX-License-Identifier: Apache-2.0

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "defisect/analytics.hpp"
#include "defisect/chain.hpp"
#include "defisect/clone.hpp"
#include "defisect/csv.hpp"
#include "defisect/disasm.hpp"
#include "defisect/error.hpp"
#include "defisect/event_study.hpp"
#include "defisect/hex.hpp"
#include "defisect/incident.hpp"
#include "defisect/io_util.hpp"
#include "defisect/link.hpp"
#include "defisect/labels.hpp"
#include "defisect/opcode.hpp"
#include "defisect/trace.hpp"

namespace {

using nlohmann::json;

std::string format_usd(std::int64_t cents) {
    char buf[40];
    if (cents % 100 == 0) {
        std::snprintf(buf, sizeof buf, "%lld", static_cast<long long>(cents / 100));
    } else {
        std::snprintf(buf, sizeof buf, "%lld.%02lld", static_cast<long long>(cents / 100),
                      static_cast<long long>(std::abs(cents % 100)));
    }
    return buf;
}

std::string format_pct(double pct) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.2f", defisect::round2(pct));
    return buf;
}

std::string format_num(double value) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.12g", value);
    return buf;
}

// Resolve the output format: explicit flag wins, else the --out extension.
std::string pick_format(const std::string& flag, const std::string& out_path,
                        const std::string& fallback) {
    if (!flag.empty()) return flag;
    if (out_path.ends_with(".csv")) return "csv";
    if (out_path.ends_with(".json")) return "json";
    return fallback;
}

void emit(const std::string& out_path, const std::string& content) {
    if (out_path.empty()) {
        std::fwrite(content.data(), 1, content.size(), stdout);
    } else {
        defisect::write_file_atomic(out_path, content);
    }
}

struct DisasmArgs {
    std::string in, out, format;
    bool keep_metadata = false;
};

int run_disasm(const DisasmArgs& args) {
    const defisect::RawBytecode raw = defisect::load_hex_file(args.in);
    const defisect::OpcodeStream stream =
        args.keep_metadata ? defisect::disassemble(raw) : defisect::normalize(raw);

    const std::string format = pick_format(args.format, args.out, "json");
    std::string content;
    if (format == "csv") {
        content = defisect::csv_row({"position", "mnemonic"});
        for (std::size_t i = 0; i < stream.opcodes.size(); ++i)
            content += defisect::csv_row(
                {std::to_string(i), std::string(defisect::mnemonic(stream.opcodes[i]))});
    } else {
        json doc;
        doc["source_id"] = stream.source_id;
        doc["opcode_count"] = stream.opcodes.size();
        doc["immediate_bytes"] = stream.immediate_bytes;
        doc["invalid_count"] = stream.invalid_count;
        doc["stripped_metadata_len"] = stream.stripped_metadata_len;
        json ops = json::array();
        for (std::uint8_t op : stream.opcodes) ops.push_back(std::string(defisect::mnemonic(op)));
        doc["mnemonics"] = std::move(ops);
        content = doc.dump(2) + "\n";
    }
    emit(args.out, content);
    return 0;
}

struct CloneArgs {
    std::string manifest, out, format;
    double threshold = 0.8;
    std::size_t n = 5;
    bool dedupe = false;
};

int run_clone(const CloneArgs& args) {
    const json doc = json::parse(defisect::read_file(args.manifest), nullptr, false);
    if (doc.is_discarded() || !doc.is_array())
        defisect::raise(defisect::errc::parse_error, "manifest must be a JSON array");
    const auto base = std::filesystem::path(args.manifest).parent_path();

    std::vector<defisect::GramProfile> profiles;
    std::map<std::string, std::string> incident_of;
    for (const auto& entry : doc) {
        defisect::RawBytecode raw;
        if (entry.contains("hex")) {
            raw = defisect::decode_hex(entry.at("hex").get<std::string>(),
                                       entry.at("source_id").get<std::string>());
        } else {
            const auto path = base / entry.at("path").get<std::string>();
            raw = defisect::load_hex_file(path.string());
            raw.source_id = entry.at("source_id").get<std::string>();
        }
        profiles.push_back(defisect::build_profile(defisect::normalize(raw), args.n));
        if (entry.contains("incident_id"))
            incident_of[profiles.back().source_id] = entry.at("incident_id").get<std::string>();
    }
    if (args.dedupe) profiles = defisect::dedupe_by_incident(profiles, incident_of);

    const auto clusters = defisect::cluster(profiles, args.threshold);
    const auto summary = defisect::report(clusters);

    const std::string format = pick_format(args.format, args.out, "csv");
    std::string content;
    if (format == "csv") {
        content = defisect::csv_row({"profiles", "in_clusters", "clusters", "detectable"});
        content += defisect::csv_row({std::to_string(profiles.size()),
                                      std::to_string(summary.total_in_clusters),
                                      std::to_string(summary.cluster_count),
                                      std::to_string(summary.detectable())});
        content += defisect::csv_row({"cluster", "member", "", ""});
        for (std::size_t c = 0; c < clusters.size(); ++c)
            for (const auto& member : clusters[c].members)
                content += defisect::csv_row({std::to_string(c), member, "", ""});
    } else {
        json out;
        out["profiles"] = profiles.size();
        out["in_clusters"] = summary.total_in_clusters;
        out["clusters"] = summary.cluster_count;
        out["detectable"] = summary.detectable();
        json membership = json::array();
        for (const auto& cluster : clusters) membership.push_back(cluster.members);
        out["members"] = std::move(membership);
        content = out.dump(2) + "\n";
    }
    emit(args.out, content);
    return 0;
}

json source_to_json(const std::string& address, const defisect::FundingSource& source) {
    json j;
    j["address"] = address;
    j["kind"] = std::string(defisect::source_kind_name(source.kind));
    if (!source.entity.empty()) j["entity"] = source.entity;
    j["hops"] = source.hops;
    json path = json::array();
    for (const auto& hop : source.path)
        path.push_back({{"to", hop.to},
                        {"funding_tx", hop.funding_tx},
                        {"from", hop.from},
                        {"block", hop.block},
                        {"amount", hop.amount}});
    j["path"] = std::move(path);
    return j;
}

struct TraceArgs {
    std::string chain, labels, out, format;
    std::vector<std::string> addresses;
    std::size_t max_hops = 10;
};

int run_trace(const TraceArgs& args) {
    const auto chain = defisect::FixtureChain::load(args.chain);
    const auto registry = args.labels.empty() ? defisect::LabelRegistry()
                                              : defisect::LabelRegistry::load(args.labels);

    std::vector<std::pair<std::string, defisect::FundingSource>> results;
    for (const auto& address : args.addresses)
        results.emplace_back(address,
                             defisect::trace_to_source(chain, registry, address, args.max_hops));

    const std::string format = pick_format(args.format, args.out, "json");
    std::string content;
    if (format == "csv") {
        content = defisect::csv_row({"address", "kind", "entity", "hops"});
        for (const auto& [address, source] : results)
            content += defisect::csv_row({address,
                                          std::string(defisect::source_kind_name(source.kind)),
                                          source.entity, std::to_string(source.hops)});
    } else {
        json doc = json::array();
        for (const auto& [address, source] : results)
            doc.push_back(source_to_json(address, source));
        content = doc.dump(2) + "\n";
    }
    emit(args.out, content);
    return 0;
}

struct LinkArgs {
    std::string chain, labels, incidents, out, format;
    std::size_t k = 3;
    std::size_t max_hops = 10;
};

int run_link(const LinkArgs& args) {
    const auto chain = defisect::FixtureChain::load(args.chain);
    const auto registry = args.labels.empty() ? defisect::LabelRegistry()
                                              : defisect::LabelRegistry::load(args.labels);

    const auto rows = defisect::parse_csv(defisect::read_file(args.incidents));
    if (rows.empty() || rows.front() != std::vector<std::string>{"incident_id", "address"})
        defisect::raise(defisect::errc::parse_error,
                        "incident list must start with header incident_id,address");

    std::vector<std::pair<std::string, defisect::FundingSource>> sources;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (rows[i].size() == 1 && rows[i][0].empty()) continue;
        if (rows[i].size() != 2)
            defisect::raise(defisect::errc::parse_error,
                            "incident row " + std::to_string(i + 1) + " needs 2 fields");
        sources.emplace_back(rows[i][0], defisect::trace_to_source(chain, registry, rows[i][1],
                                                                   args.max_hops));
    }
    const auto clusters = defisect::link_adversaries(sources, args.k);

    const std::string format = pick_format(args.format, args.out, "json");
    std::string content;
    if (format == "csv") {
        content = defisect::csv_row({"suspect", "incident_id", "hops"});
        for (const auto& cluster : clusters)
            for (const auto& [incident, hops] : cluster.incidents)
                content += defisect::csv_row({cluster.suspect, incident, std::to_string(hops)});
    } else {
        json doc = json::array();
        for (const auto& cluster : clusters) {
            json j;
            j["suspect"] = cluster.suspect;
            json incidents = json::array();
            for (const auto& [incident, hops] : cluster.incidents)
                incidents.push_back({{"incident_id", incident}, {"hops", hops}});
            j["incidents"] = std::move(incidents);
            doc.push_back(std::move(j));
        }
        content = doc.dump(2) + "\n";
    }
    emit(args.out, content);
    return 0;
}

struct CarArgs {
    std::string token, btc, eth, out, curve_out, format;
    std::uint64_t event_tick = 0;
    std::size_t estimation_window = 144;
    std::size_t event_window = 0;
    bool log_returns = false;
    bool return_mean_proxy = false;
};

int run_car(const CarArgs& args) {
    defisect::EventStudyConfig config;
    config.estimation_window = args.estimation_window;
    config.event_window = args.event_window;
    config.return_kind =
        args.log_returns ? defisect::ReturnKind::logarithmic : defisect::ReturnKind::simple;
    config.proxy_kind = args.return_mean_proxy ? defisect::ProxyKind::return_mean
                                               : defisect::ProxyKind::price_mean;

    const auto token = defisect::load_price_csv(args.token);
    const auto btc = defisect::load_price_csv(args.btc);
    const auto eth = defisect::load_price_csv(args.eth);
    const auto result = defisect::event_study(token, btc, eth, args.event_tick, config);

    const std::string format = pick_format(args.format, args.out, "json");
    std::string content;
    if (format == "csv") {
        content = defisect::csv_row({"alpha", "beta", "car_min", "argmin_tick"});
        content += defisect::csv_row({format_num(result.fit.alpha), format_num(result.fit.beta),
                                      format_num(result.car.car_min),
                                      std::to_string(result.argmin_tick)});
    } else {
        json doc;
        doc["alpha"] = result.fit.alpha;
        doc["beta"] = result.fit.beta;
        doc["window"] = result.fit.window;
        doc["residual_variance"] = result.fit.residual_variance;
        doc["car_min"] = result.car.car_min;
        doc["argmin_tick"] = result.argmin_tick;
        content = doc.dump(2) + "\n";
    }
    emit(args.out, content);

    if (!args.curve_out.empty()) {
        std::string curve = defisect::csv_row({"offset", "ar", "car"});
        double running = 0.0;
        for (std::size_t i = 0; i < result.car.abnormal_returns.size(); ++i) {
            running += result.car.abnormal_returns[i];
            curve += defisect::csv_row({std::to_string(i),
                                        format_num(result.car.abnormal_returns[i]),
                                        format_num(running)});
        }
        defisect::write_file_atomic(args.curve_out, curve);
    }
    return 0;
}

struct StatsArgs {
    std::string dataset, analysis, out, format;
    bool permissive = false;
    std::uint64_t audited_total = 0, audited_attacked = 0;
    std::uint64_t unaudited_total = 0, unaudited_attacked = 0;
};

std::string month_label(const defisect::MonthlyStat& stat) {
    char buf[8];
    std::snprintf(buf, sizeof buf, "%04d-%02u", stat.year, stat.month);
    return buf;
}

int run_stats(const StatsArgs& args) {
    const std::string format = pick_format(args.format, args.out, "csv");
    std::string content;

    if (args.analysis == "audit") {
        const auto result =
            defisect::audit_effectiveness(args.audited_total, args.audited_attacked,
                                          args.unaudited_total, args.unaudited_attacked);
        if (format == "csv") {
            content = defisect::csv_row({"audited_rate_pct", "unaudited_rate_pct", "ratio"});
            content += defisect::csv_row(
                {format_pct(result.audited_rate_pct), format_pct(result.unaudited_rate_pct),
                 result.ratio ? format_pct(*result.ratio) : std::string()});
        } else {
            json doc;
            doc["audited_rate_pct"] = defisect::round2(result.audited_rate_pct);
            doc["unaudited_rate_pct"] = defisect::round2(result.unaudited_rate_pct);
            if (result.ratio) doc["ratio"] = defisect::round2(*result.ratio);
            content = doc.dump(2) + "\n";
        }
        emit(args.out, content);
        return 0;
    }

    const auto dataset = defisect::load_dataset(args.dataset, args.permissive);

    if (args.analysis == "monthly") {
        const auto stats = defisect::monthly_stats(dataset);
        if (format == "csv") {
            content = defisect::csv_row({"month", "incidents", "loss_usd"});
            for (const auto& stat : stats)
                content += defisect::csv_row({month_label(stat),
                                              std::to_string(stat.incident_count),
                                              format_usd(stat.total_loss_cents)});
        } else {
            json doc = json::array();
            for (const auto& stat : stats)
                doc.push_back({{"month", month_label(stat)},
                               {"incidents", stat.incident_count},
                               {"loss_usd", stat.total_loss_cents / 100.0}});
            content = doc.dump(2) + "\n";
        }
    } else if (args.analysis == "protocol") {
        const auto stats = defisect::protocol_type_stats(dataset);
        if (format == "csv") {
            content = defisect::csv_row({"type", "loss_usd", "pct_loss", "count", "pct_count",
                                         "pct_net", "pct_con", "pct_sc", "pct_pro", "pct_aux"});
            for (const auto& stat : stats)
                content += defisect::csv_row(
                    {std::string(defisect::protocol_type_name(stat.type)),
                     format_usd(stat.loss_cents), format_pct(stat.pct_loss),
                     std::to_string(stat.count), format_pct(stat.pct_count),
                     format_pct(stat.layer_pct[0]), format_pct(stat.layer_pct[1]),
                     format_pct(stat.layer_pct[2]), format_pct(stat.layer_pct[3]),
                     format_pct(stat.layer_pct[4])});
        } else {
            json doc = json::array();
            for (const auto& stat : stats)
                doc.push_back({{"type", std::string(defisect::protocol_type_name(stat.type))},
                               {"loss_usd", stat.loss_cents / 100.0},
                               {"pct_loss", defisect::round2(stat.pct_loss)},
                               {"count", stat.count},
                               {"pct_count", defisect::round2(stat.pct_count)},
                               {"layer_pct",
                                {defisect::round2(stat.layer_pct[0]),
                                 defisect::round2(stat.layer_pct[1]),
                                 defisect::round2(stat.layer_pct[2]),
                                 defisect::round2(stat.layer_pct[3]),
                                 defisect::round2(stat.layer_pct[4])}}});
            content = doc.dump(2) + "\n";
        }
    } else if (args.analysis == "pause") {
        const auto buckets = defisect::pause_buckets(dataset);
        static const char* kLabels[] = {"0-1h", "1-6h", "6-12h", "12-24h", "24-48h",
                                        ">48h or never"};
        if (format == "csv") {
            content = defisect::csv_row({"bucket", "count"});
            for (int i = 0; i < 6; ++i)
                content += defisect::csv_row({kLabels[i], std::to_string(buckets.counts[i])});
        } else {
            json doc = json::array();
            for (int i = 0; i < 6; ++i)
                doc.push_back({{"bucket", kLabels[i]}, {"count", buckets.counts[i]}});
            content = doc.dump(2) + "\n";
        }
    } else if (args.analysis == "atomicity") {
        const auto summary = defisect::atomicity_summary(dataset);
        const auto pct = static_cast<long long>(summary.non_atomic_pct);
        if (format == "csv") {
            content = defisect::csv_row({"non_atomic_count", "non_atomic_pct"});
            content += defisect::csv_row(
                {std::to_string(summary.non_atomic_count), std::to_string(pct)});
        } else {
            json doc;
            doc["non_atomic_count"] = summary.non_atomic_count;
            doc["non_atomic_pct"] = pct;
            content = doc.dump(2) + "\n";
        }
    } else if (args.analysis == "timeframes") {
        std::vector<std::pair<const defisect::IncidentRecord*, defisect::TimeFrames>> rows;
        std::vector<std::string> skipped;
        for (const auto& record : dataset) {
            try {
                rows.emplace_back(&record, defisect::time_frames(record));
            } catch (const defisect::Error&) {
                skipped.push_back(record.id);
            }
        }
        if (format == "csv") {
            content = defisect::csv_row({"id", "rescue_seconds", "incident_seconds", "atomic"});
            for (const auto& [record, frames] : rows)
                content += defisect::csv_row({record->id, std::to_string(frames.rescue_seconds),
                                              std::to_string(frames.incident_seconds),
                                              frames.atomic ? "true" : "false"});
        } else {
            json doc;
            doc["frames"] = json::array();
            for (const auto& [record, frames] : rows)
                doc["frames"].push_back({{"id", record->id},
                                         {"rescue_seconds", frames.rescue_seconds},
                                         {"incident_seconds", frames.incident_seconds},
                                         {"atomic", frames.atomic}});
            doc["skipped"] = skipped;
            content = doc.dump(2) + "\n";
        }
    } else if (args.analysis == "sem") {
        const auto extrema = defisect::sem_extrema(dataset);
        std::vector<std::pair<std::string, defisect::SemFeatures>> rows;
        std::vector<std::string> skipped;
        for (const auto& record : dataset) {
            try {
                rows.emplace_back(record.id, defisect::prepare_sem_features(record, extrema));
            } catch (const defisect::Error&) {
                skipped.push_back(record.id);
            }
        }
        if (format == "csv") {
            content = defisect::csv_row({"id", "PD1", "PD2", "A1", "RD1", "RD2", "H1", "H2"});
            for (const auto& [id, f] : rows)
                content += defisect::csv_row({id, format_num(f.PD1), format_num(f.PD2),
                                              format_num(f.A1), format_num(f.RD1),
                                              format_num(f.RD2), format_num(f.H1),
                                              format_num(f.H2)});
        } else {
            json doc;
            doc["features"] = json::array();
            for (const auto& [id, f] : rows)
                doc["features"].push_back({{"id", id},
                                           {"PD1", f.PD1},
                                           {"PD2", f.PD2},
                                           {"A1", f.A1},
                                           {"RD1", f.RD1},
                                           {"RD2", f.RD2},
                                           {"H1", f.H1},
                                           {"H2", f.H2}});
            doc["skipped"] = skipped;
            content = doc.dump(2) + "\n";
        }
    } else {
        defisect::raise(defisect::errc::usage_error, "unknown analysis: " + args.analysis);
    }
    emit(args.out, content);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"DeFi incident forensics toolkit"};
    app.require_subcommand(1);
    app.set_version_flag("--version", [] {
        std::string taxonomy = "unavailable";
        try {
            taxonomy = defisect::Taxonomy::builtin().version();
        } catch (const std::exception&) {
        }
        return std::string("defisect ") + DEFISECT_VERSION + " (taxonomy " + taxonomy + ")";
    });

    DisasmArgs disasm_args;
    auto* disasm = app.add_subcommand("disasm", "Disassemble and normalize EVM bytecode");
    disasm->add_option("--in", disasm_args.in, "Hex bytecode file")->required();
    disasm->add_option("--out", disasm_args.out, "Output path (stdout if omitted)");
    disasm->add_option("--format", disasm_args.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}));
    disasm->add_flag("--keep-metadata", disasm_args.keep_metadata,
                     "Disassemble without stripping the compiler metadata trailer");

    CloneArgs clone_args;
    auto* clone = app.add_subcommand("clone", "Cluster bytecodes by n-gram similarity");
    clone->add_option("--manifest", clone_args.manifest, "Corpus manifest JSON")->required();
    clone->add_option("--threshold", clone_args.threshold, "Similarity threshold in (0,1]")
        ->check(CLI::Range(std::numeric_limits<double>::min(), 1.0));
    clone->add_option("--n", clone_args.n, "n-gram size")->check(CLI::Range(1, 1 << 20));
    clone->add_option("--out", clone_args.out, "Output path (stdout if omitted)");
    clone->add_option("--format", clone_args.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}));
    clone->add_flag("--dedupe-incidents", clone_args.dedupe,
                    "Keep one profile per incident before clustering");

    TraceArgs trace_args;
    auto* trace = app.add_subcommand("trace", "Trace an address's source of funds");
    trace->add_option("--chain", trace_args.chain, "Chain fixture JSON")->required();
    trace->add_option("--labels", trace_args.labels, "Label registry CSV");
    trace->add_option("--address", trace_args.addresses, "Address to trace")->required();
    trace->add_option("--max-hops", trace_args.max_hops, "Hop budget")
        ->check(CLI::Range(1, 1 << 20));
    trace->add_option("--out", trace_args.out, "Output path (stdout if omitted)");
    trace->add_option("--format", trace_args.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}));

    LinkArgs link_args;
    auto* link = app.add_subcommand("link", "Find adversaries shared across incidents");
    link->add_option("--chain", link_args.chain, "Chain fixture JSON")->required();
    link->add_option("--labels", link_args.labels, "Label registry CSV");
    link->add_option("--incidents", link_args.incidents,
                     "CSV of incident_id,address rows")->required();
    link->add_option("--k", link_args.k, "Hop window for shared funders")
        ->check(CLI::Range(1, 1 << 20));
    link->add_option("--max-hops", link_args.max_hops, "Hop budget per trace")
        ->check(CLI::Range(1, 1 << 20));
    link->add_option("--out", link_args.out, "Output path (stdout if omitted)");
    link->add_option("--format", link_args.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}));

    CarArgs car_args;
    auto* car = app.add_subcommand("car", "Event-study cumulative abnormal return");
    car->add_option("--token", car_args.token, "Victim token prices CSV")->required();
    car->add_option("--btc", car_args.btc, "BTC prices CSV")->required();
    car->add_option("--eth", car_args.eth, "ETH prices CSV")->required();
    car->add_option("--event-tick", car_args.event_tick, "Tick index of the incident")
        ->required();
    car->add_option("--estimation-window", car_args.estimation_window,
                    "Return observations fitted before the event")
        ->check(CLI::Range(2, 1 << 20));
    car->add_option("--event-window", car_args.event_window,
                    "AR observations scanned from the event (0 = to end)");
    car->add_flag("--log-returns", car_args.log_returns, "Use log returns");
    car->add_flag("--return-mean-proxy", car_args.return_mean_proxy,
                  "Market proxy as mean of returns instead of mean of prices");
    car->add_option("--out", car_args.out, "Output path (stdout if omitted)");
    car->add_option("--curve-out", car_args.curve_out, "Per-tick AR/CAR curve CSV");
    car->add_option("--format", car_args.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}));

    StatsArgs stats_args;
    auto* stats = app.add_subcommand("stats", "Dataset analytics tables");
    stats->add_option("--dataset", stats_args.dataset, "Incident dataset (JSON or CSV)");
    stats->add_option("--analysis", stats_args.analysis, "Analysis to run")
        ->required()
        ->check(CLI::IsMember(
            {"monthly", "protocol", "audit", "pause", "atomicity", "timeframes", "sem"}));
    stats->add_flag("--permissive", stats_args.permissive,
                    "Accept records outside the collection span");
    stats->add_option("--audited-total", stats_args.audited_total, "Audited protocols");
    stats->add_option("--audited-attacked", stats_args.audited_attacked,
                      "Audited protocols attacked at least once");
    stats->add_option("--unaudited-total", stats_args.unaudited_total, "Unaudited protocols");
    stats->add_option("--unaudited-attacked", stats_args.unaudited_attacked,
                      "Unaudited protocols attacked at least once");
    stats->add_option("--out", stats_args.out, "Output path (stdout if omitted)");
    stats->add_option("--format", stats_args.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (disasm->parsed()) return run_disasm(disasm_args);
        if (clone->parsed()) return run_clone(clone_args);
        if (trace->parsed()) return run_trace(trace_args);
        if (link->parsed()) return run_link(link_args);
        if (car->parsed()) return run_car(car_args);
        if (stats->parsed()) {
            if (stats_args.analysis != "audit" && stats_args.dataset.empty())
                defisect::raise(defisect::errc::usage_error, "--dataset is required");
            return run_stats(stats_args);
        }
    } catch (const defisect::Error& e) {
        json manifest;
        manifest["error"]["code"] = std::string(defisect::errc_name(e.code()));
        manifest["error"]["message"] = e.what();
        std::cerr << manifest.dump() << "\n";
        return e.code() == defisect::errc::usage_error ? 2 : 1;
    } catch (const std::exception& e) {
        json manifest;
        manifest["error"]["code"] = "InternalError";
        manifest["error"]["message"] = e.what();
        std::cerr << manifest.dump() << "\n";
        return 1;
    }
    return 0;
}
