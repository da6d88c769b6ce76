// defisect: DeFi incident forensics toolkit
// Copyright 2026 The defisect Authors.
// SPDX-License-Identifier: Apache-2.0

#include "defisect/taxonomy.hpp"

#include "defisect/csv.hpp"
#include "defisect/error.hpp"
#include "defisect/io_util.hpp"

#ifndef DEFISECT_TAXONOMY_PATH
#define DEFISECT_TAXONOMY_PATH "data/taxonomy.csv"
#endif

namespace defisect {

std::string_view layer_name(Layer layer) {
    switch (layer) {
        case Layer::NET: return "NET";
        case Layer::CON: return "CON";
        case Layer::SC: return "SC";
        case Layer::PRO: return "PRO";
        case Layer::AUX: return "AUX";
    }
    return "NET";
}

Layer parse_layer(std::string_view name) {
    if (name == "NET") return Layer::NET;
    if (name == "CON") return Layer::CON;
    if (name == "SC") return Layer::SC;
    if (name == "PRO") return Layer::PRO;
    if (name == "AUX") return Layer::AUX;
    raise(errc::parse_error, "unknown layer: " + std::string(name));
}

Taxonomy Taxonomy::from_csv(const std::string& text) {
    Taxonomy taxonomy;
    std::string body;
    std::size_t pos = 0;
    while (pos < text.size()) {  // strip comment lines, remember the version
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string::npos) eol = text.size();
        std::string_view line(text.data() + pos, eol - pos);
        if (!line.empty() && line.front() == '#') {
            const std::string_view tag = "# taxonomy-version ";
            if (line.substr(0, tag.size()) == tag)
                taxonomy.version_ = std::string(line.substr(tag.size()));
        } else {
            body.append(line);
            body.push_back('\n');
        }
        pos = eol + 1;
    }

    const auto records = parse_csv(body);
    if (records.empty() ||
        records.front() != std::vector<std::string>{"layer", "cause", "incident_type"})
        raise(errc::parse_error, "taxonomy must start with header layer,cause,incident_type");
    for (std::size_t i = 1; i < records.size(); ++i) {
        const auto& row = records[i];
        if (row.size() == 1 && row[0].empty()) continue;
        if (row.size() != 3)
            raise(errc::parse_error, "taxonomy row " + std::to_string(i + 1) + " needs 3 fields");
        TaxonomyEntry entry{parse_layer(row[0]), row[1], row[2]};
        if (!taxonomy.index_.emplace(entry.layer, entry.cause, entry.incident_type).second)
            raise(errc::validation_error, "duplicate taxonomy row: " + row[0] + "/" + row[1]);
        taxonomy.entries_.push_back(std::move(entry));
    }
    return taxonomy;
}

Taxonomy Taxonomy::load(const std::string& path) {
    return from_csv(read_file(path));
}

const Taxonomy& Taxonomy::builtin() {
    static const Taxonomy table = Taxonomy::load(DEFISECT_TAXONOMY_PATH);
    return table;
}

bool Taxonomy::contains(const TaxonomyEntry& entry) const {
    return index_.contains({entry.layer, entry.cause, entry.incident_type});
}

bool validate_taxonomy(const TaxonomyEntry& entry) {
    return Taxonomy::builtin().contains(entry);
}

}  // namespace defisect
