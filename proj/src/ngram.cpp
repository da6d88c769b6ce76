// defisect: DeFi incident forensics toolkit
// Copyright 2026 The defisect Authors.
// SPDX-License-Identifier: Apache-2.0

#include "defisect/ngram.hpp"

#include <algorithm>
#include <iterator>

#include "defisect/error.hpp"

namespace defisect {

namespace {

std::uint64_t fingerprint(const std::uint8_t* window, std::size_t n) {
    if (n <= 8) {
        std::uint64_t packed = 1;  // length marker; injective for fixed n
        for (std::size_t i = 0; i < n; ++i) packed = packed << 8 | window[i];
        return packed;
    }
    std::uint64_t hash = 14695981039346656037ull;
    for (std::size_t i = 0; i < n; ++i) {
        hash ^= window[i];
        hash *= 1099511628211ull;
    }
    return hash;
}

}  // namespace

GramProfile build_profile(const OpcodeStream& stream, std::size_t n) {
    if (n == 0) raise(errc::invalid_n, "n-gram size must be positive");
    GramProfile profile;
    profile.source_id = stream.source_id;
    profile.n = n;
    if (stream.opcodes.size() >= n) {
        for (std::size_t i = 0; i + n <= stream.opcodes.size(); ++i)
            profile.grams.insert(fingerprint(stream.opcodes.data() + i, n));
    }
    return profile;
}

std::set<std::string> exact_grams(const OpcodeStream& stream, std::size_t n) {
    if (n == 0) raise(errc::invalid_n, "n-gram size must be positive");
    std::set<std::string> grams;
    if (stream.opcodes.size() >= n) {
        for (std::size_t i = 0; i + n <= stream.opcodes.size(); ++i)
            grams.emplace(reinterpret_cast<const char*>(stream.opcodes.data() + i), n);
    }
    return grams;
}

double jaccard(const GramProfile& a, const GramProfile& b) {
    if (a.n != b.n) raise(errc::mismatched_n, "profiles built with different n");
    if (a.grams.empty() && b.grams.empty()) return 0.0;
    std::size_t shared = 0;
    auto ia = a.grams.begin();
    auto ib = b.grams.begin();
    while (ia != a.grams.end() && ib != b.grams.end()) {
        if (*ia < *ib) {
            ++ia;
        } else if (*ib < *ia) {
            ++ib;
        } else {
            ++shared;
            ++ia;
            ++ib;
        }
    }
    const std::size_t unioned = a.grams.size() + b.grams.size() - shared;
    return static_cast<double>(shared) / static_cast<double>(unioned);
}

}  // namespace defisect
