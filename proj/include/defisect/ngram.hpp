// defisect: DeFi incident forensics toolkit
// Copyright 2026 The defisect Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <set>
#include <string>

#include "defisect/disasm.hpp"

namespace defisect {

// Set of opcode n-gram fingerprints for one bytecode. Windows of n
// consecutive opcodes slide over the normalized stream; streams shorter
// than n yield an empty profile. For n <= 8 the fingerprint is the
// opcodes byte-packed big-endian into a u64 (injective); longer windows
// fall back to 64-bit FNV-1a.
struct GramProfile {
    std::string source_id;
    std::size_t n = 0;
    std::set<std::uint64_t> grams;
};

GramProfile build_profile(const OpcodeStream& stream, std::size_t n = 5);

// Grams as raw opcode-byte strings, for cross-checking the fingerprinted
// profile against an exact representation.
std::set<std::string> exact_grams(const OpcodeStream& stream, std::size_t n = 5);

// |A intersect B| / |A union B|; two empty profiles compare as 0.
double jaccard(const GramProfile& a, const GramProfile& b);

}  // namespace defisect
