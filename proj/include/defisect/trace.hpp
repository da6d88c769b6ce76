// defisect: DeFi incident forensics toolkit
// Copyright 2026 The defisect Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "defisect/chain.hpp"
#include "defisect/labels.hpp"

namespace defisect {

// One backwards step: the transfer that first gave `to` a balance.
struct TraceHop {
    std::string to;
    std::string funding_tx;
    std::string from;
    std::uint64_t block = 0;
    Amount amount = 0;
};

struct FundingSource {
    SourceKind kind = SourceKind::unknown;
    std::string entity;  // registry name when labeled
    std::size_t hops = 0;
    std::vector<TraceHop> path;
};

// Last block where T had sent nothing; T's first tx lands in b_first + 1.
std::uint64_t find_first_activity(const ChainStateProvider& provider, const std::string& target);

// First block where T's balance is positive, searched on [0, b_first].
// Binary search assumes a zero prefix; the result is verified and the
// prefix re-scanned so drain-and-refund histories still yield the first
// funding block.
std::uint64_t find_funding_block(const ChainStateProvider& provider, const std::string& target,
                                 std::uint64_t b_first);

// The earliest transaction in the funding block that pays T. nullopt means
// the balance came from a genesis allocation rather than a transfer.
std::optional<TraceHop> one_hop_trace(const ChainStateProvider& provider,
                                      const std::string& target);

// Walks one_hop_trace backwards until a labeled entity, a genesis
// allocation, or the hop budget. A mixer label terminates the walk only
// when a third party paid the funding tx's fee (relayer-style withdrawal);
// a self-paid withdrawal keeps tracing through the fee payer instead.
FundingSource trace_to_source(const ChainStateProvider& provider, const LabelRegistry& registry,
                              const std::string& target, std::size_t max_hops = 10);

}  // namespace defisect
