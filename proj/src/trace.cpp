// defisect: DeFi incident forensics toolkit
// Copyright 2026 The defisect Authors.
// SPDX-License-Identifier: Apache-2.0

#include "defisect/trace.hpp"

#include <set>

#include "defisect/error.hpp"

namespace defisect {

std::uint64_t find_first_activity(const ChainStateProvider& provider, const std::string& target) {
    const std::uint64_t head = provider.height();
    if (provider.nonce_at(target, head) == 0)
        raise(errc::never_active, target + " has sent no transactions");
    if (provider.nonce_at(target, 0) > 0)
        raise(errc::active_at_genesis, target + " already active at block 0");

    std::uint64_t lo = 0;  // nonce 0 here
    std::uint64_t hi = head;  // nonce positive here
    while (hi - lo > 1) {
        const std::uint64_t mid = lo + (hi - lo) / 2;
        if (provider.nonce_at(target, mid) == 0)
            lo = mid;
        else
            hi = mid;
    }
    if (provider.nonce_at(target, lo) != 0 || provider.nonce_at(target, lo + 1) == 0)
        raise(errc::validation_error, "non-monotone nonce history for " + target);
    return lo;
}

std::uint64_t find_funding_block(const ChainStateProvider& provider, const std::string& target,
                                 std::uint64_t b_first) {
    if (provider.balance_at(target, b_first) == 0)
        raise(errc::no_balance_before_activity,
              target + " had no balance at its first activity");

    std::uint64_t lo = 0;
    std::uint64_t hi = b_first;  // balance positive here
    if (provider.balance_at(target, 0) > 0) {
        hi = 0;
    } else {
        while (hi - lo > 1) {  // assumes zero prefix then positive
            const std::uint64_t mid = lo + (hi - lo) / 2;
            if (provider.balance_at(target, mid) == 0)
                lo = mid;
            else
                hi = mid;
        }
    }
    // The search is only sound on monotone histories; a drained-then-
    // refunded account passes the local boundary check yet has an earlier
    // funding block. Scan the supposed zero prefix to catch that.
    for (std::uint64_t b = 0; b < hi; ++b)
        if (provider.balance_at(target, b) > 0) return b;
    return hi;
}

std::optional<TraceHop> one_hop_trace(const ChainStateProvider& provider,
                                      const std::string& target) {
    const std::uint64_t b_first = find_first_activity(provider, target);
    const std::uint64_t b_funding = find_funding_block(provider, target, b_first);

    if (b_funding == 0 && provider.genesis_balance(target) > 0) return std::nullopt;

    for (const TxRecord& tx : provider.transactions_of(b_funding)) {
        for (const Transfer& transfer : tx.transfers) {
            if (transfer.to == target && transfer.amount > 0) {
                TraceHop hop;
                hop.to = target;
                hop.funding_tx = tx.tx_id;
                hop.from = transfer.from;
                hop.block = b_funding;
                hop.amount = transfer.amount;
                return hop;
            }
        }
    }
    raise(errc::funding_tx_not_found,
          "no transfer to " + target + " in block " + std::to_string(b_funding));
}

namespace {

const TxRecord* tx_by_id(const ChainStateProvider& provider, std::uint64_t block,
                         const std::string& tx_id) {
    for (const TxRecord& tx : provider.transactions_of(block))
        if (tx.tx_id == tx_id) return &tx;
    return nullptr;
}

}  // namespace

FundingSource trace_to_source(const ChainStateProvider& provider, const LabelRegistry& registry,
                              const std::string& target, std::size_t max_hops) {
    FundingSource source;
    std::set<std::string> visited{target};
    std::string current = target;

    while (source.path.size() < max_hops) {
        std::optional<TraceHop> hop;
        try {
            hop = one_hop_trace(provider, current);
        } catch (const Error&) {
            return source;  // unknown, partial path kept
        }
        if (!hop) {
            source.kind = SourceKind::genesis;
            source.hops = source.path.size();
            return source;
        }
        source.path.push_back(*hop);

        std::string next = hop->from;
        if (const LabelEntry* entry = registry.find(hop->from)) {
            if (entry->kind != SourceKind::mixer) {
                source.kind = entry->kind;
                source.entity = entry->name;
                source.hops = source.path.size();
                return source;
            }
            // Withdrawals from a mixer hide the depositor only when a
            // relayer paid the gas; a self-paid withdrawal points back at
            // whoever funded the fee, so keep tracing that account.
            const TxRecord* tx = tx_by_id(provider, hop->block, hop->funding_tx);
            if (tx == nullptr) return source;
            if (!visited.contains(tx->fee_payer)) {
                source.kind = SourceKind::mixer;
                source.entity = entry->name;
                source.hops = source.path.size();
                return source;
            }
            next = tx->fee_payer;
        }
        if (!visited.insert(next).second) return source;  // cycle, unknown
        current = next;
    }
    return source;  // hop budget spent, unknown
}

}  // namespace defisect
