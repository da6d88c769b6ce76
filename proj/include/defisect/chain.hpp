// defisect: DeFi incident forensics toolkit
// Copyright 2026 The defisect Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace defisect {

using Amount = std::uint64_t;

struct Transfer {
    std::string from;
    std::string to;
    Amount amount = 0;
};

// One transaction with its value movements precomputed (external transfer
// plus any internal transfers), so tracing needs no EVM re-execution.
struct TxRecord {
    std::string tx_id;
    std::uint64_t block = 0;
    std::uint32_t index = 0;
    std::string sender;
    std::string fee_payer;
    std::vector<Transfer> transfers;
};

// Read-only view of account state history. Queries are safe to issue
// concurrently. Block arguments address end-of-block state.
class ChainStateProvider {
  public:
    virtual ~ChainStateProvider() = default;
    virtual std::uint64_t height() const = 0;
    virtual std::uint64_t nonce_at(const std::string& address, std::uint64_t block) const = 0;
    virtual Amount balance_at(const std::string& address, std::uint64_t block) const = 0;
    virtual Amount genesis_balance(const std::string& address) const = 0;
    virtual const std::vector<TxRecord>& transactions_of(std::uint64_t block) const = 0;
};

// In-memory provider backed by a JSON fixture:
//   {"genesis_allocations": [{"address", "balance"}],
//    "blocks": [{"number", "timestamp", "txs": [TxRecord]}]}
// Balances are replayed from the genesis allocations at load time and the
// fixture is rejected if any transfer overdraws its sender.
class FixtureChain : public ChainStateProvider {
  public:
    static FixtureChain from_json(const std::string& text);
    static FixtureChain load(const std::string& path);

    std::uint64_t height() const override { return height_; }
    std::uint64_t nonce_at(const std::string& address, std::uint64_t block) const override;
    Amount balance_at(const std::string& address, std::uint64_t block) const override;
    Amount genesis_balance(const std::string& address) const override;
    const std::vector<TxRecord>& transactions_of(std::uint64_t block) const override;

  private:
    void index_blocks();

    std::uint64_t height_ = 0;
    std::map<std::string, Amount> genesis_;
    std::map<std::uint64_t, std::vector<TxRecord>> blocks_;
    // per-address query indexes, built once at load
    std::map<std::string, std::vector<std::uint64_t>> sent_blocks_;
    std::map<std::string, std::vector<std::pair<std::uint64_t, Amount>>> balance_points_;

    friend class FixtureChainBuilder;
};

// Programmatic fixture assembly for tests and generators.
class FixtureChainBuilder {
  public:
    FixtureChainBuilder& allocate(const std::string& address, Amount balance);
    FixtureChainBuilder& begin_block(std::uint64_t number, std::uint64_t timestamp = 0);
    // Adds a tx to the last begun block; fee_payer defaults to the sender.
    FixtureChainBuilder& tx(const std::string& tx_id, const std::string& sender,
                            const std::vector<Transfer>& transfers,
                            const std::string& fee_payer = {});
    FixtureChain build() const;
    std::string to_json() const;

  private:
    std::map<std::string, Amount> genesis_;
    struct Block {
        std::uint64_t number;
        std::uint64_t timestamp;
        std::vector<TxRecord> txs;
    };
    std::vector<Block> blocks_;
};

}  // namespace defisect
