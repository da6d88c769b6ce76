// defisect: DeFi incident forensics toolkit
// Copyright 2026 The defisect Authors.
// SPDX-License-Identifier: Apache-2.0

#include "defisect/chain.hpp"

#include <algorithm>

#include <nlohmann/json.hpp>

#include "defisect/error.hpp"
#include "defisect/io_util.hpp"

namespace defisect {

namespace {

const std::vector<TxRecord> kNoTxs;

nlohmann::json parse_json(const std::string& text) {
    nlohmann::json doc = nlohmann::json::parse(text, nullptr, false);
    if (doc.is_discarded()) raise(errc::parse_error, "invalid JSON");
    return doc;
}

}  // namespace

FixtureChain FixtureChain::from_json(const std::string& text) {
    const nlohmann::json doc = parse_json(text);
    if (!doc.is_object()) raise(errc::parse_error, "chain fixture must be a JSON object");

    FixtureChain chain;
    for (const auto& alloc : doc.value("genesis_allocations", nlohmann::json::array())) {
        const std::string address = alloc.at("address").get<std::string>();
        const Amount balance = alloc.at("balance").get<Amount>();
        if (!chain.genesis_.emplace(address, balance).second)
            raise(errc::validation_error, "duplicate genesis allocation for " + address);
    }
    for (const auto& block : doc.value("blocks", nlohmann::json::array())) {
        const std::uint64_t number = block.at("number").get<std::uint64_t>();
        auto [slot, inserted] = chain.blocks_.emplace(number, std::vector<TxRecord>());
        if (!inserted)
            raise(errc::validation_error, "duplicate block " + std::to_string(number));
        for (const auto& tx : block.value("txs", nlohmann::json::array())) {
            TxRecord record;
            record.tx_id = tx.at("tx_id").get<std::string>();
            record.block = number;
            if (tx.contains("block") && tx.at("block").get<std::uint64_t>() != number)
                raise(errc::validation_error, "tx " + record.tx_id + " disagrees with its block");
            record.index = tx.value("index", static_cast<std::uint32_t>(slot->second.size()));
            record.sender = tx.at("sender").get<std::string>();
            record.fee_payer = tx.value("fee_payer", record.sender);
            for (const auto& t : tx.value("transfers", nlohmann::json::array())) {
                Transfer transfer;
                transfer.from = t.at("from").get<std::string>();
                transfer.to = t.at("to").get<std::string>();
                transfer.amount = t.at("amount").get<Amount>();
                record.transfers.push_back(std::move(transfer));
            }
            slot->second.push_back(std::move(record));
        }
        std::sort(slot->second.begin(), slot->second.end(),
                  [](const TxRecord& a, const TxRecord& b) { return a.index < b.index; });
    }
    chain.index_blocks();
    return chain;
}

FixtureChain FixtureChain::load(const std::string& path) {
    return from_json(read_file(path));
}

void FixtureChain::index_blocks() {
    height_ = blocks_.empty() ? 0 : blocks_.rbegin()->first;
    std::map<std::string, Amount> balances = genesis_;
    for (const auto& [number, txs] : blocks_) {
        std::vector<std::string> touched;
        for (const auto& tx : txs) {
            sent_blocks_[tx.sender].push_back(number);
            for (const auto& transfer : tx.transfers) {
                auto& from_balance = balances[transfer.from];
                if (from_balance < transfer.amount)
                    raise(errc::validation_error,
                          "tx " + tx.tx_id + " overdraws " + transfer.from);
                from_balance -= transfer.amount;
                balances[transfer.to] += transfer.amount;
                touched.push_back(transfer.from);
                touched.push_back(transfer.to);
            }
        }
        std::sort(touched.begin(), touched.end());
        touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
        for (const auto& address : touched)
            balance_points_[address].emplace_back(number, balances[address]);
    }
}

std::uint64_t FixtureChain::nonce_at(const std::string& address, std::uint64_t block) const {
    auto it = sent_blocks_.find(address);
    if (it == sent_blocks_.end()) return 0;
    const auto& blocks = it->second;
    return static_cast<std::uint64_t>(
        std::upper_bound(blocks.begin(), blocks.end(), block) - blocks.begin());
}

Amount FixtureChain::balance_at(const std::string& address, std::uint64_t block) const {
    auto it = balance_points_.find(address);
    if (it != balance_points_.end()) {
        const auto& points = it->second;
        auto after = std::upper_bound(
            points.begin(), points.end(), block,
            [](std::uint64_t b, const std::pair<std::uint64_t, Amount>& p) { return b < p.first; });
        if (after != points.begin()) return std::prev(after)->second;
    }
    return genesis_balance(address);
}

Amount FixtureChain::genesis_balance(const std::string& address) const {
    auto it = genesis_.find(address);
    return it == genesis_.end() ? 0 : it->second;
}

const std::vector<TxRecord>& FixtureChain::transactions_of(std::uint64_t block) const {
    auto it = blocks_.find(block);
    return it == blocks_.end() ? kNoTxs : it->second;
}

FixtureChainBuilder& FixtureChainBuilder::allocate(const std::string& address, Amount balance) {
    genesis_[address] = balance;
    return *this;
}

FixtureChainBuilder& FixtureChainBuilder::begin_block(std::uint64_t number,
                                                      std::uint64_t timestamp) {
    blocks_.push_back(Block{number, timestamp, {}});
    return *this;
}

FixtureChainBuilder& FixtureChainBuilder::tx(const std::string& tx_id, const std::string& sender,
                                             const std::vector<Transfer>& transfers,
                                             const std::string& fee_payer) {
    if (blocks_.empty()) raise(errc::validation_error, "tx before any block");
    auto& block = blocks_.back();
    TxRecord record;
    record.tx_id = tx_id;
    record.block = block.number;
    record.index = static_cast<std::uint32_t>(block.txs.size());
    record.sender = sender;
    record.fee_payer = fee_payer.empty() ? sender : fee_payer;
    record.transfers = transfers;
    block.txs.push_back(std::move(record));
    return *this;
}

FixtureChain FixtureChainBuilder::build() const {
    return FixtureChain::from_json(to_json());
}

std::string FixtureChainBuilder::to_json() const {
    nlohmann::json doc;
    doc["genesis_allocations"] = nlohmann::json::array();
    for (const auto& [address, balance] : genesis_)
        doc["genesis_allocations"].push_back({{"address", address}, {"balance", balance}});
    doc["blocks"] = nlohmann::json::array();
    for (const auto& block : blocks_) {
        nlohmann::json b{{"number", block.number}, {"timestamp", block.timestamp}};
        b["txs"] = nlohmann::json::array();
        for (const auto& tx : block.txs) {
            nlohmann::json t{{"tx_id", tx.tx_id},
                             {"index", tx.index},
                             {"sender", tx.sender},
                             {"fee_payer", tx.fee_payer}};
            t["transfers"] = nlohmann::json::array();
            for (const auto& transfer : tx.transfers)
                t["transfers"].push_back({{"from", transfer.from},
                                          {"to", transfer.to},
                                          {"amount", transfer.amount}});
            b["txs"].push_back(std::move(t));
        }
        doc["blocks"].push_back(std::move(b));
    }
    return doc.dump(2);
}

}  // namespace defisect
