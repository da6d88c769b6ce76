// defisect: DeFi incident forensics toolkit
// Copyright 2026 The defisect Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string_view>

namespace defisect {

// Mainnet opcode set as of the London upgrade (2021). PUSH0 and later
// additions are deliberately absent; unassigned byte values disassemble to
// the INVALID sentinel.

constexpr std::uint8_t kPush1 = 0x60;
constexpr std::uint8_t kPush32 = 0x7f;
constexpr std::uint8_t kInvalid = 0xfe;

constexpr bool is_push(std::uint8_t op) { return op >= kPush1 && op <= kPush32; }

/// Immediate width in bytes (PUSH1 -> 1 ... PUSH32 -> 32); 0 for non-PUSH.
constexpr std::size_t push_width(std::uint8_t op) {
    return is_push(op) ? static_cast<std::size_t>(op - kPush1 + 1) : 0;
}

/// True when the byte value is an assigned instruction.
bool opcode_defined(std::uint8_t op);

/// Mnemonic for an assigned instruction; "INVALID" for unassigned bytes.
std::string_view mnemonic(std::uint8_t op);

}  // namespace defisect
