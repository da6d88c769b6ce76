// defisect: DeFi incident forensics toolkit
// Copyright 2026 The defisect Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "defisect/hex.hpp"

namespace defisect {

/// Normalized instruction sequence: one opcode byte per executed position,
/// PUSH immediates dropped, unassigned bytes recorded as the 0xfe INVALID
/// sentinel. opcodes.size() + immediate_bytes + stripped_metadata_len always
/// equals the length of the original input.
struct OpcodeStream {
    std::string source_id;
    std::vector<std::uint8_t> opcodes;
    std::size_t stripped_metadata_len = 0;
    std::size_t immediate_bytes = 0;
    std::size_t invalid_count = 0;
};

/// Removes the compiler-appended CBOR metadata trailer (payload followed by a
/// two-byte big-endian payload length). The payload must parse as a single
/// well-formed definite-length CBOR map spanning exactly the declared bytes;
/// anything else leaves the input untouched.
RawBytecode strip_metadata(const RawBytecode& code);

/// Length in bytes of the detected trailer (payload + 2), or 0 if none.
std::size_t metadata_trailer_len(const std::vector<std::uint8_t>& bytes);

/// Linear-sweep disassembly from offset 0. Total over all byte sequences:
/// PUSH immediates are skipped (a truncated PUSH at end-of-code consumes the
/// remaining bytes), unassigned bytes become INVALID and bump invalid_count.
OpcodeStream disassemble(const RawBytecode& code);

/// strip_metadata + disassemble, with the stripped length recorded on the
/// resulting stream.
OpcodeStream normalize(const RawBytecode& code);

/// Newline-delimited mnemonics, for debugging output.
std::string to_mnemonics(const OpcodeStream& stream);

}  // namespace defisect
