// defisect: DeFi incident forensics toolkit
// Copyright 2026 The defisect Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace defisect {

/// Deployed runtime bytecode plus the identifier it was loaded under
/// (an address or a filename).
struct RawBytecode {
    std::vector<std::uint8_t> bytes;
    std::string source_id;
};

/// Decodes a hex string (optional "0x" prefix) into bytes.
/// Throws MalformedHex on odd length or non-hex characters.
RawBytecode decode_hex(std::string_view text, std::string source_id = {});

std::string encode_hex(const std::vector<std::uint8_t>& bytes);

/// Reads a one-contract-per-file hex dump; all ASCII whitespace is ignored
/// so wrapped dumps load cleanly.
RawBytecode load_hex_file(const std::string& path);

}  // namespace defisect
