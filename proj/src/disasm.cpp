// defisect: DeFi incident forensics toolkit
// Copyright 2026 The defisect Authors.
// SPDX-License-Identifier: Apache-2.0

#include "defisect/disasm.hpp"

#include <optional>
#include <span>

#include "defisect/opcode.hpp"

namespace defisect {

namespace {

constexpr int kMaxCborDepth = 16;

// Consumes one definite-length CBOR item starting at pos; returns the
// position just past it, or nullopt if malformed.
std::optional<std::size_t> cbor_item(std::span<const std::uint8_t> data, std::size_t pos,
                                     int depth) {
    if (depth > kMaxCborDepth || pos >= data.size()) return std::nullopt;
    const std::uint8_t initial = data[pos++];
    const unsigned major = initial >> 5;
    const unsigned info = initial & 0x1f;

    std::uint64_t value = info;
    if (info >= 28) return std::nullopt;  // reserved or indefinite length
    if (info >= 24) {
        const std::size_t extra = std::size_t{1} << (info - 24);
        if (pos + extra > data.size()) return std::nullopt;
        value = 0;
        for (std::size_t i = 0; i < extra; ++i) value = value << 8 | data[pos + i];
        pos += extra;
    }

    switch (major) {
        case 0:  // unsigned int
        case 1:  // negative int
            return pos;
        case 2:  // byte string
        case 3:  // text string
            if (value > data.size() - pos) return std::nullopt;
            return pos + static_cast<std::size_t>(value);
        case 4:  // array
            for (std::uint64_t i = 0; i < value; ++i) {
                auto next = cbor_item(data, pos, depth + 1);
                if (!next) return std::nullopt;
                pos = *next;
            }
            return pos;
        case 5:  // map
            if (value > data.size()) return std::nullopt;
            for (std::uint64_t i = 0; i < 2 * value; ++i) {
                auto next = cbor_item(data, pos, depth + 1);
                if (!next) return std::nullopt;
                pos = *next;
            }
            return pos;
        case 6: {  // tagged item
            auto next = cbor_item(data, pos, depth + 1);
            if (!next) return std::nullopt;
            return *next;
        }
        case 7:  // simple values and floats; info 24 carries one extra byte,
                 // 25/26/27 were consumed above as the float payload length prefix
            if (info == 24) return pos;  // extra byte already consumed
            if (info <= 23 || info == 25 || info == 26 || info == 27) return pos;
            return std::nullopt;
        default:
            return std::nullopt;
    }
}

}  // namespace

std::size_t metadata_trailer_len(const std::vector<std::uint8_t>& bytes) {
    if (bytes.size() < 2) return 0;
    const std::size_t declared =
        static_cast<std::size_t>(bytes[bytes.size() - 2]) << 8 | bytes[bytes.size() - 1];
    if (declared == 0 || declared + 2 > bytes.size()) return 0;

    const std::size_t start = bytes.size() - 2 - declared;
    std::span<const std::uint8_t> payload(bytes.data() + start, declared);
    if (payload[0] >> 5 != 5) return 0;  // compilers emit a CBOR map
    auto end = cbor_item(payload, 0, 0);
    if (!end || *end != declared) return 0;  // must span exactly the declared bytes
    return declared + 2;
}

RawBytecode strip_metadata(const RawBytecode& code) {
    const std::size_t trailer = metadata_trailer_len(code.bytes);
    if (trailer == 0) return code;
    RawBytecode out;
    out.source_id = code.source_id;
    out.bytes.assign(code.bytes.begin(), code.bytes.end() - static_cast<std::ptrdiff_t>(trailer));
    return out;
}

OpcodeStream disassemble(const RawBytecode& code) {
    OpcodeStream stream;
    stream.source_id = code.source_id;
    stream.opcodes.reserve(code.bytes.size());
    const std::size_t size = code.bytes.size();
    for (std::size_t i = 0; i < size;) {
        const std::uint8_t op = code.bytes[i++];
        if (opcode_defined(op)) {
            stream.opcodes.push_back(op);
            const std::size_t width = push_width(op);
            const std::size_t consumed = std::min(width, size - i);
            stream.immediate_bytes += consumed;
            i += consumed;
        } else {
            stream.opcodes.push_back(kInvalid);
            ++stream.invalid_count;
        }
    }
    return stream;
}

OpcodeStream normalize(const RawBytecode& code) {
    const std::size_t trailer = metadata_trailer_len(code.bytes);
    RawBytecode body = strip_metadata(code);
    OpcodeStream stream = disassemble(body);
    stream.stripped_metadata_len = trailer;
    return stream;
}

std::string to_mnemonics(const OpcodeStream& stream) {
    std::string out;
    for (std::uint8_t op : stream.opcodes) {
        out += mnemonic(op);
        out += '\n';
    }
    return out;
}

}  // namespace defisect
