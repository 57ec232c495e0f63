#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace meterchain {

// All multi-byte integers in protocol encodings are big-endian.
// Signed values use two's complement at a fixed width.

void put_u32be(std::vector<uint8_t>& out, uint32_t v);
void put_u64be(std::vector<uint8_t>& out, uint64_t v);
void put_i64be(std::vector<uint8_t>& out, int64_t v);
void put_i128be(std::vector<uint8_t>& out, __int128 v);

std::string i128_to_string(__int128 v);
std::string u64_to_string(uint64_t v);
std::string i64_to_string(int64_t v);

// Strict decimal parsers used by the file formats: "0" or "-"? [1-9][0-9]*.
// Leading zeros, "+", "-0", empty strings and stray characters are rejected,
// so re-serializing a parsed value always reproduces the input bytes.
std::optional<uint64_t> parse_u64(std::string_view s);
std::optional<int64_t> parse_i64(std::string_view s);
std::optional<__int128> parse_i128(std::string_view s);

}  // namespace meterchain
