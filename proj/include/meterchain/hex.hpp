#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace meterchain {

std::string to_hex(std::span<const uint8_t> bytes);

// Strict decoder: lowercase digits only, even length. Anything else -> nullopt.
// Strictness matters for byte-exact round trips of the chain file format.
std::optional<std::vector<uint8_t>> from_hex(std::string_view hex);

}  // namespace meterchain
