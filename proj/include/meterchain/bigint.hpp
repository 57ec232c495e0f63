#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <span>
#include <vector>

namespace meterchain {

using Bigint = mpz_class;

// Minimal big-endian magnitude encoding; zero encodes as the empty string.
// Only defined for non-negative values.
std::vector<uint8_t> bigint_to_bytes(const Bigint& v);
Bigint bigint_from_bytes(std::span<const uint8_t> bytes);

Bigint powmod(const Bigint& base, const Bigint& exp, const Bigint& mod);

}  // namespace meterchain
