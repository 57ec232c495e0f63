#pragma once

#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "meterchain/crypto_identity.hpp"
#include "meterchain/rng.hpp"

namespace meterchain {

struct FilterParams {
  uint64_t theta = 0;      // bit-array length
  uint32_t k = 0;          // hash count
  double target_fpr = 0;
  uint64_t capacity = 0;   // expected pseudonym count
};

// Standard optimal sizing:
//   theta = ceil(-capacity * ln(fpr) / ln(2)^2),  k = max(1, round(theta/capacity * ln 2)).
// Throws std::invalid_argument unless capacity >= 1 and fpr in (0, 1).
FilterParams size_filter(uint64_t capacity, double target_fpr);

// Double-hashing index family over one SHA-256 of the tagged pseudonym bytes:
//   H1 = bytes 0..8, H2 = bytes 8..16 of SHA-256("bloom" | key_bytes), big-endian;
//   index_i = (H1 + i*H2) mod theta  for i = 1..k, in uint64 wraparound arithmetic.
std::vector<uint64_t> index_values(const Pseudonym& pk, uint32_t k, uint64_t theta);

// Per-group pseudonym registry as a plain (non-counting) bloom filter.
// Immutable after construction; concurrent reads are safe.
class BloomFilter {
 public:
  uint64_t theta() const { return theta_; }
  uint32_t k() const { return k_; }
  const std::string& group_id() const { return group_id_; }

  bool test_bit(uint64_t index) const {
    return (bits_[index >> 3] >> (index & 7)) & 1;
  }
  uint64_t popcount() const;

  // Snapshot format: "bloom θ=<int> k=<int>\n<hex of packed bits>\n".
  // Bit i lives at byte i/8, bit position i%8 (LSB first).
  std::string serialize() const;
  static BloomFilter parse(std::string_view text);  // throws ParseError

  static BloomFilter saturated(const FilterParams& params, std::string group_id = "");

  friend BloomFilter build_filter(std::span<const Pseudonym> pseudonyms,
                                  const FilterParams& params, std::string group_id);

 private:
  BloomFilter(uint64_t theta, uint32_t k, std::string group_id);
  void set_bit(uint64_t index) { bits_[index >> 3] |= static_cast<uint8_t>(1u << (index & 7)); }

  std::vector<uint8_t> bits_;
  uint64_t theta_ = 0;
  uint32_t k_ = 0;
  std::string group_id_;
};

BloomFilter build_filter(std::span<const Pseudonym> pseudonyms, const FilterParams& params,
                         std::string group_id = "");

// True iff every index bit is set. Exactly k index computations; cost does
// not depend on how many pseudonyms were inserted.
bool contains(const BloomFilter& filter, const Pseudonym& pk);

// Empirical false-positive rate: fraction of `trials` freshly generated
// non-member pseudonyms that contains() accepts. Deterministic per seed.
double estimate_fpr(const BloomFilter& filter, const std::set<Pseudonym>& members,
                    uint64_t trials, DetRng& rng);

}  // namespace meterchain
