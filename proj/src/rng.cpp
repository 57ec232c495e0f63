#include "meterchain/rng.hpp"

#include <stdexcept>

#include "meterchain/encoding.hpp"
#include "meterchain/hash.hpp"

namespace meterchain {

uint64_t DetRng::uniform_u64(uint64_t lo, uint64_t hi) {
  if (lo > hi) throw std::invalid_argument("uniform_u64: lo > hi");
  uint64_t range = hi - lo;
  if (range == UINT64_MAX) return next_u64();
  uint64_t span = range + 1;
  // Largest multiple of span that fits in 2^64; reject draws above it.
  uint64_t limit = UINT64_MAX - (UINT64_MAX % span + 1) % span;
  uint64_t r;
  do {
    r = next_u64();
  } while (r > limit);
  return lo + r % span;
}

int64_t DetRng::uniform_i64(int64_t lo, int64_t hi) {
  if (lo > hi) throw std::invalid_argument("uniform_i64: lo > hi");
  uint64_t range = static_cast<uint64_t>(hi) - static_cast<uint64_t>(lo);
  uint64_t off = (range == UINT64_MAX) ? next_u64() : uniform_u64(0, range);
  return static_cast<int64_t>(static_cast<uint64_t>(lo) + off);
}

std::vector<uint8_t> DetRng::bytes(size_t n) {
  std::vector<uint8_t> out;
  out.reserve(n);
  while (out.size() < n) {
    uint64_t word = next_u64();
    for (int i = 0; i < 8 && out.size() < n; ++i) {
      out.push_back(static_cast<uint8_t>(word >> (56 - 8 * i)));
    }
  }
  return out;
}

DetRng DetRng::fork(std::string_view label) const {
  std::vector<uint8_t> material;
  material.reserve(12 + 8 + label.size());
  const std::string_view tag = "rng-fork";
  material.insert(material.end(), tag.begin(), tag.end());
  put_u64be(material, seed_);
  material.insert(material.end(), label.begin(), label.end());
  Digest d = sha256(material);
  uint64_t child = 0;
  for (int i = 0; i < 8; ++i) child = child << 8 | d[static_cast<size_t>(i)];
  return DetRng(child);
}

}  // namespace meterchain
