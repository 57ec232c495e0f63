#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace meterchain {

// Deterministic random source. mt19937_64 output is pinned by the C++
// standard, and the bounded draws below avoid std::uniform_int_distribution
// (whose algorithm is implementation-defined), so a seed reproduces the same
// stream on every platform.
//
// fork() derives an independent child stream from the *construction* seed and
// a label, never from consumed state. The simulator labels streams per
// (group, user, slot), so adding an adversary or reordering work does not
// perturb anyone else's draws.
class DetRng {
 public:
  explicit DetRng(uint64_t seed) : seed_(seed), engine_(seed) {}

  uint64_t next_u64() { return engine_(); }

  // Uniform in [lo, hi], inclusive. Rejection sampling, no modulo bias.
  uint64_t uniform_u64(uint64_t lo, uint64_t hi);
  int64_t uniform_i64(int64_t lo, int64_t hi);

  std::vector<uint8_t> bytes(size_t n);

  DetRng fork(std::string_view label) const;

  uint64_t seed() const { return seed_; }

 private:
  uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace meterchain
