#pragma once

#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "meterchain/bloom_auth.hpp"
#include "meterchain/hash.hpp"
#include "meterchain/metering.hpp"

namespace meterchain {

// Exact slot average as the rational sum/count; never stored rounded. The
// sum is kept at 128 bits so any feasible slot fits without overflow.
struct SlotAverage {
  __int128 sum_wh = 0;
  uint64_t count = 0;

  bool operator==(const SlotAverage& other) const {
    return sum_wh == other.sum_wh && count == other.count;
  }
};

struct MinerSelection {
  std::vector<Pseudonym> winners;  // all tied minimizers, sorted ascending
  SlotAverage average;
};

// The consensus substitute: the pseudonym whose share lies closest to the
// slot average mines the block. Distance compares |count*share - sum| in
// exact integer arithmetic, so there is no division and no rounding tie.
// All tied pseudonyms win; the canonical block producer is winners.front().
// Throws NoQuorumError on an empty message list.
MinerSelection select_miner(std::span<const ReadingMessage> messages);

// Binary hash tree with domain-separated nodes:
//   leaf = SHA-256(0x00 | bytes), internal = SHA-256(0x01 | left | right);
// an odd node at any level is paired with a copy of itself. Single leaf's
// root is its leaf hash. Throws std::invalid_argument on empty input.
Digest merkle_root(std::span<const std::vector<uint8_t>> leaves);

inline constexpr Digest kGenesisPrevHash{};  // 32 zero bytes

struct BlockHeader {
  Digest prev_hash{};
  Digest merkle_root{};
  uint64_t slot = 0;  // the "timestamp": abstract slot index, not wall clock
  Pseudonym miner;
  SlotAverage average;
};

// Canonical header encoding, fixed field order:
//   prev_hash | merkle_root | u64be slot | u32be len(miner) | miner bytes |
//   sum_wh as signed 16-byte big-endian | u64be count.
std::vector<uint8_t> header_bytes(const BlockHeader& header);
Digest block_hash(const BlockHeader& header);

struct Block {
  BlockHeader header;
  std::vector<ReadingMessage> transactions;  // sorted by pseudonym bytes
};

// Builds the slot's block from authenticated messages: sorts transactions
// canonically, computes root, average and miner. Deterministic, so every
// honest node produces the identical block byte for byte. Throws on empty
// input or duplicate pseudonyms (contract violations).
Block create_block(const Digest& prev_hash, uint64_t slot,
                   std::vector<ReadingMessage> messages);

// Append-only per-group ledger. Genesis is an implicit all-zero sentinel,
// not a stored block; block slots run 0, 1, 2, ... with no gaps.
class Chain {
 public:
  explicit Chain(std::string group_id) : group_id_(std::move(group_id)) {}

  // Deserialization path: takes blocks as-is; run validate_chain before use.
  static Chain from_blocks_unchecked(std::string group_id, std::vector<Block> blocks);

  const std::string& group_id() const { return group_id_; }
  const std::vector<Block>& blocks() const { return blocks_; }

  Digest tip_hash() const;
  uint64_t next_slot() const { return blocks_.size(); }

  // Precondition: verify_block accepted `block`. Linkage violations here are
  // programming errors and throw std::logic_error.
  void append(Block block);

 private:
  std::string group_id_;
  std::vector<Block> blocks_;
};

enum class VerifyMode { kFull, kOwnOnly };

struct VerifyResult {
  bool accepted = false;
  std::string reason;  // empty on accept

  static VerifyResult accept() { return {true, {}}; }
  static VerifyResult reject(std::string why) { return {false, std::move(why)}; }
};

// Member verification of a candidate block, checks in order:
//   1. prev-hash linkage and slot == next expected slot
//   2. every transaction: slot matches header, signature verifies, pseudonym
//      passes the group filter (skipped when filter is null)
//   3. canonical transaction order, no duplicate pseudonym
//   4. Merkle root recomputes
//   5. average and miner recompute via select_miner
// Own-only mode (offline fast path): only check 1 plus "each of my submitted
// shares appears in the block unmodified".
VerifyResult verify_block(const Chain& chain, const Block& candidate,
                          std::span<const ReadingMessage> local_messages,
                          const BloomFilter* filter, VerifyMode mode,
                          const std::set<Pseudonym>& own_pseudonyms);

// Full-mode shorthand.
VerifyResult verify_block(const Chain& chain, const Block& candidate, const BloomFilter* filter);

struct ChainVerdict {
  bool accepted = false;
  uint64_t slot = 0;  // first offending slot when rejected
  std::string reason;

  static ChainVerdict accept() { return {true, 0, {}}; }
  static ChainVerdict reject(uint64_t slot, std::string why) {
    return {false, slot, std::move(why)};
  }
};

// Re-verifies every block in order. Tampering with block i surfaces at slot
// i (content checks) or i+1 (broken prev-hash linkage).
ChainVerdict validate_chain(const Chain& chain, const BloomFilter* filter);

}  // namespace meterchain
