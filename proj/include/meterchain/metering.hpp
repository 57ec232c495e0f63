#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "meterchain/crypto_identity.hpp"
#include "meterchain/rng.hpp"

namespace meterchain {

// One meter's true consumption for one slot. Honest values are non-negative;
// individual shares may be negative as long as they sum back exactly.
struct Reading {
  std::string user_id;
  uint64_t slot = 0;
  int64_t value_wh = 0;
};

// One pseudonymous share as published to the group.
struct ReadingMessage {
  int64_t share_wh = 0;
  uint64_t slot = 0;
  Pseudonym pseudonym;
  Bigint signature;

  bool operator==(const ReadingMessage& other) const {
    return share_wh == other.share_wh && slot == other.slot && pseudonym == other.pseudonym &&
           signature == other.signature;
  }
};

// Canonical bytes hashed into Merkle leaves:
//   canonical_payload | u32be len(sig bytes) | sig as minimal big-endian.
std::vector<uint8_t> message_leaf_bytes(const ReadingMessage& msg);

bool verify_reading(const ReadingMessage& msg);

// Splits value_wh into part_count shares over distinct pseudonyms chosen
// uniformly without replacement. The first part_count-1 shares are uniform in
// [-B, B] with B = max(|value_wh|, 1000), the last is the exact remainder, so
// shares always sum back to the reading. Throws std::invalid_argument when
// part_count is 0 or exceeds the pseudonym list.
std::vector<std::pair<Pseudonym, int64_t>> split_reading(const Reading& reading,
                                                         std::span<const Pseudonym> pseudonyms,
                                                         size_t part_count, DetRng& rng);

// A simulated smart meter: owns its keypairs, splits each slot's reading
// across a round-robin selection of its pseudonyms and signs every share.
// State is confined to one logical actor; emitted messages are immutable.
class Meter {
 public:
  Meter(std::string user_id, std::string group_id, std::vector<KeyPair> keys);

  const std::string& user_id() const { return user_id_; }
  const std::string& group_id() const { return group_id_; }
  std::span<const Pseudonym> pseudonyms() const { return pseudonyms_; }

  // Draws part_count uniformly from [1, pool size], takes that many
  // pseudonyms round-robin from the pool (never the same one twice in a
  // slot), splits and signs. Throws if the meter holds no keys.
  std::vector<ReadingMessage> make_messages(uint64_t slot, int64_t value_wh, DetRng& rng);

 private:
  std::string user_id_;
  std::string group_id_;
  std::vector<KeyPair> keys_;
  std::vector<Pseudonym> pseudonyms_;
  size_t cursor_ = 0;
};

// Exact sum of shares; throws AggregationError if the total leaves the
// signed 64-bit range.
int64_t aggregate(std::span<const ReadingMessage> messages);

}  // namespace meterchain
