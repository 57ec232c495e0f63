#include "meterchain/metering.hpp"

#include <algorithm>
#include <stdexcept>

#include "meterchain/encoding.hpp"
#include "meterchain/errors.hpp"

namespace meterchain {

std::vector<uint8_t> message_leaf_bytes(const ReadingMessage& msg) {
  std::vector<uint8_t> out = canonical_payload(msg.share_wh, msg.slot, msg.pseudonym);
  std::vector<uint8_t> sig = bigint_to_bytes(msg.signature);
  put_u32be(out, static_cast<uint32_t>(sig.size()));
  out.insert(out.end(), sig.begin(), sig.end());
  return out;
}

bool verify_reading(const ReadingMessage& msg) {
  return verify_reading_parts(msg.pseudonym, msg.share_wh, msg.slot, msg.signature);
}

std::vector<std::pair<Pseudonym, int64_t>> split_reading(const Reading& reading,
                                                         std::span<const Pseudonym> pseudonyms,
                                                         size_t part_count, DetRng& rng) {
  if (pseudonyms.empty()) throw std::invalid_argument("split_reading: no pseudonyms");
  if (part_count < 1 || part_count > pseudonyms.size()) {
    throw std::invalid_argument("split_reading: part_count out of range");
  }
  // Partial Fisher-Yates: the first part_count slots end up a uniform
  // without-replacement selection.
  std::vector<size_t> order(pseudonyms.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  for (size_t i = 0; i < part_count; ++i) {
    size_t j = static_cast<size_t>(rng.uniform_u64(i, order.size() - 1));
    std::swap(order[i], order[j]);
  }

  const int64_t value = reading.value_wh;
  const int64_t bound = std::max<int64_t>(value < 0 ? -value : value, 1000);
  std::vector<std::pair<Pseudonym, int64_t>> out;
  out.reserve(part_count);
  __int128 partial = 0;
  for (size_t i = 0; i + 1 < part_count; ++i) {
    int64_t share = rng.uniform_i64(-bound, bound);
    partial += share;
    out.emplace_back(pseudonyms[order[i]], share);
  }
  __int128 last = static_cast<__int128>(value) - partial;
  if (last < INT64_MIN || last > INT64_MAX) {
    throw AggregationError("split_reading: remainder share overflows 64 bits");
  }
  out.emplace_back(pseudonyms[order[part_count - 1]], static_cast<int64_t>(last));
  return out;
}

Meter::Meter(std::string user_id, std::string group_id, std::vector<KeyPair> keys)
    : user_id_(std::move(user_id)), group_id_(std::move(group_id)), keys_(std::move(keys)) {
  pseudonyms_.reserve(keys_.size());
  for (const KeyPair& kp : keys_) {
    pseudonyms_.push_back(Pseudonym::from_public_key(kp.public_key));
  }
}

std::vector<ReadingMessage> Meter::make_messages(uint64_t slot, int64_t value_wh, DetRng& rng) {
  if (keys_.empty()) throw std::invalid_argument("make_messages: meter holds no pseudonyms");
  size_t pool = keys_.size();
  auto part_count = static_cast<size_t>(rng.uniform_u64(1, pool));

  // Round-robin across slots: take the next part_count pseudonyms cyclically.
  std::vector<Pseudonym> selected;
  selected.reserve(part_count);
  for (size_t i = 0; i < part_count; ++i) {
    selected.push_back(pseudonyms_[(cursor_ + i) % pool]);
  }
  cursor_ = (cursor_ + part_count) % pool;

  Reading reading{user_id_, slot, value_wh};
  auto shares = split_reading(reading, selected, part_count, rng);

  std::vector<ReadingMessage> out;
  out.reserve(shares.size());
  for (const auto& [pk, share] : shares) {
    size_t idx = static_cast<size_t>(
        std::find(pseudonyms_.begin(), pseudonyms_.end(), pk) - pseudonyms_.begin());
    ReadingMessage msg;
    msg.share_wh = share;
    msg.slot = slot;
    msg.pseudonym = pk;
    msg.signature = sign_reading(keys_[idx].private_key, share, slot, pk);
    out.push_back(std::move(msg));
  }
  return out;
}

int64_t aggregate(std::span<const ReadingMessage> messages) {
  __int128 total = 0;
  for (const ReadingMessage& msg : messages) {
    total += msg.share_wh;
    if (total < INT64_MIN || total > INT64_MAX) {
      throw AggregationError("aggregate: sum overflows 64 bits");
    }
  }
  return static_cast<int64_t>(total);
}

}  // namespace meterchain
