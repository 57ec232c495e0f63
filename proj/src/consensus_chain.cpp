#include "meterchain/consensus_chain.hpp"

#include <algorithm>
#include <stdexcept>

#include "meterchain/encoding.hpp"
#include "meterchain/errors.hpp"

namespace meterchain {

namespace {

unsigned __int128 distance_to_average(__int128 sum, uint64_t count, int64_t share) {
  // |count*share - sum| without division; count <= 2^32ish and share is
  // 64-bit, so the product stays well inside 128 bits.
  __int128 scaled = static_cast<__int128>(count) * share - sum;
  return scaled < 0 ? static_cast<unsigned __int128>(-scaled)
                    : static_cast<unsigned __int128>(scaled);
}

}  // namespace

MinerSelection select_miner(std::span<const ReadingMessage> messages) {
  if (messages.empty()) throw NoQuorumError("select_miner: no messages in slot");
  __int128 sum = 0;
  for (const ReadingMessage& msg : messages) sum += msg.share_wh;
  uint64_t count = messages.size();

  unsigned __int128 best = 0;
  bool first = true;
  std::vector<Pseudonym> winners;
  for (const ReadingMessage& msg : messages) {
    unsigned __int128 dist = distance_to_average(sum, count, msg.share_wh);
    if (first || dist < best) {
      best = dist;
      winners.assign(1, msg.pseudonym);
      first = false;
    } else if (dist == best) {
      winners.push_back(msg.pseudonym);
    }
  }
  std::sort(winners.begin(), winners.end());
  winners.erase(std::unique(winners.begin(), winners.end()), winners.end());
  return MinerSelection{std::move(winners), SlotAverage{sum, count}};
}

Digest merkle_root(std::span<const std::vector<uint8_t>> leaves) {
  if (leaves.empty()) throw std::invalid_argument("merkle_root: no leaves");
  std::vector<Digest> level;
  level.reserve(leaves.size());
  for (const auto& leaf : leaves) {
    std::vector<uint8_t> tagged;
    tagged.reserve(1 + leaf.size());
    tagged.push_back(0x00);
    tagged.insert(tagged.end(), leaf.begin(), leaf.end());
    level.push_back(sha256(tagged));
  }
  while (level.size() > 1) {
    std::vector<Digest> next;
    next.reserve((level.size() + 1) / 2);
    for (size_t i = 0; i < level.size(); i += 2) {
      const Digest& left = level[i];
      const Digest& right = (i + 1 < level.size()) ? level[i + 1] : level[i];
      std::vector<uint8_t> node;
      node.reserve(65);
      node.push_back(0x01);
      node.insert(node.end(), left.begin(), left.end());
      node.insert(node.end(), right.begin(), right.end());
      next.push_back(sha256(node));
    }
    level = std::move(next);
  }
  return level.front();
}

std::vector<uint8_t> header_bytes(const BlockHeader& header) {
  std::vector<uint8_t> out;
  out.reserve(64 + 8 + 4 + header.miner.bytes().size() + 24);
  out.insert(out.end(), header.prev_hash.begin(), header.prev_hash.end());
  out.insert(out.end(), header.merkle_root.begin(), header.merkle_root.end());
  put_u64be(out, header.slot);
  put_u32be(out, static_cast<uint32_t>(header.miner.bytes().size()));
  out.insert(out.end(), header.miner.bytes().begin(), header.miner.bytes().end());
  put_i128be(out, header.average.sum_wh);
  put_u64be(out, header.average.count);
  return out;
}

Digest block_hash(const BlockHeader& header) { return sha256(header_bytes(header)); }

Block create_block(const Digest& prev_hash, uint64_t slot,
                   std::vector<ReadingMessage> messages) {
  MinerSelection selection = select_miner(messages);
  std::sort(messages.begin(), messages.end(),
            [](const ReadingMessage& a, const ReadingMessage& b) {
              return a.pseudonym < b.pseudonym;
            });
  for (size_t i = 1; i < messages.size(); ++i) {
    if (messages[i - 1].pseudonym == messages[i].pseudonym) {
      throw std::invalid_argument("create_block: duplicate pseudonym in slot");
    }
  }
  std::vector<std::vector<uint8_t>> leaves;
  leaves.reserve(messages.size());
  for (const ReadingMessage& msg : messages) leaves.push_back(message_leaf_bytes(msg));

  Block block;
  block.header.prev_hash = prev_hash;
  block.header.merkle_root = merkle_root(leaves);
  block.header.slot = slot;
  block.header.miner = selection.winners.front();
  block.header.average = selection.average;
  block.transactions = std::move(messages);
  return block;
}

Chain Chain::from_blocks_unchecked(std::string group_id, std::vector<Block> blocks) {
  Chain chain(std::move(group_id));
  chain.blocks_ = std::move(blocks);
  return chain;
}

Digest Chain::tip_hash() const {
  return blocks_.empty() ? kGenesisPrevHash : block_hash(blocks_.back().header);
}

void Chain::append(Block block) {
  if (block.header.prev_hash != tip_hash() || block.header.slot != next_slot()) {
    throw std::logic_error("Chain::append: block was not verified against this chain");
  }
  blocks_.push_back(std::move(block));
}

VerifyResult verify_block(const Chain& chain, const Block& candidate,
                          std::span<const ReadingMessage> local_messages,
                          const BloomFilter* filter, VerifyMode mode,
                          const std::set<Pseudonym>& own_pseudonyms) {
  // 1. linkage
  if (candidate.header.prev_hash != chain.tip_hash()) {
    return VerifyResult::reject("prev-hash-mismatch");
  }
  if (candidate.header.slot != chain.next_slot()) {
    return VerifyResult::reject("slot-mismatch");
  }

  if (mode == VerifyMode::kOwnOnly) {
    // Offline fast path: only my own records need to be present, unmodified.
    for (const ReadingMessage& mine : local_messages) {
      if (!own_pseudonyms.contains(mine.pseudonym)) continue;
      bool found = std::any_of(candidate.transactions.begin(), candidate.transactions.end(),
                               [&](const ReadingMessage& tx) { return tx == mine; });
      if (!found) return VerifyResult::reject("own-record-missing");
    }
    return VerifyResult::accept();
  }

  if (candidate.transactions.empty()) return VerifyResult::reject("empty-block");

  // 2. per-transaction authenticity and validity
  for (const ReadingMessage& tx : candidate.transactions) {
    if (tx.slot != candidate.header.slot) return VerifyResult::reject("wrong-slot");
    if (!verify_reading(tx)) return VerifyResult::reject("bad-signature");
    if (filter != nullptr && !contains(*filter, tx.pseudonym)) {
      return VerifyResult::reject("pseudonym-not-registered");
    }
  }

  // 3. canonical order, no duplicates
  for (size_t i = 1; i < candidate.transactions.size(); ++i) {
    const Pseudonym& prev = candidate.transactions[i - 1].pseudonym;
    const Pseudonym& cur = candidate.transactions[i].pseudonym;
    if (prev == cur) return VerifyResult::reject("duplicate-pseudonym");
    if (cur < prev) return VerifyResult::reject("tx-out-of-order");
  }

  // 4. Merkle root
  std::vector<std::vector<uint8_t>> leaves;
  leaves.reserve(candidate.transactions.size());
  for (const ReadingMessage& tx : candidate.transactions) {
    leaves.push_back(message_leaf_bytes(tx));
  }
  if (merkle_root(leaves) != candidate.header.merkle_root) {
    return VerifyResult::reject("merkle-root-mismatch");
  }

  // 5. average and miner
  MinerSelection selection = select_miner(candidate.transactions);
  if (!(selection.average == candidate.header.average)) {
    return VerifyResult::reject("average-mismatch");
  }
  if (!(selection.winners.front() == candidate.header.miner)) {
    return VerifyResult::reject("miner-mismatch");
  }
  return VerifyResult::accept();
}

VerifyResult verify_block(const Chain& chain, const Block& candidate, const BloomFilter* filter) {
  return verify_block(chain, candidate, {}, filter, VerifyMode::kFull, {});
}

ChainVerdict validate_chain(const Chain& chain, const BloomFilter* filter) {
  Chain verified(chain.group_id());
  for (const Block& block : chain.blocks()) {
    VerifyResult result = verify_block(verified, block, filter);
    if (!result.accepted) return ChainVerdict::reject(block.header.slot, result.reason);
    verified.append(block);
  }
  return ChainVerdict::accept();
}

}  // namespace meterchain
