#include "meterchain/chain_format.hpp"

#include <vector>

#include "meterchain/encoding.hpp"
#include "meterchain/errors.hpp"
#include "meterchain/hex.hpp"

namespace meterchain {

namespace {

bool valid_group_token(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
              c == '.' || c == '_' || c == '-';
    if (!ok) return false;
  }
  return true;
}

std::string sig_hex(const Bigint& sig) {
  std::vector<uint8_t> bytes = bigint_to_bytes(sig);
  if (bytes.empty()) return "00";
  return to_hex(bytes);
}

// Splits "<keyword> k1=v1 k2=v2 ..." with exactly the expected keys in
// order, single-space separated. Returns the raw values.
std::vector<std::string_view> fields(std::string_view line, std::string_view keyword,
                                     std::initializer_list<std::string_view> keys,
                                     size_t line_no) {
  std::vector<std::string_view> parts;
  size_t start = 0;
  while (start <= line.size()) {
    size_t sp = line.find(' ', start);
    if (sp == std::string_view::npos) sp = line.size();
    parts.push_back(line.substr(start, sp - start));
    start = sp + 1;
  }
  if (parts.size() != keys.size() + 1 || parts[0] != keyword) {
    throw ParseError("expected '" + std::string(keyword) + "' record", line_no);
  }
  std::vector<std::string_view> values;
  size_t i = 1;
  for (std::string_view key : keys) {
    std::string_view part = parts[i++];
    if (part.size() <= key.size() + 1 || !part.starts_with(key) || part[key.size()] != '=') {
      throw ParseError("expected field '" + std::string(key) + "'", line_no);
    }
    values.push_back(part.substr(key.size() + 1));
  }
  return values;
}

Digest parse_digest(std::string_view hex, std::string_view what, size_t line_no) {
  auto bytes = from_hex(hex);
  if (!bytes || bytes->size() != 32) {
    throw ParseError("bad " + std::string(what) + " digest", line_no);
  }
  Digest d;
  std::copy(bytes->begin(), bytes->end(), d.begin());
  return d;
}

std::vector<uint8_t> parse_key_bytes(std::string_view hex, std::string_view what,
                                     size_t line_no) {
  auto bytes = from_hex(hex);
  if (!bytes || bytes->empty()) throw ParseError("bad " + std::string(what), line_no);
  return std::move(*bytes);
}

Bigint parse_sig(std::string_view hex, size_t line_no) {
  auto bytes = from_hex(hex);
  if (!bytes || bytes->empty()) throw ParseError("bad signature", line_no);
  bool minimal = bytes->size() == 1 || (*bytes)[0] != 0;
  if (!minimal) throw ParseError("non-minimal signature encoding", line_no);
  if (bytes->size() == 1 && (*bytes)[0] == 0) return Bigint(0);
  return bigint_from_bytes(*bytes);
}

}  // namespace

std::string serialize_chain(const Chain& chain) {
  std::string out = "chain group=" + chain.group_id() +
                    " blocks=" + u64_to_string(chain.blocks().size()) + "\n";
  for (const Block& block : chain.blocks()) {
    const BlockHeader& h = block.header;
    out += "block slot=" + u64_to_string(h.slot);
    out += " prev=" + to_hex(h.prev_hash);
    out += " root=" + to_hex(h.merkle_root);
    out += " miner=" + h.miner.hex();
    out += " sum=" + i128_to_string(h.average.sum_wh);
    out += " count=" + u64_to_string(h.average.count);
    out += "\n";
    for (const ReadingMessage& tx : block.transactions) {
      out += "tx share=" + i64_to_string(tx.share_wh);
      out += " slot=" + u64_to_string(tx.slot);
      out += " pk=" + tx.pseudonym.hex();
      out += " sig=" + sig_hex(tx.signature);
      out += "\n";
    }
  }
  return out;
}

Chain parse_chain(std::string_view text) {
  std::vector<std::string_view> lines;
  size_t start = 0;
  while (start < text.size()) {
    size_t eol = text.find('\n', start);
    if (eol == std::string_view::npos) {
      throw ParseError("missing final newline", lines.size() + 1);
    }
    lines.push_back(text.substr(start, eol - start));
    start = eol + 1;
  }
  if (lines.empty()) throw ParseError("empty chain file", 1);

  size_t line_no = 1;
  auto header = fields(lines[0], "chain", {"group", "blocks"}, line_no);
  if (!valid_group_token(header[0])) throw ParseError("bad group id", line_no);
  auto block_count = parse_u64(header[1]);
  if (!block_count) throw ParseError("bad block count", line_no);

  std::vector<Block> blocks;
  blocks.reserve(static_cast<size_t>(*block_count));
  size_t next = 1;
  for (uint64_t b = 0; b < *block_count; ++b) {
    if (next >= lines.size()) throw ParseError("truncated chain: missing block", lines.size());
    line_no = next + 1;
    auto bf = fields(lines[next++], "block", {"slot", "prev", "root", "miner", "sum", "count"},
                     line_no);
    Block block;
    auto slot = parse_u64(bf[0]);
    if (!slot) throw ParseError("bad slot", line_no);
    block.header.slot = *slot;
    block.header.prev_hash = parse_digest(bf[1], "prev", line_no);
    block.header.merkle_root = parse_digest(bf[2], "root", line_no);
    block.header.miner = Pseudonym(parse_key_bytes(bf[3], "miner pseudonym", line_no));
    auto sum = parse_i128(bf[4]);
    if (!sum) throw ParseError("bad sum", line_no);
    block.header.average.sum_wh = *sum;
    auto count = parse_u64(bf[5]);
    if (!count) throw ParseError("bad count", line_no);
    block.header.average.count = *count;

    for (uint64_t t = 0; t < *count; ++t) {
      if (next >= lines.size()) throw ParseError("truncated chain: missing tx", lines.size());
      line_no = next + 1;
      auto tf = fields(lines[next++], "tx", {"share", "slot", "pk", "sig"}, line_no);
      ReadingMessage tx;
      auto share = parse_i64(tf[0]);
      if (!share) throw ParseError("bad share", line_no);
      tx.share_wh = *share;
      auto tx_slot = parse_u64(tf[1]);
      if (!tx_slot) throw ParseError("bad tx slot", line_no);
      tx.slot = *tx_slot;
      tx.pseudonym = Pseudonym(parse_key_bytes(tf[2], "pk", line_no));
      tx.signature = parse_sig(tf[3], line_no);
      block.transactions.push_back(std::move(tx));
    }
    blocks.push_back(std::move(block));
  }
  if (next != lines.size()) throw ParseError("trailing data after last block", next + 1);
  return Chain::from_blocks_unchecked(std::string(header[0]), std::move(blocks));
}

}  // namespace meterchain
