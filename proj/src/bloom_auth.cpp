#include "meterchain/bloom_auth.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "meterchain/encoding.hpp"
#include "meterchain/errors.hpp"
#include "meterchain/hash.hpp"
#include "meterchain/hex.hpp"

namespace meterchain {

FilterParams size_filter(uint64_t capacity, double target_fpr) {
  if (capacity < 1) throw std::invalid_argument("size_filter: capacity must be >= 1");
  if (!(target_fpr > 0.0) || !(target_fpr < 1.0)) {
    throw std::invalid_argument("size_filter: target_fpr must be in (0, 1)");
  }
  const double ln2 = std::log(2.0);
  double theta_raw = -static_cast<double>(capacity) * std::log(target_fpr) / (ln2 * ln2);
  auto theta = static_cast<uint64_t>(std::ceil(theta_raw));
  if (theta < 1) theta = 1;
  auto k = static_cast<uint32_t>(
      std::llround(static_cast<double>(theta) / static_cast<double>(capacity) * ln2));
  if (k < 1) k = 1;
  return FilterParams{theta, k, target_fpr, capacity};
}

std::vector<uint64_t> index_values(const Pseudonym& pk, uint32_t k, uint64_t theta) {
  if (k < 1 || theta < 1) throw std::invalid_argument("index_values: k and theta must be >= 1");
  std::vector<uint8_t> tagged;
  tagged.reserve(5 + pk.bytes().size());
  const std::string_view tag = "bloom";
  tagged.insert(tagged.end(), tag.begin(), tag.end());
  tagged.insert(tagged.end(), pk.bytes().begin(), pk.bytes().end());
  Digest d = sha256(tagged);
  auto read_u64 = [&](size_t at) {
    uint64_t v = 0;
    for (size_t i = 0; i < 8; ++i) v = v << 8 | d[at + i];
    return v;
  };
  uint64_t h1 = read_u64(0);
  uint64_t h2 = read_u64(8);
  std::vector<uint64_t> out(k);
  for (uint32_t i = 1; i <= k; ++i) {
    out[i - 1] = (h1 + static_cast<uint64_t>(i) * h2) % theta;
  }
  return out;
}

BloomFilter::BloomFilter(uint64_t theta, uint32_t k, std::string group_id)
    : bits_((theta + 7) / 8, 0), theta_(theta), k_(k), group_id_(std::move(group_id)) {}

uint64_t BloomFilter::popcount() const {
  uint64_t total = 0;
  for (uint8_t b : bits_) total += static_cast<uint64_t>(std::popcount(b));
  return total;
}

std::string BloomFilter::serialize() const {
  std::string out = "bloom \xce\xb8=" + u64_to_string(theta_) + " k=" + u64_to_string(k_) + "\n";
  out += to_hex(bits_);
  out += '\n';
  return out;
}

BloomFilter BloomFilter::parse(std::string_view text) {
  size_t eol = text.find('\n');
  if (eol == std::string_view::npos) throw ParseError("missing header line", 1);
  std::string_view header = text.substr(0, eol);
  const std::string_view prefix = "bloom \xce\xb8=";
  if (!header.starts_with(prefix)) throw ParseError("bad bloom header", 1);
  header.remove_prefix(prefix.size());
  size_t sp = header.find(" k=");
  if (sp == std::string_view::npos) throw ParseError("bad bloom header", 1);
  auto theta = parse_u64(header.substr(0, sp));
  auto k = parse_u64(header.substr(sp + 3));
  if (!theta || *theta < 1 || !k || *k < 1 || *k > UINT32_MAX) {
    throw ParseError("bad bloom parameters", 1);
  }
  std::string_view body = text.substr(eol + 1);
  if (body.empty() || body.back() != '\n') throw ParseError("missing bit array line", 2);
  body.remove_suffix(1);
  if (body.find('\n') != std::string_view::npos) throw ParseError("trailing data", 3);
  auto bytes = from_hex(body);
  if (!bytes || bytes->size() != (*theta + 7) / 8) throw ParseError("bad bit array", 2);
  BloomFilter f(*theta, static_cast<uint32_t>(*k), "");
  f.bits_ = std::move(*bytes);
  // Padding bits past theta must be zero or the encoding would not be unique.
  for (uint64_t i = *theta; i < f.bits_.size() * 8; ++i) {
    if (f.test_bit(i)) throw ParseError("nonzero padding bits", 2);
  }
  return f;
}

BloomFilter BloomFilter::saturated(const FilterParams& params, std::string group_id) {
  BloomFilter f(params.theta, params.k, std::move(group_id));
  for (uint64_t i = 0; i < params.theta; ++i) f.set_bit(i);
  return f;
}

BloomFilter build_filter(std::span<const Pseudonym> pseudonyms, const FilterParams& params,
                         std::string group_id) {
  if (params.theta < 1 || params.k < 1) {
    throw std::invalid_argument("build_filter: invalid params");
  }
  BloomFilter f(params.theta, params.k, std::move(group_id));
  for (const Pseudonym& pk : pseudonyms) {
    for (uint64_t index : index_values(pk, params.k, params.theta)) {
      f.set_bit(index);
    }
  }
  return f;
}

bool contains(const BloomFilter& filter, const Pseudonym& pk) {
  for (uint64_t index : index_values(pk, filter.k(), filter.theta())) {
    if (!filter.test_bit(index)) return false;
  }
  return true;
}

double estimate_fpr(const BloomFilter& filter, const std::set<Pseudonym>& members,
                    uint64_t trials, DetRng& rng) {
  if (trials < 1) throw std::invalid_argument("estimate_fpr: trials must be >= 1");
  uint64_t hits = 0;
  for (uint64_t t = 0; t < trials; ++t) {
    Pseudonym probe = random_pseudonym(64, rng);
    while (members.contains(probe)) probe = random_pseudonym(64, rng);
    if (contains(filter, probe)) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(trials);
}

}  // namespace meterchain
