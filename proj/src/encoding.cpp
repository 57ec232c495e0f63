#include "meterchain/encoding.hpp"

#include <algorithm>

namespace meterchain {

void put_u32be(std::vector<uint8_t>& out, uint32_t v) {
  for (int shift = 24; shift >= 0; shift -= 8) {
    out.push_back(static_cast<uint8_t>(v >> shift));
  }
}

void put_u64be(std::vector<uint8_t>& out, uint64_t v) {
  for (int shift = 56; shift >= 0; shift -= 8) {
    out.push_back(static_cast<uint8_t>(v >> shift));
  }
}

void put_i64be(std::vector<uint8_t>& out, int64_t v) {
  put_u64be(out, static_cast<uint64_t>(v));
}

void put_i128be(std::vector<uint8_t>& out, __int128 v) {
  auto u = static_cast<unsigned __int128>(v);
  for (int shift = 120; shift >= 0; shift -= 8) {
    out.push_back(static_cast<uint8_t>(u >> shift));
  }
}

std::string i128_to_string(__int128 v) {
  if (v == 0) return "0";
  bool neg = v < 0;
  auto u = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
  std::string s;
  while (u > 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
    u /= 10;
  }
  if (neg) s.push_back('-');
  std::reverse(s.begin(), s.end());
  return s;
}

std::string u64_to_string(uint64_t v) { return i128_to_string(static_cast<__int128>(v)); }
std::string i64_to_string(int64_t v) { return i128_to_string(static_cast<__int128>(v)); }

namespace {

// Shared strict scan. Returns nullopt unless s matches "0" or "-"?[1-9][0-9]*
// and the magnitude fits below `limit_neg`/`limit_pos`.
std::optional<__int128> parse_decimal(std::string_view s, unsigned __int128 limit_pos,
                                      unsigned __int128 limit_neg) {
  if (s.empty()) return std::nullopt;
  bool neg = s.front() == '-';
  std::string_view digits = neg ? s.substr(1) : s;
  if (digits.empty()) return std::nullopt;
  if (digits.size() > 1 && digits.front() == '0') return std::nullopt;
  if (neg && digits == "0") return std::nullopt;
  unsigned __int128 acc = 0;
  unsigned __int128 limit = neg ? limit_neg : limit_pos;
  for (char c : digits) {
    if (c < '0' || c > '9') return std::nullopt;
    unsigned digit = static_cast<unsigned>(c - '0');
    if (acc > (limit - digit) / 10) return std::nullopt;
    acc = acc * 10 + digit;
  }
  if (neg) return -static_cast<__int128>(acc);
  return static_cast<__int128>(acc);
}

}  // namespace

std::optional<uint64_t> parse_u64(std::string_view s) {
  auto v = parse_decimal(s, UINT64_MAX, 0);
  if (!v || *v < 0) return std::nullopt;
  return static_cast<uint64_t>(*v);
}

std::optional<int64_t> parse_i64(std::string_view s) {
  auto v = parse_decimal(s, INT64_MAX, static_cast<unsigned __int128>(INT64_MAX) + 1);
  if (!v) return std::nullopt;
  return static_cast<int64_t>(*v);
}

std::optional<__int128> parse_i128(std::string_view s) {
  constexpr unsigned __int128 kMaxPos =
      (static_cast<unsigned __int128>(1) << 127) - 1;
  return parse_decimal(s, kMaxPos, kMaxPos + 1);
}

}  // namespace meterchain
