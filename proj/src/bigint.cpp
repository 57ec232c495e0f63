#include "meterchain/bigint.hpp"

#include <stdexcept>

namespace meterchain {

std::vector<uint8_t> bigint_to_bytes(const Bigint& v) {
  if (sgn(v) < 0) throw std::invalid_argument("bigint_to_bytes: negative value");
  if (sgn(v) == 0) return {};
  size_t count = 0;
  std::vector<uint8_t> out((mpz_sizeinbase(v.get_mpz_t(), 2) + 7) / 8);
  mpz_export(out.data(), &count, 1, 1, 1, 0, v.get_mpz_t());
  out.resize(count);
  return out;
}

Bigint bigint_from_bytes(std::span<const uint8_t> bytes) {
  Bigint v;
  if (!bytes.empty()) {
    mpz_import(v.get_mpz_t(), bytes.size(), 1, 1, 1, 0, bytes.data());
  }
  return v;
}

Bigint powmod(const Bigint& base, const Bigint& exp, const Bigint& mod) {
  Bigint out;
  mpz_powm(out.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), mod.get_mpz_t());
  return out;
}

}  // namespace meterchain
