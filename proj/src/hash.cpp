#include "meterchain/hash.hpp"

#include <openssl/evp.h>

#include <stdexcept>

#include "meterchain/hex.hpp"

namespace meterchain {

Digest sha256(std::span<const uint8_t> data) {
  Digest out{};
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), out.data(), &len, EVP_sha256(), nullptr) != 1 ||
      len != out.size()) {
    throw std::runtime_error("sha256 failed");
  }
  return out;
}

Digest sha256(std::string_view data) {
  return sha256(std::span<const uint8_t>(reinterpret_cast<const uint8_t*>(data.data()), data.size()));
}

std::string digest_hex(const Digest& d) { return to_hex(d); }

}  // namespace meterchain
