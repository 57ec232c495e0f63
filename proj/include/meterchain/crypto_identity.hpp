#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "meterchain/bigint.hpp"
#include "meterchain/hash.hpp"
#include "meterchain/rng.hpp"

namespace meterchain {

// An RSA public key doubles as a meter's disposable identity ("pseudonym").
// The verification exponent is computed as the modular inverse of a randomly
// chosen signing exponent, so publishing it reveals nothing about the signer.
struct PublicKey {
  Bigint modulus;
  Bigint exponent;  // verification exponent, published with the pseudonym
};

struct PrivateKey {
  Bigint modulus;
  Bigint exponent;  // signing exponent, held by the owning meter only
};

struct KeyPair {
  PublicKey public_key;
  PrivateKey private_key;
  unsigned modulus_bits = 0;
};

enum class KeygenMode {
  kTest,        // modulus_bits >= 64; keeps property suites fast
  kProduction,  // modulus_bits >= 512
};

// Canonical byte encoding of a public key:
//   u32be len(n) | n | u32be len(e) | e      (minimal big-endian magnitudes)
// The encoding is injective, so pseudonym equality is byte equality, and the
// bytewise order gives the total order used for tie-breaking.
class Pseudonym {
 public:
  Pseudonym() = default;
  explicit Pseudonym(std::vector<uint8_t> key_bytes) : key_bytes_(std::move(key_bytes)) {}
  static Pseudonym from_public_key(const PublicKey& key);

  const std::vector<uint8_t>& bytes() const { return key_bytes_; }
  std::string hex() const;

  // Recovers the public key; nullopt if the bytes are not a well-formed
  // encoding (garbage pseudonyms fail verification rather than crash).
  std::optional<PublicKey> decode() const;

  auto operator<=>(const Pseudonym& other) const { return key_bytes_ <=> other.key_bytes_; }
  bool operator==(const Pseudonym& other) const { return key_bytes_ == other.key_bytes_; }

 private:
  std::vector<uint8_t> key_bytes_;
};

// Pseudonym-to-user mapping. Held by the key-management authority and the
// billing engine only; group members never see it.
struct RegistryEntry {
  std::string user_id;
  std::vector<Pseudonym> pseudonyms;
  std::string group_id;
};

// Deterministic keypair generation: two distinct primes of modulus_bits/2
// bits each, a random signing exponent coprime to phi(n), and its inverse as
// the verification exponent. Throws std::invalid_argument below the mode's
// floor or for odd widths.
KeyPair generate_keypair(unsigned modulus_bits, DetRng& rng, KeygenMode mode);

// A structurally well-formed pseudonym that was never registered: random
// modulus and exponent of the right shape, no primality. This is what an
// unregistered adversary (or a false-positive probe) looks like on the wire.
Pseudonym random_pseudonym(unsigned modulus_bits, DetRng& rng);

// Key-management authority. Issues keypairs, records the public halves per
// group, and hands the private halves back to the registering meter. No
// public operation maps a pseudonym back to a user id; that association
// lives only in registry(), which is authority/billing scope.
class Authority {
 public:
  Authority(unsigned modulus_bits, KeygenMode mode)
      : modulus_bits_(modulus_bits), mode_(mode) {}

  // Throws RegistrationError if user_id is already registered in group_id.
  std::vector<KeyPair> register_user(const std::string& user_id, unsigned count,
                                     const std::string& group_id, DetRng& rng);

  std::vector<Pseudonym> group_pseudonyms(const std::string& group_id) const;

  // Confidential: authority and billing engine only.
  std::span<const RegistryEntry> registry(const std::string& group_id) const;

 private:
  unsigned modulus_bits_;
  KeygenMode mode_;
  std::map<std::string, std::vector<RegistryEntry>> groups_;
  std::set<std::vector<uint8_t>> issued_;
};

// Injective encoding of one share for signing and Merkle hashing:
//   0x52 | share as i64be | slot as u64be | u32be len(key_bytes) | key_bytes
std::vector<uint8_t> canonical_payload(int64_t share_wh, uint64_t slot, const Pseudonym& pk);

// Textbook RSA over the SHA-256 digest of the canonical payload, digest
// reduced mod n. No padding scheme at test scale.
Bigint sign_digest(const PrivateKey& key, const Digest& digest);
bool verify_digest(const PublicKey& key, const Bigint& signature, const Digest& digest);

Bigint sign_reading(const PrivateKey& key, int64_t share_wh, uint64_t slot, const Pseudonym& pk);
bool verify_reading_parts(const Pseudonym& pk, int64_t share_wh, uint64_t slot,
                          const Bigint& signature);

}  // namespace meterchain
