#include "meterchain/crypto_identity.hpp"

#include <stdexcept>

#include "meterchain/encoding.hpp"
#include "meterchain/errors.hpp"
#include "meterchain/hex.hpp"

namespace meterchain {

namespace {

constexpr int kMillerRabinRounds = 40;
constexpr uint8_t kPayloadTag = 0x52;

Bigint random_below(const Bigint& bound, DetRng& rng) {
  // Draw one word more than needed and reduce. The residual modulo bias is
  // below 2^-64, irrelevant for key material at any width.
  size_t bits = mpz_sizeinbase(bound.get_mpz_t(), 2);
  Bigint v = bigint_from_bytes(rng.bytes(bits / 8 + 9));
  return v % bound;
}

bool miller_rabin(const Bigint& n, int rounds, DetRng& rng) {
  if (n < 2) return false;
  for (int p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n == p) return true;
    if (mpz_divisible_ui_p(n.get_mpz_t(), static_cast<unsigned long>(p))) return false;
  }
  Bigint d = n - 1;
  unsigned long r = mpz_scan1(d.get_mpz_t(), 0);
  mpz_tdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), r);
  for (int round = 0; round < rounds; ++round) {
    Bigint a = 2 + random_below(n - 3, rng);
    Bigint x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (unsigned long i = 1; i < r; ++i) {
      x = x * x % n;
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

Bigint random_prime(unsigned bits, DetRng& rng) {
  if (bits < 2) throw std::invalid_argument("prime width too small");
  while (true) {
    Bigint candidate = bigint_from_bytes(rng.bytes((bits + 7) / 8));
    mpz_tdiv_r_2exp(candidate.get_mpz_t(), candidate.get_mpz_t(), bits);
    mpz_setbit(candidate.get_mpz_t(), bits - 1);  // exact bit length
    mpz_setbit(candidate.get_mpz_t(), 0);         // odd
    if (miller_rabin(candidate, kMillerRabinRounds, rng)) return candidate;
  }
}

Bigint digest_to_value(const Digest& digest, const Bigint& modulus) {
  return bigint_from_bytes(digest) % modulus;
}

}  // namespace

KeyPair generate_keypair(unsigned modulus_bits, DetRng& rng, KeygenMode mode) {
  unsigned floor = mode == KeygenMode::kProduction ? 512 : 64;
  if (modulus_bits < floor) {
    throw std::invalid_argument("modulus_bits below mode floor");
  }
  if (modulus_bits % 2 != 0) {
    throw std::invalid_argument("modulus_bits must be even");
  }
  Bigint p = random_prime(modulus_bits / 2, rng);
  Bigint q;
  do {
    q = random_prime(modulus_bits / 2, rng);
  } while (q == p);
  Bigint n = p * q;
  Bigint phi = (p - 1) * (q - 1);
  Bigint sign_exp, verify_exp;
  while (true) {
    sign_exp = 3 + random_below(phi - 3, rng);
    if (gcd(sign_exp, phi) != 1) continue;
    if (mpz_invert(verify_exp.get_mpz_t(), sign_exp.get_mpz_t(), phi.get_mpz_t()) != 0) break;
  }
  KeyPair kp;
  kp.public_key = PublicKey{n, verify_exp};
  kp.private_key = PrivateKey{n, sign_exp};
  kp.modulus_bits = modulus_bits;
  return kp;
}

Pseudonym random_pseudonym(unsigned modulus_bits, DetRng& rng) {
  Bigint n = bigint_from_bytes(rng.bytes((modulus_bits + 7) / 8));
  mpz_tdiv_r_2exp(n.get_mpz_t(), n.get_mpz_t(), modulus_bits);
  mpz_setbit(n.get_mpz_t(), modulus_bits - 1);
  Bigint e = 1 + random_below(n - 1, rng);
  return Pseudonym::from_public_key(PublicKey{n, e});
}

Pseudonym Pseudonym::from_public_key(const PublicKey& key) {
  std::vector<uint8_t> n_bytes = bigint_to_bytes(key.modulus);
  std::vector<uint8_t> e_bytes = bigint_to_bytes(key.exponent);
  std::vector<uint8_t> out;
  out.reserve(8 + n_bytes.size() + e_bytes.size());
  put_u32be(out, static_cast<uint32_t>(n_bytes.size()));
  out.insert(out.end(), n_bytes.begin(), n_bytes.end());
  put_u32be(out, static_cast<uint32_t>(e_bytes.size()));
  out.insert(out.end(), e_bytes.begin(), e_bytes.end());
  return Pseudonym(std::move(out));
}

std::string Pseudonym::hex() const { return to_hex(key_bytes_); }

std::optional<PublicKey> Pseudonym::decode() const {
  const auto& b = key_bytes_;
  auto read_u32 = [&](size_t at) -> uint32_t {
    return static_cast<uint32_t>(b[at]) << 24 | static_cast<uint32_t>(b[at + 1]) << 16 |
           static_cast<uint32_t>(b[at + 2]) << 8 | static_cast<uint32_t>(b[at + 3]);
  };
  if (b.size() < 8) return std::nullopt;
  uint32_t n_len = read_u32(0);
  if (b.size() < 8 + static_cast<size_t>(n_len)) return std::nullopt;
  uint32_t e_len = read_u32(4 + n_len);
  if (b.size() != 8 + static_cast<size_t>(n_len) + e_len) return std::nullopt;
  // Minimal magnitudes only, or two encodings could alias one key.
  if (n_len > 0 && b[4] == 0) return std::nullopt;
  if (e_len > 0 && b[8 + n_len] == 0) return std::nullopt;
  PublicKey key;
  key.modulus = bigint_from_bytes(std::span(b).subspan(4, n_len));
  key.exponent = bigint_from_bytes(std::span(b).subspan(8 + n_len, e_len));
  if (key.modulus < 2) return std::nullopt;
  return key;
}

std::vector<KeyPair> Authority::register_user(const std::string& user_id, unsigned count,
                                              const std::string& group_id, DetRng& rng) {
  if (count == 0) throw std::invalid_argument("register_user: count must be positive");
  auto& entries = groups_[group_id];
  for (const auto& entry : entries) {
    if (entry.user_id == user_id) {
      throw RegistrationError("user '" + user_id + "' already registered in group '" +
                              group_id + "'");
    }
  }
  std::vector<KeyPair> keys;
  RegistryEntry entry{user_id, {}, group_id};
  keys.reserve(count);
  for (unsigned i = 0; i < count; ++i) {
    KeyPair kp = generate_keypair(modulus_bits_, rng, mode_);
    Pseudonym pk = Pseudonym::from_public_key(kp.public_key);
    // A bytewise collision with an issued pseudonym would link two users;
    // draw again (astronomically rare even at test widths).
    while (!issued_.insert(pk.bytes()).second) {
      kp = generate_keypair(modulus_bits_, rng, mode_);
      pk = Pseudonym::from_public_key(kp.public_key);
    }
    entry.pseudonyms.push_back(std::move(pk));
    keys.push_back(std::move(kp));
  }
  entries.push_back(std::move(entry));
  return keys;
}

std::vector<Pseudonym> Authority::group_pseudonyms(const std::string& group_id) const {
  std::vector<Pseudonym> out;
  auto it = groups_.find(group_id);
  if (it == groups_.end()) return out;
  for (const auto& entry : it->second) {
    out.insert(out.end(), entry.pseudonyms.begin(), entry.pseudonyms.end());
  }
  return out;
}

std::span<const RegistryEntry> Authority::registry(const std::string& group_id) const {
  auto it = groups_.find(group_id);
  if (it == groups_.end()) return {};
  return it->second;
}

std::vector<uint8_t> canonical_payload(int64_t share_wh, uint64_t slot, const Pseudonym& pk) {
  std::vector<uint8_t> out;
  out.reserve(21 + pk.bytes().size());
  out.push_back(kPayloadTag);
  put_i64be(out, share_wh);
  put_u64be(out, slot);
  put_u32be(out, static_cast<uint32_t>(pk.bytes().size()));
  out.insert(out.end(), pk.bytes().begin(), pk.bytes().end());
  return out;
}

Bigint sign_digest(const PrivateKey& key, const Digest& digest) {
  return powmod(digest_to_value(digest, key.modulus), key.exponent, key.modulus);
}

bool verify_digest(const PublicKey& key, const Bigint& signature, const Digest& digest) {
  if (sgn(signature) < 0 || signature >= key.modulus) return false;
  return powmod(signature, key.exponent, key.modulus) == digest_to_value(digest, key.modulus);
}

Bigint sign_reading(const PrivateKey& key, int64_t share_wh, uint64_t slot, const Pseudonym& pk) {
  return sign_digest(key, sha256(canonical_payload(share_wh, slot, pk)));
}

bool verify_reading_parts(const Pseudonym& pk, int64_t share_wh, uint64_t slot,
                          const Bigint& signature) {
  std::optional<PublicKey> key = pk.decode();
  if (!key) return false;
  return verify_digest(*key, signature, sha256(canonical_payload(share_wh, slot, pk)));
}

}  // namespace meterchain
