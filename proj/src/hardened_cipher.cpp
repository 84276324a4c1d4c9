#include "cfslab/crypto/hardened_cipher.hpp"

#include <cmath>

#include "cfslab/errors.hpp"

namespace cfslab {

namespace {

void put_u32(std::uint8_t* out, std::uint32_t v) {
  out[0] = static_cast<std::uint8_t>(v >> 24);
  out[1] = static_cast<std::uint8_t>(v >> 16);
  out[2] = static_cast<std::uint8_t>(v >> 8);
  out[3] = static_cast<std::uint8_t>(v);
}

}  // namespace

HardenedHeader HardenedHeader::fresh(RandomSource& rng, std::uint32_t iterations) {
  HardenedHeader h;
  h.kdf_iterations = iterations;
  rng.fill(h.salt);
  rng.fill(h.iv);
  return h;
}

std::array<std::uint8_t, HardenedHeader::kSerializedSize> HardenedHeader::serialize() const {
  std::array<std::uint8_t, kSerializedSize> out{};
  put_u32(out.data(), version);
  std::copy(salt.begin(), salt.end(), out.begin() + 4);
  std::copy(iv.begin(), iv.end(), out.begin() + 20);
  put_u32(out.data() + 36, kdf_iterations);
  return out;
}

std::string_view to_string(StrengthViolation v) noexcept {
  switch (v) {
    case StrengthViolation::too_short: return "too_short";
    case StrengthViolation::low_entropy: return "low_entropy";
  }
  return "unknown";
}

std::string describe(const std::vector<StrengthViolation>& violations) {
  std::string out;
  for (auto v : violations) {
    if (!out.empty()) out += ", ";
    out += to_string(v);
  }
  return out;
}

double estimate_entropy_bits(std::string_view password) {
  bool lower = false, upper = false, digit = false, symbol = false, high = false;
  bool seen[256] = {};
  std::size_t distinct = 0;
  for (char ch : password) {
    auto c = static_cast<unsigned char>(ch);
    if (!seen[c]) {
      seen[c] = true;
      ++distinct;
    }
    if (c >= 'a' && c <= 'z') lower = true;
    else if (c >= 'A' && c <= 'Z') upper = true;
    else if (c >= '0' && c <= '9') digit = true;
    else if (c >= 0x80) high = true;
    else symbol = true;
  }
  const int pool = (lower ? 26 : 0) + (upper ? 26 : 0) + (digit ? 10 : 0) + (symbol ? 33 : 0) + (high ? 128 : 0);
  if (pool == 0) return 0.0;
  return static_cast<double>(distinct) * std::log2(static_cast<double>(pool));
}

std::vector<StrengthViolation> password_strength_check(std::string_view password, const HardenedPolicy& policy) {
  std::size_t length = 0;
  for (char ch : password) {
    if ((static_cast<unsigned char>(ch) & 0xc0) != 0x80) ++length;
  }
  std::vector<StrengthViolation> out;
  if (length < policy.min_len) out.push_back(StrengthViolation::too_short);
  if (estimate_entropy_bits(password) < policy.min_entropy_bits) out.push_back(StrengthViolation::low_entropy);
  return out;
}

HardenedCiphertext encrypt_hardened(ByteView plaintext, std::string_view password, RandomSource& rng,
                                    std::uint32_t iterations, const HardenedPolicy& policy) {
  if (auto v = password_strength_check(password, policy); !v.empty()) {
    throw PolicyError("password rejected: " + describe(v));
  }
  auto header = HardenedHeader::fresh(rng, iterations);
  auto key = derive_key_kdf(password, header.salt, header.kdf_iterations);
  return {header, CipherBlob(aes256_cbc_encrypt(plaintext, key, header.iv))};
}

Bytes decrypt_hardened(const HardenedHeader& header, const CipherBlob& blob, const KeyBytes& key) {
  return aes256_cbc_decrypt(blob.bytes(), key, header.iv);
}

Bytes decrypt_hardened(const HardenedHeader& header, const CipherBlob& blob, std::string_view password) {
  return decrypt_hardened(header, blob, derive_key_kdf(password, header.salt, header.kdf_iterations));
}

}  // namespace cfslab
