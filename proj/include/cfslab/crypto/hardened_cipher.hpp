#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "cfslab/crypto/kdf.hpp"
#include "cfslab/crypto/legacy_cipher.hpp"
#include "cfslab/random.hpp"

namespace cfslab {

// Per-object parameters of the corrected scheme. Salt and IV are fresh for
// every encryption.
struct HardenedHeader {
  static constexpr std::uint32_t kVersion = 1;
  static constexpr std::size_t kSerializedSize = 4 + 16 + 16 + 4;

  std::uint32_t version = kVersion;
  Salt salt{};
  Block iv{};
  std::uint32_t kdf_iterations = kDefaultKdfIterations;

  static HardenedHeader fresh(RandomSource& rng, std::uint32_t iterations = kDefaultKdfIterations);

  // version(u32 BE) || salt || iv || iterations(u32 BE); covered by the
  // object hash.
  std::array<std::uint8_t, kSerializedSize> serialize() const;

  friend bool operator==(const HardenedHeader&, const HardenedHeader&) = default;
};

struct HardenedPolicy {
  std::size_t min_len = 12;
  double min_entropy_bits = 60.0;
};

enum class StrengthViolation { too_short, low_entropy };

std::string_view to_string(StrengthViolation v) noexcept;
std::string describe(const std::vector<StrengthViolation>& violations);

// Heuristic: distinct characters x log2(size of the character classes
// present). Classes: lower 26, upper 26, digit 10, ASCII symbol 33,
// non-ASCII byte 128.
double estimate_entropy_bits(std::string_view password);

// Empty result means acceptable. Never throws.
std::vector<StrengthViolation> password_strength_check(std::string_view password,
                                                       const HardenedPolicy& policy = {});

struct HardenedCiphertext {
  HardenedHeader header;
  CipherBlob blob;
};

// Throws PolicyError for a weak password, KdfParameterError below the floor.
HardenedCiphertext encrypt_hardened(ByteView plaintext, std::string_view password, RandomSource& rng,
                                    std::uint32_t iterations = kDefaultKdfIterations,
                                    const HardenedPolicy& policy = {});

// Throws PaddingError on a wrong password (with the usual ~0.39% false
// accept rate on padding alone).
Bytes decrypt_hardened(const HardenedHeader& header, const CipherBlob& blob, std::string_view password);

// Same, with the key already derived.
Bytes decrypt_hardened(const HardenedHeader& header, const CipherBlob& blob, const KeyBytes& key);

}  // namespace cfslab
