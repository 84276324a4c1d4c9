#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "cfslab/bytes.hpp"

namespace cfslab {

struct Sha256Digest {
  std::array<std::uint8_t, 32> bytes{};

  std::string hex() const { return to_hex(bytes); }
  static Sha256Digest from_hex(std::string_view hex) { return {fixed_from_hex<32>(hex)}; }
  friend bool operator==(const Sha256Digest&, const Sha256Digest&) = default;
};

Sha256Digest sha256_digest(ByteView data);

// Original Keccak-256 (0x01 domain padding), as used for Ethereum-style
// addresses. Not SHA3-256.
std::array<std::uint8_t, 32> keccak256(ByteView data);

}  // namespace cfslab
