#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "cfslab/bytes.hpp"

namespace cfslab {

using Scalar = std::array<std::uint8_t, 32>;
using Digest32 = std::array<std::uint8_t, 32>;

// Fixed string the legacy client appends to the sharing password.
inline constexpr std::string_view kLegacyShareConstant = "American Psycho";

struct Address {
  std::array<std::uint8_t, 20> bytes{};

  std::string hex() const { return to_hex(bytes); }
  static Address from_hex(std::string_view hex) { return {fixed_from_hex<20>(hex)}; }
  friend bool operator==(const Address&, const Address&) = default;
};

// Affine coordinates, big-endian.
struct PublicPoint {
  std::array<std::uint8_t, 32> x{};
  std::array<std::uint8_t, 32> y{};

  // x || y without the 0x04 prefix.
  std::array<std::uint8_t, 64> uncompressed() const;
  friend bool operator==(const PublicPoint&, const PublicPoint&) = default;
};

struct ShareKeypair {
  Scalar private_scalar{};
  PublicPoint public_point;
  Address address;
};

// Last 20 bytes of Keccak-256(x || y).
Address address_of(const PublicPoint& point);

// Throws ZeroScalarError when the scalar is 0 mod n.
ShareKeypair keypair_from_scalar(const Scalar& scalar);

// scalar = Keccak256(Keccak256(prefix || password || "American Psycho")),
// inner digest fed as raw bytes. The legacy flow uses an empty prefix; the
// hardened flow passes its own context string so addresses never coincide.
Scalar share_scalar(std::string_view sharing_password, std::string_view context_prefix = {});

// Throws std::invalid_argument on an empty password, ZeroScalarError on a
// degenerate scalar.
ShareKeypair derive_share_keypair(std::string_view sharing_password, std::string_view context_prefix = {});

// ECDSA signature with the recovery id needed to rebuild the public point.
struct RecoverableSignature {
  std::array<std::uint8_t, 32> r{};
  std::array<std::uint8_t, 32> s{};
  std::uint8_t recovery_id = 0;  // 0..3

  // r || s || recovery_id
  std::array<std::uint8_t, 65> serialize() const;
  // nullopt unless exactly 65 bytes with recovery_id <= 3.
  static std::optional<RecoverableSignature> parse(ByteView bytes);
  friend bool operator==(const RecoverableSignature&, const RecoverableSignature&) = default;
};

// Deterministic nonce (RFC 6979, HMAC-SHA-256), low-s normalised.
RecoverableSignature sign_digest(const Scalar& private_scalar, const Digest32& digest);

std::optional<PublicPoint> recover_public_point(const Digest32& digest, const RecoverableSignature& sig);

// Keccak-256 of the decimal ASCII rendering.
Digest32 timestamp_digest(std::int64_t timestamp);

RecoverableSignature sign_timestamp(const ShareKeypair& keypair, std::int64_t timestamp);

// Recovers the signer and compares its address. Any malformed input yields
// false. Freshness is the caller's concern.
bool verify_timestamp_sig(const Address& address, std::int64_t timestamp, ByteView signature);

}  // namespace cfslab
