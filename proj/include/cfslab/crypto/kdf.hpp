#pragma once

#include <array>
#include <cstdint>
#include <string_view>

#include "cfslab/bytes.hpp"
#include "cfslab/crypto/legacy_cipher.hpp"

namespace cfslab {

inline constexpr std::uint32_t kKdfIterationFloor = 100'000;
inline constexpr std::uint32_t kDefaultKdfIterations = 600'000;

using Salt = std::array<std::uint8_t, 16>;

// RFC 8018 PBKDF2 with HMAC-SHA-256. No parameter floor; used directly only
// for published test vectors.
Bytes pbkdf2_hmac_sha256(std::string_view password, ByteView salt, std::uint32_t iterations,
                         std::size_t out_len);

namespace detail {

// Same function through OpenSSL's PKCS5_PBKDF2_HMAC, kept as a second route
// for cross-checking the precomputed-pad implementation above.
Bytes pbkdf2_hmac_sha256_reference(std::string_view password, ByteView salt, std::uint32_t iterations,
                                   std::size_t out_len);

}  // namespace detail

// 32-byte key for the hardened scheme. Throws KdfParameterError when
// iterations < kKdfIterationFloor.
KeyBytes derive_key_kdf(std::string_view password, const Salt& salt, std::uint32_t iterations);

}  // namespace cfslab
