#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

#include "cfslab/bytes.hpp"

namespace cfslab {

inline constexpr std::size_t kBlockSize = 16;
inline constexpr std::size_t kKeySize = 32;

using Block = std::array<std::uint8_t, kBlockSize>;
using KeyBytes = std::array<std::uint8_t, kKeySize>;

// The legacy AES key: the password's bytes followed by zero bytes.
struct LegacyKey {
  KeyBytes bytes{};
  friend bool operator==(const LegacyKey&, const LegacyKey&) = default;
};

// Throws KeyLengthError when the UTF-8 encoding exceeds 32 bytes.
LegacyKey derive_legacy_key(std::string_view password);

// Ciphertext whose length is a positive multiple of the block size.
class CipherBlob {
 public:
  // Throws MalformedBlobError if the invariant does not hold.
  explicit CipherBlob(Bytes bytes);

  const Bytes& bytes() const noexcept { return bytes_; }
  std::size_t size() const noexcept { return bytes_.size(); }
  std::size_t block_count() const noexcept { return bytes_.size() / kBlockSize; }
  ByteView block(std::size_t index) const { return ByteView(bytes_).subspan(index * kBlockSize, kBlockSize); }

  friend bool operator==(const CipherBlob&, const CipherBlob&) = default;

 private:
  Bytes bytes_;
};

// AES-256-CBC, all-zero IV, PKCS7. Deterministic.
CipherBlob encrypt_legacy(ByteView plaintext, const LegacyKey& key);

// Throws PaddingError if the final block is not strict PKCS7.
Bytes decrypt_legacy(const CipherBlob& blob, const LegacyKey& key);

// True iff decrypt_legacy would succeed. Touches only the last block and its
// predecessor (the zero IV for single-block blobs).
bool check_padding_only(const CipherBlob& blob, const LegacyKey& key);

// Number of padding bytes if `block` ends in valid PKCS7 (every padding byte
// equal to the count, count in 1..16).
std::optional<std::size_t> pkcs7_padding_length(std::span<const std::uint8_t, kBlockSize> block) noexcept;

// Generic CBC building blocks, shared with the hardened scheme.
Bytes aes256_cbc_encrypt(ByteView plaintext, const KeyBytes& key, const Block& iv);
Bytes aes256_cbc_decrypt(ByteView ciphertext, const KeyBytes& key, const Block& iv);

namespace detail {

// Padding predicate on one (previous, last) block pair: decrypt `last` with
// `key`, xor with `previous`, check PKCS7. Hot loop of the cracker; uses
// AES-NI when the CPU has it.
bool last_block_padding_valid(const KeyBytes& key, const std::uint8_t* previous, const std::uint8_t* last) noexcept;

// Single-block AES-256 decryption on the fast path.
void aes256_decrypt_block(const KeyBytes& key, const std::uint8_t* in, std::uint8_t* out) noexcept;

bool cpu_has_aesni() noexcept;

}  // namespace detail

}  // namespace cfslab
