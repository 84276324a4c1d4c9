#include "cfslab/crypto/legacy_cipher.hpp"

#include <openssl/evp.h>

#include <cstring>
#include <memory>
#include <stdexcept>

#include "cfslab/errors.hpp"

namespace cfslab {

namespace {

struct CipherCtxDeleter {
  void operator()(EVP_CIPHER_CTX* ctx) const noexcept { EVP_CIPHER_CTX_free(ctx); }
};
using CipherCtx = std::unique_ptr<EVP_CIPHER_CTX, CipherCtxDeleter>;

// Raw CBC without OpenSSL's padding handling; callers own PKCS7.
Bytes cbc_raw(ByteView input, const KeyBytes& key, const Block& iv, bool encrypt) {
  CipherCtx ctx(EVP_CIPHER_CTX_new());
  if (!ctx) throw std::bad_alloc();
  if (EVP_CipherInit_ex(ctx.get(), EVP_aes_256_cbc(), nullptr, key.data(), iv.data(), encrypt ? 1 : 0) != 1)
    throw std::runtime_error("EVP_CipherInit_ex failed");
  EVP_CIPHER_CTX_set_padding(ctx.get(), 0);

  Bytes out(input.size() + kBlockSize);
  int written = 0;
  if (!input.empty() &&
      EVP_CipherUpdate(ctx.get(), out.data(), &written, input.data(), static_cast<int>(input.size())) != 1)
    throw std::runtime_error("EVP_CipherUpdate failed");
  int tail = 0;
  if (EVP_CipherFinal_ex(ctx.get(), out.data() + written, &tail) != 1)
    throw std::runtime_error("EVP_CipherFinal_ex failed");
  out.resize(static_cast<std::size_t>(written + tail));
  return out;
}

constexpr Block kZeroIv{};

}  // namespace

LegacyKey derive_legacy_key(std::string_view password) {
  if (password.size() > kKeySize) {
    throw KeyLengthError("password is " + std::to_string(password.size()) + " bytes; the key holds at most 32");
  }
  LegacyKey key;
  std::memcpy(key.bytes.data(), password.data(), password.size());
  return key;
}

CipherBlob::CipherBlob(Bytes bytes) : bytes_(std::move(bytes)) {
  if (bytes_.empty() || bytes_.size() % kBlockSize != 0) {
    throw MalformedBlobError("ciphertext length " + std::to_string(bytes_.size()) +
                             " is not a positive multiple of 16");
  }
}

std::optional<std::size_t> pkcs7_padding_length(std::span<const std::uint8_t, kBlockSize> block) noexcept {
  const std::uint8_t n = block[kBlockSize - 1];
  if (n == 0 || n > kBlockSize) return std::nullopt;
  for (std::size_t i = kBlockSize - n; i < kBlockSize; ++i) {
    if (block[i] != n) return std::nullopt;
  }
  return n;
}

Bytes aes256_cbc_encrypt(ByteView plaintext, const KeyBytes& key, const Block& iv) {
  const std::size_t pad = kBlockSize - plaintext.size() % kBlockSize;
  Bytes padded(plaintext.begin(), plaintext.end());
  padded.insert(padded.end(), pad, static_cast<std::uint8_t>(pad));
  return cbc_raw(padded, key, iv, true);
}

Bytes aes256_cbc_decrypt(ByteView ciphertext, const KeyBytes& key, const Block& iv) {
  if (ciphertext.empty() || ciphertext.size() % kBlockSize != 0)
    throw MalformedBlobError("ciphertext length is not a positive multiple of 16");
  Bytes plain = cbc_raw(ciphertext, key, iv, false);
  auto last = std::span<const std::uint8_t, kBlockSize>(plain.data() + plain.size() - kBlockSize, kBlockSize);
  auto pad = pkcs7_padding_length(last);
  if (!pad) throw PaddingError("invalid PKCS7 padding");
  plain.resize(plain.size() - *pad);
  return plain;
}

CipherBlob encrypt_legacy(ByteView plaintext, const LegacyKey& key) {
  return CipherBlob(aes256_cbc_encrypt(plaintext, key.bytes, kZeroIv));
}

Bytes decrypt_legacy(const CipherBlob& blob, const LegacyKey& key) {
  return aes256_cbc_decrypt(blob.bytes(), key.bytes, kZeroIv);
}

bool check_padding_only(const CipherBlob& blob, const LegacyKey& key) {
  const std::uint8_t* last = blob.bytes().data() + blob.size() - kBlockSize;
  const std::uint8_t* previous = blob.block_count() > 1 ? last - kBlockSize : kZeroIv.data();
  return detail::last_block_padding_valid(key.bytes, previous, last);
}

}  // namespace cfslab
