// SHA256_Transform is deprecated in OpenSSL 3 but remains the only public
// way to run a bare compression from a saved state.
#define OPENSSL_SUPPRESS_DEPRECATED

#include "cfslab/crypto/kdf.hpp"

#include <openssl/evp.h>
#include <openssl/sha.h>

#include <algorithm>
#include <cstring>
#include <stdexcept>
#include <string>

#include "cfslab/errors.hpp"

namespace cfslab {

namespace {

constexpr std::size_t kShaBlock = 64;
constexpr std::size_t kShaDigest = 32;

void store_state(const SHA256_CTX& ctx, std::uint8_t* out) {
  for (int j = 0; j < 8; ++j) {
    const auto h = ctx.h[j];
    out[4 * j] = static_cast<std::uint8_t>(h >> 24);
    out[4 * j + 1] = static_cast<std::uint8_t>(h >> 16);
    out[4 * j + 2] = static_cast<std::uint8_t>(h >> 8);
    out[4 * j + 3] = static_cast<std::uint8_t>(h);
  }
}

// HMAC-SHA-256 with the key pads absorbed once. Every iteration after the
// first hashes exactly one 32-byte digest, i.e. one padded block per pad.
class PrfState {
 public:
  explicit PrfState(std::string_view password) {
    std::uint8_t key[kShaBlock] = {};
    if (password.size() > kShaBlock) {
      SHA256(reinterpret_cast<const std::uint8_t*>(password.data()), password.size(), key);
    } else {
      std::memcpy(key, password.data(), password.size());
    }
    std::uint8_t pad[kShaBlock];
    for (std::size_t i = 0; i < kShaBlock; ++i) pad[i] = key[i] ^ 0x36;
    SHA256_Init(&inner_);
    SHA256_Update(&inner_, pad, kShaBlock);
    for (std::size_t i = 0; i < kShaBlock; ++i) pad[i] = key[i] ^ 0x5c;
    SHA256_Init(&outer_);
    SHA256_Update(&outer_, pad, kShaBlock);
    OPENSSL_cleanse(key, sizeof key);
    OPENSSL_cleanse(pad, sizeof pad);
  }

  void mac(ByteView message, std::uint8_t* out) const {
    SHA256_CTX ctx = inner_;
    SHA256_Update(&ctx, message.data(), message.size());
    SHA256_Final(out, &ctx);
    ctx = outer_;
    SHA256_Update(&ctx, out, kShaDigest);
    SHA256_Final(out, &ctx);
  }

  // HMAC of a 32-byte message; `block` holds it in bytes 0..31 followed by
  // the fixed padding for a 96-byte total message.
  void mac_digest(std::uint8_t* block, std::uint8_t* out) const {
    SHA256_CTX ctx = inner_;
    SHA256_Transform(&ctx, block);
    store_state(ctx, block);
    ctx = outer_;
    SHA256_Transform(&ctx, block);
    store_state(ctx, out);
  }

 private:
  SHA256_CTX inner_;
  SHA256_CTX outer_;
};

}  // namespace

Bytes pbkdf2_hmac_sha256(std::string_view password, ByteView salt, std::uint32_t iterations,
                         std::size_t out_len) {
  if (iterations == 0) throw KdfParameterError("PBKDF2 needs at least one iteration");
  const PrfState prf(password);
  Bytes out(out_len);

  Bytes first(salt.begin(), salt.end());
  first.resize(salt.size() + 4);
  std::uint8_t block[kShaBlock] = {};
  block[kShaDigest] = 0x80;
  block[kShaBlock - 2] = 0x03;  // (64 + 32) * 8 = 768 bits

  for (std::uint32_t index = 1; (index - 1) * kShaDigest < out_len; ++index) {
    first[salt.size()] = static_cast<std::uint8_t>(index >> 24);
    first[salt.size() + 1] = static_cast<std::uint8_t>(index >> 16);
    first[salt.size() + 2] = static_cast<std::uint8_t>(index >> 8);
    first[salt.size() + 3] = static_cast<std::uint8_t>(index);

    std::uint8_t u[kShaDigest];
    std::uint8_t t[kShaDigest];
    prf.mac(first, u);
    std::memcpy(t, u, kShaDigest);
    for (std::uint32_t i = 1; i < iterations; ++i) {
      std::memcpy(block, u, kShaDigest);
      prf.mac_digest(block, u);
      for (std::size_t j = 0; j < kShaDigest; ++j) t[j] ^= u[j];
    }
    const std::size_t offset = (index - 1) * kShaDigest;
    std::memcpy(out.data() + offset, t, std::min(kShaDigest, out_len - offset));
  }
  return out;
}

Bytes detail::pbkdf2_hmac_sha256_reference(std::string_view password, ByteView salt, std::uint32_t iterations,
                                           std::size_t out_len) {
  if (iterations == 0) throw KdfParameterError("PBKDF2 needs at least one iteration");
  Bytes out(out_len);
  if (PKCS5_PBKDF2_HMAC(password.data(), static_cast<int>(password.size()), salt.data(),
                        static_cast<int>(salt.size()), static_cast<int>(iterations), EVP_sha256(),
                        static_cast<int>(out_len), out.data()) != 1) {
    throw std::runtime_error("PKCS5_PBKDF2_HMAC failed");
  }
  return out;
}

KeyBytes derive_key_kdf(std::string_view password, const Salt& salt, std::uint32_t iterations) {
  if (iterations < kKdfIterationFloor) {
    throw KdfParameterError("KDF iterations " + std::to_string(iterations) + " below floor " +
                            std::to_string(kKdfIterationFloor));
  }
  auto raw = pbkdf2_hmac_sha256(password, salt, iterations, kKeySize);
  KeyBytes key{};
  std::copy(raw.begin(), raw.end(), key.begin());
  return key;
}

}  // namespace cfslab
