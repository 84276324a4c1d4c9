// Single-block AES-256 decryption for the padding fast path. With AES-NI the
// key schedule and the block decryption stay in registers; otherwise the
// work goes through OpenSSL's ECB mode.
#include <openssl/evp.h>

#include <cstring>
#include <memory>

#include "cfslab/crypto/legacy_cipher.hpp"

#if defined(__x86_64__) || defined(__i386__)
#include <immintrin.h>
#define CFSLAB_HAVE_X86 1
#endif

namespace cfslab::detail {

namespace {

#ifdef CFSLAB_HAVE_X86

#define CFSLAB_AESNI __attribute__((target("aes,sse2")))

CFSLAB_AESNI inline __m128i expand_even(__m128i prev, __m128i assist) {
  assist = _mm_shuffle_epi32(assist, 0xff);
  prev = _mm_xor_si128(prev, _mm_slli_si128(prev, 4));
  prev = _mm_xor_si128(prev, _mm_slli_si128(prev, 4));
  prev = _mm_xor_si128(prev, _mm_slli_si128(prev, 4));
  return _mm_xor_si128(prev, assist);
}

CFSLAB_AESNI inline __m128i expand_odd(__m128i prev, __m128i latest) {
  __m128i assist = _mm_shuffle_epi32(_mm_aeskeygenassist_si128(latest, 0x00), 0xaa);
  prev = _mm_xor_si128(prev, _mm_slli_si128(prev, 4));
  prev = _mm_xor_si128(prev, _mm_slli_si128(prev, 4));
  prev = _mm_xor_si128(prev, _mm_slli_si128(prev, 4));
  return _mm_xor_si128(prev, assist);
}

CFSLAB_AESNI void aesni_decrypt_block(const std::uint8_t* key, const std::uint8_t* in, std::uint8_t* out) {
  __m128i rk[15];
  rk[0] = _mm_loadu_si128(reinterpret_cast<const __m128i*>(key));
  rk[1] = _mm_loadu_si128(reinterpret_cast<const __m128i*>(key + 16));
  rk[2] = expand_even(rk[0], _mm_aeskeygenassist_si128(rk[1], 0x01));
  rk[3] = expand_odd(rk[1], rk[2]);
  rk[4] = expand_even(rk[2], _mm_aeskeygenassist_si128(rk[3], 0x02));
  rk[5] = expand_odd(rk[3], rk[4]);
  rk[6] = expand_even(rk[4], _mm_aeskeygenassist_si128(rk[5], 0x04));
  rk[7] = expand_odd(rk[5], rk[6]);
  rk[8] = expand_even(rk[6], _mm_aeskeygenassist_si128(rk[7], 0x08));
  rk[9] = expand_odd(rk[7], rk[8]);
  rk[10] = expand_even(rk[8], _mm_aeskeygenassist_si128(rk[9], 0x10));
  rk[11] = expand_odd(rk[9], rk[10]);
  rk[12] = expand_even(rk[10], _mm_aeskeygenassist_si128(rk[11], 0x20));
  rk[13] = expand_odd(rk[11], rk[12]);
  rk[14] = expand_even(rk[12], _mm_aeskeygenassist_si128(rk[13], 0x40));

  // Equivalent inverse cipher: middle round keys go through InvMixColumns.
  __m128i state = _mm_xor_si128(_mm_loadu_si128(reinterpret_cast<const __m128i*>(in)), rk[14]);
  for (int round = 13; round >= 1; --round) state = _mm_aesdec_si128(state, _mm_aesimc_si128(rk[round]));
  state = _mm_aesdeclast_si128(state, rk[0]);
  _mm_storeu_si128(reinterpret_cast<__m128i*>(out), state);
}

#endif

void evp_decrypt_block(const std::uint8_t* key, const std::uint8_t* in, std::uint8_t* out) noexcept {
  struct Deleter {
    void operator()(EVP_CIPHER_CTX* c) const noexcept { EVP_CIPHER_CTX_free(c); }
  };
  thread_local std::unique_ptr<EVP_CIPHER_CTX, Deleter> ctx(EVP_CIPHER_CTX_new());
  int len = 0;
  EVP_DecryptInit_ex(ctx.get(), EVP_aes_256_ecb(), nullptr, key, nullptr);
  EVP_CIPHER_CTX_set_padding(ctx.get(), 0);
  EVP_DecryptUpdate(ctx.get(), out, &len, in, static_cast<int>(kBlockSize));
}

const bool kHasAesni = [] {
#ifdef CFSLAB_HAVE_X86
  return __builtin_cpu_supports("aes") != 0;
#else
  return false;
#endif
}();

}  // namespace

bool cpu_has_aesni() noexcept { return kHasAesni; }

void aes256_decrypt_block(const KeyBytes& key, const std::uint8_t* in, std::uint8_t* out) noexcept {
#ifdef CFSLAB_HAVE_X86
  if (kHasAesni) {
    aesni_decrypt_block(key.data(), in, out);
    return;
  }
#endif
  evp_decrypt_block(key.data(), in, out);
}

bool last_block_padding_valid(const KeyBytes& key, const std::uint8_t* previous, const std::uint8_t* last) noexcept {
  std::uint8_t block[kBlockSize];
  aes256_decrypt_block(key, last, block);
  for (std::size_t i = 0; i < kBlockSize; ++i) block[i] ^= previous[i];
  return pkcs7_padding_length(std::span<const std::uint8_t, kBlockSize>(block, kBlockSize)).has_value();
}

}  // namespace cfslab::detail
