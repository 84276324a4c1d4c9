#include "cfslab/crypto/hash.hpp"

#include <openssl/evp.h>

#include <cstring>
#include <stdexcept>

namespace cfslab {

Sha256Digest sha256_digest(ByteView data) {
  Sha256Digest out;
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), out.bytes.data(), &len, EVP_sha256(), nullptr) != 1 ||
      len != out.bytes.size()) {
    throw std::runtime_error("EVP_Digest(sha256) failed");
  }
  return out;
}

namespace {

constexpr std::uint64_t kRoundConstants[24] = {
    0x0000000000000001ULL, 0x0000000000008082ULL, 0x800000000000808aULL, 0x8000000080008000ULL,
    0x000000000000808bULL, 0x0000000080000001ULL, 0x8000000080008081ULL, 0x8000000000008009ULL,
    0x000000000000008aULL, 0x0000000000000088ULL, 0x0000000080008009ULL, 0x000000008000000aULL,
    0x000000008000808bULL, 0x800000000000008bULL, 0x8000000000008089ULL, 0x8000000000008003ULL,
    0x8000000000008002ULL, 0x8000000000000080ULL, 0x000000000000800aULL, 0x800000008000000aULL,
    0x8000000080008081ULL, 0x8000000000008080ULL, 0x0000000080000001ULL, 0x8000000080008008ULL,
};

constexpr int kRotations[24] = {1, 3, 6, 10, 15, 21, 28, 36, 45, 55, 2, 14,
                                27, 41, 56, 8, 25, 43, 62, 18, 39, 61, 20, 44};

constexpr int kPiLane[24] = {10, 7, 11, 17, 18, 3, 5, 16, 8, 21, 24, 4,
                             15, 23, 19, 13, 12, 2, 20, 14, 22, 9, 6, 1};

constexpr std::uint64_t rotl(std::uint64_t x, int n) { return (x << n) | (x >> (64 - n)); }

void keccak_f1600(std::uint64_t st[25]) {
  std::uint64_t bc[5];
  for (auto rc : kRoundConstants) {
    // theta
    for (int i = 0; i < 5; ++i) bc[i] = st[i] ^ st[i + 5] ^ st[i + 10] ^ st[i + 15] ^ st[i + 20];
    for (int i = 0; i < 5; ++i) {
      std::uint64_t t = bc[(i + 4) % 5] ^ rotl(bc[(i + 1) % 5], 1);
      for (int j = 0; j < 25; j += 5) st[j + i] ^= t;
    }
    // rho + pi
    std::uint64_t t = st[1];
    for (int i = 0; i < 24; ++i) {
      int j = kPiLane[i];
      std::uint64_t tmp = st[j];
      st[j] = rotl(t, kRotations[i]);
      t = tmp;
    }
    // chi
    for (int j = 0; j < 25; j += 5) {
      for (int i = 0; i < 5; ++i) bc[i] = st[j + i];
      for (int i = 0; i < 5; ++i) st[j + i] ^= (~bc[(i + 1) % 5]) & bc[(i + 2) % 5];
    }
    // iota
    st[0] ^= rc;
  }
}

void xor_lanes(std::uint64_t st[25], const std::uint8_t* block, std::size_t len) {
  for (std::size_t i = 0; i < len; ++i) {
    st[i / 8] ^= static_cast<std::uint64_t>(block[i]) << (8 * (i % 8));
  }
}

}  // namespace

std::array<std::uint8_t, 32> keccak256(ByteView data) {
  constexpr std::size_t kRate = 136;
  std::uint64_t st[25] = {};

  std::size_t offset = 0;
  while (data.size() - offset >= kRate) {
    xor_lanes(st, data.data() + offset, kRate);
    keccak_f1600(st);
    offset += kRate;
  }

  std::uint8_t last[kRate] = {};
  std::size_t rest = data.size() - offset;
  if (rest) std::memcpy(last, data.data() + offset, rest);
  last[rest] ^= 0x01;
  last[kRate - 1] ^= 0x80;
  xor_lanes(st, last, kRate);
  keccak_f1600(st);

  std::array<std::uint8_t, 32> out{};
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = static_cast<std::uint8_t>(st[i / 8] >> (8 * (i % 8)));
  return out;
}

}  // namespace cfslab
