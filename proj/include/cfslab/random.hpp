#pragma once

#include <array>
#include <cstdint>
#include <mutex>
#include <random>
#include <span>

#include "cfslab/bytes.hpp"

namespace cfslab {

// Injected randomness. Every operation that needs fresh bytes takes one of
// these so tests can run deterministically.
class RandomSource {
 public:
  virtual ~RandomSource() = default;
  virtual void fill(std::span<std::uint8_t> out) = 0;

  Bytes bytes(std::size_t n) {
    Bytes b(n);
    fill(b);
    return b;
  }

  template <std::size_t N>
  std::array<std::uint8_t, N> array() {
    std::array<std::uint8_t, N> a{};
    fill(a);
    return a;
  }

  // Uniform in [0, bound).
  std::uint64_t uniform(std::uint64_t bound);
};

// OpenSSL CSPRNG. Stateless from the caller's view, safe to share.
class SystemRandom final : public RandomSource {
 public:
  void fill(std::span<std::uint8_t> out) override;
};

// Reproducible stream for tests and benchmarks. Not cryptographically secure.
class SeededRandom final : public RandomSource {
 public:
  explicit SeededRandom(std::uint64_t seed) : engine_(seed) {}
  void fill(std::span<std::uint8_t> out) override;

 private:
  std::mutex mutex_;
  std::mt19937_64 engine_;
};

SystemRandom& system_random();

}  // namespace cfslab
