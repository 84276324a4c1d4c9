#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

namespace cfslab {

struct ThroughputBench {
  double guesses_per_second = 0;
  std::uint64_t guesses = 0;
  double seconds = 0;
  bool aesni = false;
  std::string hardware;
  nlohmann::json to_json() const;
};

// Single-thread legacy guessing rate: key from the password, last-block
// padding check, over the 6-character legacy space. Runs `warmup_seconds`
// unmeasured first.
ThroughputBench bench_legacy_guessing(double seconds = 10.0, double warmup_seconds = 1.0);

struct KdfBench {
  std::uint32_t iterations = 0;
  std::size_t samples = 0;
  double seconds_per_guess = 0;
  nlohmann::json to_json() const;
};

// Wall-clock cost of one hardened guess: PBKDF2 key plus padding check.
KdfBench bench_kdf_guessing(std::uint32_t iterations, std::size_t samples = 3);

// CPU model string and logical core count.
std::string hardware_description();

}  // namespace cfslab
