#include "cfslab/attack/bench.hpp"

#include <chrono>
#include <cstring>
#include <fstream>
#include <thread>

#include "cfslab/attack/password_space.hpp"
#include "cfslab/crypto/kdf.hpp"
#include "cfslab/crypto/legacy_cipher.hpp"
#include "cfslab/random.hpp"

namespace cfslab {

namespace {

using Clock = std::chrono::steady_clock;

volatile std::uint64_t g_sink = 0;

struct Sample {
  std::uint64_t guesses = 0;
  double seconds = 0;
};

// Padding checks against a random two-block ciphertext until `budget`
// seconds have passed. The clock is read every 4096 guesses.
Sample run_guessing(double budget) {
  SeededRandom rng(0xbe7c4);
  const auto blob = rng.bytes(2 * kBlockSize);
  const std::uint8_t* previous = blob.data();
  const std::uint8_t* last = blob.data() + kBlockSize;

  Sample sample;
  std::uint64_t sink = 0;
  KeyBytes key{};
  const auto start = Clock::now();
  const auto deadline = start + std::chrono::duration<double>(budget);
  PasswordSpace::legacy(6).for_each_in_partition(0, 1, [&](std::string_view guess) {
    std::memcpy(key.data(), guess.data(), guess.size());
    sink += detail::last_block_padding_valid(key, previous, last);
    return (++sample.guesses & 0xFFF) != 0 || Clock::now() < deadline;
  });
  sample.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  g_sink = sink;
  return sample;
}

}  // namespace

nlohmann::json ThroughputBench::to_json() const {
  return {{"guesses_per_second", guesses_per_second}, {"guesses", guesses}, {"seconds", seconds},
          {"aesni", aesni}, {"hardware", hardware}};
}

nlohmann::json KdfBench::to_json() const {
  return {{"iterations", iterations}, {"samples", samples}, {"seconds_per_guess", seconds_per_guess}};
}

std::string hardware_description() {
  std::string model = "unknown cpu";
  std::ifstream cpuinfo("/proc/cpuinfo");
  for (std::string line; std::getline(cpuinfo, line);) {
    if (line.starts_with("model name")) {
      auto colon = line.find(':');
      if (colon != std::string::npos) model = line.substr(line.find_first_not_of(' ', colon + 1));
      break;
    }
  }
  return model + ", " + std::to_string(std::thread::hardware_concurrency()) + " logical cores";
}

ThroughputBench bench_legacy_guessing(double seconds, double warmup_seconds) {
  if (warmup_seconds > 0) run_guessing(warmup_seconds);
  const auto sample = run_guessing(seconds);
  ThroughputBench out;
  out.guesses = sample.guesses;
  out.seconds = sample.seconds;
  out.guesses_per_second = sample.seconds > 0 ? static_cast<double>(sample.guesses) / sample.seconds : 0.0;
  out.aesni = detail::cpu_has_aesni();
  out.hardware = hardware_description();
  return out;
}

KdfBench bench_kdf_guessing(std::uint32_t iterations, std::size_t samples) {
  SeededRandom rng(0x6b6466);
  const auto salt = rng.bytes(16);
  const auto blob = rng.bytes(2 * kBlockSize);
  std::uint64_t sink = 0;
  const auto start = Clock::now();
  for (std::size_t i = 0; i < samples; ++i) {
    const auto guess = "guess-" + std::to_string(i);
    const auto derived = pbkdf2_hmac_sha256(guess, salt, iterations, kKeySize);
    KeyBytes key{};
    std::memcpy(key.data(), derived.data(), kKeySize);
    sink += detail::last_block_padding_valid(key, blob.data(), blob.data() + kBlockSize);
  }
  const double elapsed = std::chrono::duration<double>(Clock::now() - start).count();
  KdfBench out;
  out.iterations = iterations;
  g_sink = sink;
  out.samples = samples;
  out.seconds_per_guess = samples ? elapsed / static_cast<double>(samples) : 0.0;
  return out;
}

}  // namespace cfslab
