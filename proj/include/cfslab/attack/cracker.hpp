#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstring>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "cfslab/attack/extrapolate.hpp"
#include "cfslab/attack/heuristics.hpp"
#include "cfslab/attack/password_space.hpp"
#include "cfslab/crypto/legacy_cipher.hpp"
#include "cfslab/errors.hpp"

namespace cfslab {

struct Candidate {
  std::string password;
  bool padding_valid = true;
  double score = 0;
  friend bool operator==(const Candidate&, const Candidate&) = default;
};

struct CrackOptions {
  std::size_t parallelism = 1;
  PlaintextScorer heuristic = printable_ratio;
  // Padding-valid candidates scoring below this are counted but not kept.
  // The default keeps all of them.
  double keep_min_score = 0.0;
  std::vector<PasswordSpace> extrapolate_spaces = reference_spaces();
};

struct CrackReport {
  std::string space;
  std::size_t parallelism = 1;
  // Sorted by score (descending), then password.
  std::vector<Candidate> candidates;
  std::uint64_t padding_valid_count = 0;
  std::uint64_t guesses_tried = 0;
  double elapsed_seconds = 0;
  double throughput = 0;  // guesses_tried / elapsed_seconds
  std::vector<Extrapolation> extrapolations;

  const Candidate* best() const noexcept { return candidates.empty() ? nullptr : &candidates.front(); }
  std::vector<Candidate> above(double threshold) const;
  nlohmann::json to_json() const;
};

// Offline guessing against a legacy ciphertext. Each guess is tested with
// the last-block padding check; survivors are fully decrypted and scored.
// Every padding-valid candidate is reported, since wrong keys pass the
// padding check about 0.39% of the time.
template <typename Source>
CrackReport crack(const CipherBlob& blob, const Source& source, const CrackOptions& options = {});

// --- implementation ----------------------------------------------------------

namespace detail {

struct CrackShard {
  std::vector<Candidate> candidates;
  std::uint64_t padding_valid = 0;
  std::uint64_t tried = 0;
};

template <typename Source>
CrackShard crack_shard(const CipherBlob& blob, const Source& source, const CrackOptions& options, std::size_t part) {
  CrackShard shard;
  const std::uint8_t* last = blob.bytes().data() + blob.size() - kBlockSize;
  static constexpr Block kZero{};
  const std::uint8_t* previous = blob.block_count() > 1 ? last - kBlockSize : kZero.data();

  KeyBytes key{};
  std::size_t previous_len = 0;
  source.for_each_in_partition(part, options.parallelism, [&](std::string_view guess) {
    if (guess.size() > kKeySize) return true;  // cannot be a legacy key
    if (guess.size() < previous_len) std::memset(key.data() + guess.size(), 0, previous_len - guess.size());
    std::memcpy(key.data(), guess.data(), guess.size());
    previous_len = guess.size();
    ++shard.tried;
    if (!last_block_padding_valid(key, previous, last)) return true;
    ++shard.padding_valid;
    const double score = options.heuristic(decrypt_legacy(blob, LegacyKey{key}));
    if (score >= options.keep_min_score) shard.candidates.push_back({std::string(guess), true, score});
    return true;
  });
  return shard;
}

}  // namespace detail

template <typename Source>
CrackReport crack(const CipherBlob& blob, const Source& source, const CrackOptions& options) {
  if (options.parallelism == 0) throw std::invalid_argument("parallelism must be at least 1");
  const auto start = std::chrono::steady_clock::now();

  std::vector<detail::CrackShard> shards(options.parallelism);
  if (options.parallelism == 1) {
    shards[0] = detail::crack_shard(blob, source, options, 0);
  } else {
    std::vector<std::jthread> workers;
    workers.reserve(options.parallelism);
    for (std::size_t part = 0; part < options.parallelism; ++part) {
      workers.emplace_back([&, part] { shards[part] = detail::crack_shard(blob, source, options, part); });
    }
  }

  CrackReport report;
  report.space = source.describe();
  report.parallelism = options.parallelism;
  for (auto& s : shards) {
    report.guesses_tried += s.tried;
    report.padding_valid_count += s.padding_valid;
    std::move(s.candidates.begin(), s.candidates.end(), std::back_inserter(report.candidates));
  }
  std::sort(report.candidates.begin(), report.candidates.end(), [](const Candidate& a, const Candidate& b) {
    return a.score != b.score ? a.score > b.score : a.password < b.password;
  });

  report.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (report.elapsed_seconds > 0 && report.guesses_tried > 0) {
    report.throughput = static_cast<double>(report.guesses_tried) / report.elapsed_seconds;
    for (const auto& space : options.extrapolate_spaces) {
      report.extrapolations.push_back(extrapolate(space, report.throughput));
    }
  }
  return report;
}

}  // namespace cfslab
