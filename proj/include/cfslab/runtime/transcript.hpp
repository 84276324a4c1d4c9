#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace cfslab {

struct TranscriptEntry {
  std::uint64_t arrival_index = 0;
  std::string op;
  nlohmann::json raw_fields;  // the complete decoded request, as received
};

// Append-only log of every request the server decoded. This is what the
// operator of the service gets to see.
class Transcript {
 public:
  // In-memory only.
  Transcript() = default;

  // Loads existing entries from a line-delimited JSON file and appends new
  // ones to it.
  explicit Transcript(std::filesystem::path file);

  Transcript(const Transcript&) = delete;
  Transcript& operator=(const Transcript&) = delete;

  // Returns the arrival index (strictly increasing from 0).
  std::uint64_t append(std::string op, nlohmann::json raw_fields);

  std::vector<TranscriptEntry> entries() const;
  std::size_t size() const;

  // Entries in which any string or number field, at any depth, contains the
  // needle. An empty needle matches nothing.
  std::vector<TranscriptEntry> grep(std::string_view needle) const;

  static std::vector<TranscriptEntry> read_file(const std::filesystem::path& file);

 private:
  mutable std::mutex mutex_;
  std::vector<TranscriptEntry> entries_;
  std::optional<std::ofstream> sink_;
};

bool json_contains(const nlohmann::json& value, std::string_view needle);

}  // namespace cfslab
