#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "cfslab/runtime/transcript.hpp"

namespace cfslab {

struct Exposure {
  std::string secret;
  std::vector<std::uint64_t> arrival_indices;
  std::vector<std::string> ops;

  bool exposed() const noexcept { return !arrival_indices.empty(); }
};

struct ExposureReport {
  std::vector<Exposure> exposures;  // one per secret, input order

  std::size_t exposed_count() const noexcept;
  nlohmann::json to_json() const;
};

// Which transcript entries reveal each secret.
ExposureReport secrecy_audit(const std::vector<TranscriptEntry>& entries, const std::vector<std::string>& secrets);
ExposureReport secrecy_audit(const Transcript& transcript, const std::vector<std::string>& secrets);

}  // namespace cfslab
