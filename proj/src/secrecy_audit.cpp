#include "cfslab/attack/secrecy_audit.hpp"

#include <algorithm>

namespace cfslab {

std::size_t ExposureReport::exposed_count() const noexcept {
  return static_cast<std::size_t>(std::count_if(exposures.begin(), exposures.end(), [](const Exposure& e) { return e.exposed(); }));
}

nlohmann::json ExposureReport::to_json() const {
  auto list = nlohmann::json::array();
  for (const auto& e : exposures) {
    list.push_back({{"secret", e.secret}, {"exposed", e.exposed()}, {"arrival_indices", e.arrival_indices}, {"ops", e.ops}});
  }
  return {{"exposed_count", exposed_count()}, {"secrets", std::move(list)}};
}

ExposureReport secrecy_audit(const std::vector<TranscriptEntry>& entries, const std::vector<std::string>& secrets) {
  ExposureReport report;
  for (const auto& secret : secrets) {
    Exposure exposure{secret, {}, {}};
    for (const auto& entry : entries) {
      if (!json_contains(entry.raw_fields, secret)) continue;
      exposure.arrival_indices.push_back(entry.arrival_index);
      exposure.ops.push_back(entry.op);
    }
    report.exposures.push_back(std::move(exposure));
  }
  return report;
}

ExposureReport secrecy_audit(const Transcript& transcript, const std::vector<std::string>& secrets) {
  return secrecy_audit(transcript.entries(), secrets);
}

}  // namespace cfslab
