#include "cfslab/attack/cracker.hpp"

namespace cfslab {

std::vector<Candidate> CrackReport::above(double threshold) const {
  std::vector<Candidate> out;
  std::copy_if(candidates.begin(), candidates.end(), std::back_inserter(out),
               [&](const Candidate& c) { return c.score >= threshold; });
  return out;
}

nlohmann::json CrackReport::to_json() const {
  auto list = nlohmann::json::array();
  for (const auto& c : candidates) list.push_back({{"password", c.password}, {"padding_valid", c.padding_valid}, {"score", c.score}});
  auto projections = nlohmann::json::array();
  for (const auto& e : extrapolations) projections.push_back(e.to_json());
  return {{"space", space},
          {"parallelism", parallelism},
          {"guesses_tried", guesses_tried},
          {"padding_valid_count", padding_valid_count},
          {"elapsed_seconds", elapsed_seconds},
          {"throughput", throughput},
          {"candidates", std::move(list)},
          {"extrapolations", std::move(projections)}};
}

}  // namespace cfslab
