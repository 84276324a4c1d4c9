#pragma once

#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace cfslab::testing {

inline std::string vector_path(const std::string& name) { return std::string(CFSLAB_VECTOR_DIR) + "/" + name; }

// Records of a line-delimited JSON file, skipping records whose keys start
// with '_' (file-level annotations).
inline std::vector<nlohmann::json> load_jsonl(const std::string& name) {
  std::ifstream in(vector_path(name));
  if (!in) throw std::runtime_error("missing vector file " + name);
  std::vector<nlohmann::json> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto record = nlohmann::json::parse(line);
    if (record.contains("_comment")) continue;
    out.push_back(std::move(record));
  }
  return out;
}

}  // namespace cfslab::testing
