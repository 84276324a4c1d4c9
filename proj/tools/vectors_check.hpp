#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace cfslab::tools {

struct VectorCheckResult {
  std::string file;
  std::size_t checked = 0;
  std::vector<std::string> failures;
};

// Re-derives every record in the known vector files and compares.
std::vector<VectorCheckResult> check_vectors(const std::filesystem::path& dir);

}  // namespace cfslab::tools
