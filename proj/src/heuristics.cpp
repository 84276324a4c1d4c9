#include "cfslab/attack/heuristics.hpp"

#include <algorithm>
#include <stdexcept>

namespace cfslab {

double printable_ratio(ByteView plaintext) noexcept {
  if (plaintext.empty()) return 0.0;
  const auto printable = std::count_if(plaintext.begin(), plaintext.end(), [](std::uint8_t b) {
    return (b >= 0x20 && b <= 0x7E) || b == '\t' || b == '\n' || b == '\r';
  });
  return static_cast<double>(printable) / static_cast<double>(plaintext.size());
}

PlaintextScorer magic_bytes_scorer(Bytes magic) {
  return [magic = std::move(magic)](ByteView plaintext) {
    return plaintext.size() >= magic.size() && std::equal(magic.begin(), magic.end(), plaintext.begin()) ? 1.0 : 0.0;
  };
}

PlaintextScorer scorer_from_spec(const std::string& spec) {
  if (spec == "text") return printable_ratio;
  if (spec.starts_with("magic:")) return magic_bytes_scorer(from_hex(spec.substr(6)));
  throw std::invalid_argument("unknown heuristic '" + spec + "' (expected text or magic:<hex>)");
}

}  // namespace cfslab
