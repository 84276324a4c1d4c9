#pragma once

#include <functional>
#include <string>

#include "cfslab/bytes.hpp"

namespace cfslab {

// Scores a candidate plaintext in [0, 1]; higher is more plausible.
using PlaintextScorer = std::function<double(ByteView)>;

// Threshold above which printable_ratio calls a decryption plausible text.
inline constexpr double kPlausibleTextThreshold = 0.95;

// Fraction of bytes that are printable ASCII, tab, LF or CR. Empty input
// scores 0.
double printable_ratio(ByteView plaintext) noexcept;

// 1 if the plaintext starts with `magic`, else 0.
PlaintextScorer magic_bytes_scorer(Bytes magic);

// "text" or "magic:<hex>". Throws std::invalid_argument otherwise.
PlaintextScorer scorer_from_spec(const std::string& spec);

}  // namespace cfslab
