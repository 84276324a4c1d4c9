#pragma once

#include <cstdint>
#include <cstring>
#include <optional>
#include <string>
#include <string_view>

#include "cfslab/attack/password_space.hpp"
#include "cfslab/crypto/legacy_cipher.hpp"

namespace cfslab {

struct CollisionResult {
  std::optional<std::string> password;
  std::uint64_t attempts = 0;  // guesses tested, the true password excluded

  bool found() const noexcept { return password.has_value(); }
};

// First password in enumeration order, other than `true_password`, whose
// key yields valid padding on `blob`. An exhausted source is reported with
// found() == false.
template <typename Source>
CollisionResult find_padding_collision(const CipherBlob& blob, const Source& source, std::string_view true_password) {
  CollisionResult result;
  source.for_each_in_partition(0, 1, [&](std::string_view guess) {
    if (guess == true_password || guess.size() > kKeySize) return true;
    ++result.attempts;
    LegacyKey key;
    std::memcpy(key.bytes.data(), guess.data(), guess.size());
    if (!check_padding_only(blob, key)) return true;
    result.password = std::string(guess);
    return false;
  });
  return result;
}

}  // namespace cfslab
