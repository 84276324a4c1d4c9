#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "cfslab/crypto/charset.hpp"

namespace cfslab {

enum class Violation { too_short, too_long, missing_special, illegal_character };

std::string_view to_string(Violation v) noexcept;

// Password rules of the legacy store/share dialogs. Lengths count Unicode
// code points of the UTF-8 input; `charset` and `special_set` are ASCII.
struct PasswordPolicy {
  std::size_t min_len = 6;
  std::size_t max_len = 32;
  std::string special_set{kLegacySpecials};
  bool require_special = true;
  std::string charset = printable_ascii();

  // 6..32 characters, one of !@#$%^&* required (as originally deployed).
  static PasswordPolicy legacy6();
  // Same rules with the later 8-character minimum.
  static PasswordPolicy legacy8();

  // min_len >= 1, min_len <= max_len == 32, special_set within charset.
  bool consistent() const;
};

// Empty result means the password is acceptable. Never throws.
std::vector<Violation> validate_password(std::string_view password, const PasswordPolicy& policy);

// Joins violations into "too_short, missing_special".
std::string describe(const std::vector<Violation>& violations);

}  // namespace cfslab
