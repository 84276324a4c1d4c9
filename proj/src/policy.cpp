#include "cfslab/crypto/policy.hpp"

namespace cfslab {

std::string_view to_string(Violation v) noexcept {
  switch (v) {
    case Violation::too_short: return "too_short";
    case Violation::too_long: return "too_long";
    case Violation::missing_special: return "missing_special";
    case Violation::illegal_character: return "illegal_character";
  }
  return "unknown";
}

PasswordPolicy PasswordPolicy::legacy6() { return PasswordPolicy{}; }

PasswordPolicy PasswordPolicy::legacy8() {
  PasswordPolicy p;
  p.min_len = 8;
  return p;
}

bool PasswordPolicy::consistent() const {
  if (min_len < 1 || min_len > max_len || max_len != 32) return false;
  for (char c : special_set) {
    if (charset.find(c) == std::string::npos) return false;
  }
  return true;
}

std::vector<Violation> validate_password(std::string_view password, const PasswordPolicy& policy) {
  std::size_t length = 0;
  bool has_special = false;
  bool illegal = false;
  for (std::size_t i = 0; i < password.size(); ++i) {
    auto byte = static_cast<unsigned char>(password[i]);
    if ((byte & 0xc0) != 0x80) ++length;  // count code points, not continuation bytes
    if (byte >= 0x80) {
      illegal = true;
      continue;
    }
    if (policy.charset.find(password[i]) == std::string::npos) illegal = true;
    if (policy.special_set.find(password[i]) != std::string::npos) has_special = true;
  }

  std::vector<Violation> out;
  if (length < policy.min_len) out.push_back(Violation::too_short);
  if (length > policy.max_len) out.push_back(Violation::too_long);
  if (policy.require_special && !has_special) out.push_back(Violation::missing_special);
  if (illegal) out.push_back(Violation::illegal_character);
  return out;
}

std::string describe(const std::vector<Violation>& violations) {
  std::string out;
  for (auto v : violations) {
    if (!out.empty()) out += ", ";
    out += to_string(v);
  }
  return out;
}

}  // namespace cfslab
