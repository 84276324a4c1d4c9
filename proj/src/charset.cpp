#include "cfslab/crypto/charset.hpp"

#include <algorithm>
#include <cctype>

namespace cfslab {

std::string printable_ascii() {
  std::string s;
  for (char c = 0x21; c <= 0x7e; ++c) s.push_back(c);
  return s;
}

std::string charset_from_spec(std::string_view spec) {
  std::string out;
  auto add = [&out](std::string_view chars) {
    for (char c : chars) {
      if (out.find(c) == std::string::npos) out.push_back(c);
    }
  };
  std::size_t start = 0;
  while (start <= spec.size()) {
    auto end = spec.find('+', start);
    if (end == std::string_view::npos) end = spec.size();
    std::string_view token = spec.substr(start, end - start);
    if (token == "lower") {
      add("abcdefghijklmnopqrstuvwxyz");
    } else if (token == "upper") {
      add("ABCDEFGHIJKLMNOPQRSTUVWXYZ");
    } else if (token == "digits") {
      add("0123456789");
    } else if (token == "special") {
      add(kLegacySpecials);
    } else if (token == "symbols") {
      std::string symbols;
      for (char c : printable_ascii()) {
        if (!std::isalnum(static_cast<unsigned char>(c))) symbols.push_back(c);
      }
      add(symbols);
    } else if (token == "printable") {
      add(printable_ascii());
    } else {
      add(token);
    }
    start = end + 1;
  }
  return out;
}

}  // namespace cfslab
