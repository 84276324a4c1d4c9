#include "cfslab/attack/password_space.hpp"

#include <fstream>
#include <limits>

namespace cfslab {

std::pair<std::uint64_t, std::uint64_t> partition_range(std::uint64_t total, std::size_t part, std::size_t parts) {
  if (parts == 0 || part >= parts) throw std::invalid_argument("partition index out of range");
  using Wide = unsigned __int128;
  const auto begin = static_cast<std::uint64_t>(Wide(total) * part / parts);
  const auto end = static_cast<std::uint64_t>(Wide(total) * (part + 1) / parts);
  return {begin, end};
}

PasswordSpace PasswordSpace::legacy(std::size_t length) {
  return PasswordSpace{printable_ascii(), length, length, true, std::string(kLegacySpecials)};
}

void PasswordSpace::validate() const {
  if (charset.empty()) throw std::invalid_argument("password space charset is empty");
  if (length_min == 0 || length_min > length_max) throw std::invalid_argument("password space lengths are invalid");
}

bool PasswordSpace::contains(std::string_view password) const {
  if (password.size() < length_min || password.size() > length_max) return false;
  bool has_special = false;
  for (char c : password) {
    if (charset.find(c) == std::string::npos) return false;
    has_special = has_special || special_set.find(c) != std::string::npos;
  }
  return !require_special || has_special;
}

std::string PasswordSpace::describe() const {
  std::string out = std::to_string(charset.size()) + " chars, length ";
  out += length_min == length_max ? std::to_string(length_min)
                                  : std::to_string(length_min) + ".." + std::to_string(length_max);
  if (require_special) out += ", at least one of " + special_set;
  return out;
}

std::uint64_t PasswordSpace::enumerable_total() const {
  validate();
  const BigCount total = [&] {
    BigCount sum = 0;
    for (auto len = length_min; len <= length_max; ++len) sum += boost::multiprecision::pow(BigCount(charset.size()), len);
    return sum;
  }();
  if (total > std::numeric_limits<std::uint64_t>::max()) throw std::length_error("password space too large to enumerate");
  return total.convert_to<std::uint64_t>();
}

BigCount space_size(const PasswordSpace& space) {
  space.validate();
  std::size_t plain = 0;
  for (char c : space.charset) plain += space.special_set.find(c) == std::string::npos;
  BigCount sum = 0;
  for (auto len = space.length_min; len <= space.length_max; ++len) {
    sum += boost::multiprecision::pow(BigCount(space.charset.size()), len);
    if (space.require_special) sum -= boost::multiprecision::pow(BigCount(plain), len);
  }
  return sum;
}

std::vector<std::string> enumerate_partition(const PasswordSpace& space, std::size_t part, std::size_t parts) {
  std::vector<std::string> out;
  space.for_each_in_partition(part, parts, [&](std::string_view pw) {
    out.emplace_back(pw);
    return true;
  });
  return out;
}

Wordlist Wordlist::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open wordlist " + path.string());
  Wordlist list;
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) list.words.push_back(std::move(line));
  }
  return list;
}

std::string Wordlist::describe() const { return "wordlist of " + std::to_string(words.size()) + " entries"; }

BigCount space_size(const Wordlist& list) { return BigCount(list.words.size()); }

}  // namespace cfslab
