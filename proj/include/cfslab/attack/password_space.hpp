#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "cfslab/crypto/charset.hpp"

namespace cfslab {

using BigCount = boost::multiprecision::cpp_int;

// Half-open slice [begin, end) of `total` for worker `part` of `parts`.
// Slices are disjoint and cover the range.
std::pair<std::uint64_t, std::uint64_t> partition_range(std::uint64_t total, std::size_t part, std::size_t parts);

// All strings over `charset` with length in [length_min, length_max],
// optionally restricted to those containing at least one special character.
//
// Enumeration order: by length, then lexicographic by charset position with
// the first character most significant. Partitions slice the unrestricted
// index range, so they stay disjoint and covering once non-members are
// skipped.
struct PasswordSpace {
  std::string charset;
  std::size_t length_min = 1;
  std::size_t length_max = 1;
  bool require_special = false;
  std::string special_set{kLegacySpecials};

  // Printable ASCII, exactly `length` characters, one special required.
  static PasswordSpace legacy(std::size_t length);

  bool contains(std::string_view password) const;
  std::string describe() const;

  // Throws std::invalid_argument for an empty charset or inverted lengths.
  void validate() const;

  // Sum over lengths of |charset|^L; throws std::length_error above 2^64-1.
  std::uint64_t enumerable_total() const;

  // Visits every member in the slice; `visit(std::string_view)` returns
  // false to stop early. Returns the number of members visited.
  template <typename Visitor>
  std::uint64_t for_each_in_partition(std::size_t part, std::size_t parts, Visitor&& visit) const;
};

// |C|^L - |C \ S|^L summed over lengths (just |C|^L without the special
// requirement). Exact.
BigCount space_size(const PasswordSpace& space);

std::vector<std::string> enumerate_partition(const PasswordSpace& space, std::size_t part, std::size_t parts);

// Candidate list read from a file, one password per line. Trailing CR is
// stripped; empty lines are skipped.
struct Wordlist {
  std::vector<std::string> words;

  static Wordlist load(const std::filesystem::path& path);
  std::string describe() const;

  template <typename Visitor>
  std::uint64_t for_each_in_partition(std::size_t part, std::size_t parts, Visitor&& visit) const {
    auto [begin, end] = partition_range(words.size(), part, parts);
    std::uint64_t visited = 0;
    for (auto i = begin; i < end; ++i) {
      ++visited;
      if (!visit(std::string_view(words[i]))) break;
    }
    return visited;
  }
};

BigCount space_size(const Wordlist& list);

// --- implementation ----------------------------------------------------------

template <typename Visitor>
std::uint64_t PasswordSpace::for_each_in_partition(std::size_t part, std::size_t parts, Visitor&& visit) const {
  validate();
  auto [begin, end] = partition_range(enumerable_total(), part, parts);
  if (begin == end) return 0;

  const std::size_t base = charset.size();
  std::vector<std::uint8_t> special(base, 0);
  for (std::size_t i = 0; i < base; ++i) special[i] = special_set.find(charset[i]) != std::string::npos;

  // Locate the starting length and offset within it.
  std::size_t length = length_min;
  std::uint64_t offset = begin;
  for (;;) {
    std::uint64_t block = 1;
    for (std::size_t i = 0; i < length; ++i) block *= base;
    if (offset < block) break;
    offset -= block;
    ++length;
  }

  std::vector<std::size_t> digits(length, 0);
  std::string password(length, charset[0]);
  std::size_t specials = 0;
  for (std::size_t pos = length; pos-- > 0;) {
    digits[pos] = static_cast<std::size_t>(offset % base);
    offset /= base;
    password[pos] = charset[digits[pos]];
    specials += special[digits[pos]];
  }

  std::uint64_t visited = 0;
  for (std::uint64_t remaining = end - begin; remaining > 0; --remaining) {
    if (!require_special || specials > 0) {
      ++visited;
      if (!visit(std::string_view(password))) return visited;
    }
    // Odometer step; rolling over every digit moves to the next length.
    std::size_t pos = length;
    for (;;) {
      if (pos == 0) {
        ++length;
        digits.assign(length, 0);
        password.assign(length, charset[0]);
        specials = special[0] ? length : 0;
        break;
      }
      --pos;
      specials -= special[digits[pos]];
      if (++digits[pos] < base) {
        password[pos] = charset[digits[pos]];
        specials += special[digits[pos]];
        break;
      }
      digits[pos] = 0;
      password[pos] = charset[0];
      specials += special[0];
    }
  }
  return visited;
}

}  // namespace cfslab
