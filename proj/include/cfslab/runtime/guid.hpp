#pragma once

#include <compare>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

#include "cfslab/random.hpp"

namespace cfslab {

// 128-bit random identifier in canonical 8-4-4-4-12 lowercase hex form.
// Only parse()d or generate()d values exist, so the text is always safe to
// use as a file name.
class Guid {
 public:
  static Guid generate(RandomSource& rng);
  static std::optional<Guid> parse(std::string_view text);

  const std::string& str() const noexcept { return text_; }

  friend auto operator<=>(const Guid&, const Guid&) = default;

 private:
  explicit Guid(std::string text) : text_(std::move(text)) {}
  std::string text_;
};

}  // namespace cfslab

template <>
struct std::hash<cfslab::Guid> {
  std::size_t operator()(const cfslab::Guid& g) const noexcept { return std::hash<std::string>{}(g.str()); }
};
