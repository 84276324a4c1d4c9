#pragma once

#include <string>
#include <string_view>

namespace cfslab {

// The special-character set the legacy service demands at least one of.
inline constexpr std::string_view kLegacySpecials = "!@#$%^&*";

// Printable ASCII without space: 0x21..0x7E, 94 characters.
std::string printable_ascii();

// Expands a '+'-joined list of named classes into an ordered, de-duplicated
// character set. Names: lower, upper, digits, special (the 8 legacy
// specials), symbols (all ASCII punctuation), printable. A token that is not a
// class name is taken literally, e.g. "abc+special".
std::string charset_from_spec(std::string_view spec);

}  // namespace cfslab
