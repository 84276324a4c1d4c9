#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "cfslab/attack/password_space.hpp"

namespace cfslab {

inline constexpr double kSecondsPerHour = 3600.0;
inline constexpr double kSecondsPerYear = 365.25 * 24 * 3600.0;

struct Extrapolation {
  std::string space;
  BigCount size;
  double throughput = 0;  // guesses per second
  double seconds = 0;

  double hours() const noexcept { return seconds / kSecondsPerHour; }
  double years() const noexcept { return seconds / kSecondsPerYear; }
  nlohmann::json to_json() const;
};

// size / throughput. Throws std::invalid_argument unless throughput > 0.
double projected_seconds(const BigCount& size, double throughput);

Extrapolation extrapolate(const PasswordSpace& space, double throughput);

// Guesses per second needed to exhaust `size` in `seconds`.
double required_throughput(const BigCount& size, double seconds);

// Legacy 6 and 8 character minimums, and random 12 and 14 character
// printable passwords.
std::vector<PasswordSpace> reference_spaces();

}  // namespace cfslab
