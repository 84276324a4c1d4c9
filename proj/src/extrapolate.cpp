#include "cfslab/attack/extrapolate.hpp"

#include <stdexcept>

namespace cfslab {

nlohmann::json Extrapolation::to_json() const {
  return {{"space", space},      {"size", size.str()},   {"throughput", throughput},
          {"seconds", seconds},  {"hours", hours()},     {"years", years()}};
}

double projected_seconds(const BigCount& size, double throughput) {
  if (!(throughput > 0)) throw std::invalid_argument("throughput must be positive");
  return size.convert_to<double>() / throughput;
}

Extrapolation extrapolate(const PasswordSpace& space, double throughput) {
  Extrapolation e;
  e.space = space.describe();
  e.size = space_size(space);
  e.throughput = throughput;
  e.seconds = projected_seconds(e.size, throughput);
  return e;
}

double required_throughput(const BigCount& size, double seconds) {
  if (!(seconds > 0)) throw std::invalid_argument("duration must be positive");
  return size.convert_to<double>() / seconds;
}

std::vector<PasswordSpace> reference_spaces() {
  const auto printable = printable_ascii();
  return {PasswordSpace::legacy(6), PasswordSpace::legacy(8), PasswordSpace{printable, 12, 12, false, {}},
          PasswordSpace{printable, 14, 14, false, {}}};
}

}  // namespace cfslab
