#include "cfslab/runtime/transcript.hpp"

#include "cfslab/errors.hpp"

namespace cfslab {

using nlohmann::json;

bool json_contains(const json& value, std::string_view needle) {
  if (needle.empty()) return false;
  switch (value.type()) {
    case json::value_t::string:
      return value.get_ref<const std::string&>().find(needle) != std::string::npos;
    case json::value_t::number_integer:
    case json::value_t::number_unsigned:
    case json::value_t::number_float:
      return value.dump().find(needle) != std::string::npos;
    case json::value_t::object:
      for (const auto& [key, item] : value.items()) {
        if (json_contains(item, needle)) return true;
      }
      return false;
    case json::value_t::array:
      for (const auto& item : value) {
        if (json_contains(item, needle)) return true;
      }
      return false;
    default:
      return false;
  }
}

std::vector<TranscriptEntry> Transcript::read_file(const std::filesystem::path& file) {
  std::vector<TranscriptEntry> out;
  std::ifstream in(file);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) throw Error("corrupted transcript line in " + file.string());
    out.push_back({j.at("arrival_index").get<std::uint64_t>(), j.at("op").get<std::string>(), j.at("raw_fields")});
  }
  return out;
}

Transcript::Transcript(std::filesystem::path file) {
  if (std::filesystem::exists(file)) entries_ = read_file(file);
  sink_.emplace(file, std::ios::app);
  if (!*sink_) throw Error("cannot open transcript " + file.string());
}

std::uint64_t Transcript::append(std::string op, json raw_fields) {
  std::lock_guard lock(mutex_);
  const std::uint64_t index = entries_.empty() ? 0 : entries_.back().arrival_index + 1;
  if (sink_) {
    json line = {{"arrival_index", index}, {"op", op}, {"raw_fields", raw_fields}};
    *sink_ << line.dump() << '\n';
    sink_->flush();
  }
  entries_.push_back({index, std::move(op), std::move(raw_fields)});
  return index;
}

std::vector<TranscriptEntry> Transcript::entries() const {
  std::lock_guard lock(mutex_);
  return entries_;
}

std::size_t Transcript::size() const {
  std::lock_guard lock(mutex_);
  return entries_.size();
}

std::vector<TranscriptEntry> Transcript::grep(std::string_view needle) const {
  std::lock_guard lock(mutex_);
  std::vector<TranscriptEntry> out;
  for (const auto& e : entries_) {
    if (json_contains(e.raw_fields, needle)) out.push_back(e);
  }
  return out;
}

}  // namespace cfslab
