#include "cfslab/runtime/framing.hpp"

#include "cfslab/errors.hpp"

namespace cfslab {

namespace {

Message decode_payload(ByteView payload) {
  auto j = nlohmann::json::parse(payload.begin(), payload.end(), nullptr, false);
  if (j.is_discarded()) throw FrameError("frame payload is not valid JSON");
  return message_from_json(j);
}

}  // namespace

Bytes frame_encode(const Message& message) {
  const std::string payload = to_json(message).dump();
  if (payload.size() > kMaxFramePayload) {
    throw FrameError("payload of " + std::to_string(payload.size()) + " bytes exceeds the 64 MiB frame limit");
  }
  const auto n = static_cast<std::uint32_t>(payload.size());
  Bytes out;
  out.reserve(kFrameHeaderSize + payload.size());
  out.push_back(static_cast<std::uint8_t>(n >> 24));
  out.push_back(static_cast<std::uint8_t>(n >> 16));
  out.push_back(static_cast<std::uint8_t>(n >> 8));
  out.push_back(static_cast<std::uint8_t>(n));
  out.insert(out.end(), payload.begin(), payload.end());
  return out;
}

std::size_t frame_payload_length(ByteView header) {
  if (header.size() < kFrameHeaderSize) throw FrameError("truncated frame header");
  const std::size_t n = (std::size_t{header[0]} << 24) | (std::size_t{header[1]} << 16) |
                        (std::size_t{header[2]} << 8) | std::size_t{header[3]};
  if (n > kMaxFramePayload) throw FrameError("announced payload of " + std::to_string(n) + " bytes exceeds limit");
  return n;
}

Message frame_decode(ByteView frame) {
  const std::size_t n = frame_payload_length(frame);
  if (frame.size() < kFrameHeaderSize + n) throw FrameError("truncated frame");
  if (frame.size() > kFrameHeaderSize + n) throw FrameError("trailing bytes after frame");
  return decode_payload(frame.subspan(kFrameHeaderSize));
}

void FrameReader::feed(ByteView bytes) {
  if (offset_ > 0 && offset_ == buffer_.size()) {
    buffer_.clear();
    offset_ = 0;
  }
  buffer_.insert(buffer_.end(), bytes.begin(), bytes.end());
}

std::optional<Message> FrameReader::next() {
  ByteView pending = ByteView(buffer_).subspan(offset_);
  if (pending.size() < kFrameHeaderSize) return std::nullopt;
  const std::size_t n = frame_payload_length(pending);
  if (pending.size() < kFrameHeaderSize + n) return std::nullopt;
  auto message = decode_payload(pending.subspan(kFrameHeaderSize, n));
  offset_ += kFrameHeaderSize + n;
  return message;
}

}  // namespace cfslab
