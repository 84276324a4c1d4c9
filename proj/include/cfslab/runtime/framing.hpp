#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include "cfslab/bytes.hpp"
#include "cfslab/runtime/messages.hpp"

namespace cfslab {

// Frame = 4-byte big-endian payload length + UTF-8 JSON object payload.
inline constexpr std::size_t kFrameHeaderSize = 4;
inline constexpr std::size_t kMaxFramePayload = 64u * 1024 * 1024;

// Throws FrameError if the payload would exceed kMaxFramePayload.
Bytes frame_encode(const Message& message);

// Exactly one complete frame. Throws FrameError on truncation, trailing
// bytes, an over-length header, invalid JSON or an invalid message.
Message frame_decode(ByteView frame);

// Payload length announced by a frame header; FrameError above the limit.
std::size_t frame_payload_length(ByteView header);

// Incremental decoder for a byte stream of concatenated frames. After a
// FrameError the stream is unusable; the connection is expected to be
// dropped.
class FrameReader {
 public:
  void feed(ByteView bytes);

  // Next complete message, or nullopt if more bytes are needed.
  std::optional<Message> next();

  std::size_t buffered() const noexcept { return buffer_.size() - offset_; }

 private:
  Bytes buffer_;
  std::size_t offset_ = 0;
};

}  // namespace cfslab
