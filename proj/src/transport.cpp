#include "cfslab/protocol/transport.hpp"

#include "cfslab/errors.hpp"
#include "cfslab/protocol/server.hpp"
#include "cfslab/runtime/framing.hpp"

namespace cfslab {

Bytes LoopbackTransport::exchange(ByteView request_frame) { return server_.handle_frame(request_frame); }

nlohmann::json call(Transport& transport, const Message& request) {
  auto reply_frame = transport.exchange(frame_encode(request));
  auto message = frame_decode(reply_frame);
  auto* reply = std::get_if<Reply>(&message);
  if (!reply) throw ProtocolError("expected a reply, got '" + std::string(op_name(message)) + "'");
  if (!reply->ok) throw_error_by_kind(reply->error, reply->message);
  return reply->body;
}

}  // namespace cfslab
