#pragma once

#include "cfslab/bytes.hpp"
#include "cfslab/runtime/messages.hpp"

namespace cfslab {

class Server;

// Request/response channel carrying complete frames.
class Transport {
 public:
  virtual ~Transport() = default;
  virtual Bytes exchange(ByteView request_frame) = 0;
};

// Hands frames straight to an in-process server.
class LoopbackTransport final : public Transport {
 public:
  explicit LoopbackTransport(Server& server) : server_(server) {}
  Bytes exchange(ByteView request_frame) override;

 private:
  Server& server_;
};

// Encodes, exchanges, decodes. Returns the reply body; a failure reply is
// rethrown as the Error subclass named by its kind.
nlohmann::json call(Transport& transport, const Message& request);

}  // namespace cfslab
