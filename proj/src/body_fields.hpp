#pragma once

// Reply-body accessors shared by the clients and the server's typed helpers.
// Any shape problem in a server reply is a ProtocolError.

#include <string>

#include <json.hpp>

#include "cfslab/crypto/hardened_cipher.hpp"
#include "cfslab/crypto/hash.hpp"
#include "cfslab/errors.hpp"
#include "cfslab/runtime/guid.hpp"
#include "cfslab/runtime/messages.hpp"

namespace cfslab::body {

template <typename F>
auto parse(const char* name, F&& f) {
  try {
    return f();
  } catch (const std::exception& e) {
    throw ProtocolError(std::string("bad reply field '") + name + "': " + e.what());
  }
}

inline Guid guid(const nlohmann::json& b, const char* name) {
  return parse(name, [&] {
    auto g = Guid::parse(b.at(name).get<std::string>());
    if (!g) throw std::invalid_argument("not a guid");
    return *g;
  });
}

inline CipherBlob blob(const nlohmann::json& b, const char* name) {
  return parse(name, [&] { return CipherBlob(from_base64(b.at(name).get<std::string>())); });
}

inline Sha256Digest digest(const nlohmann::json& b, const char* name) {
  return parse(name, [&] { return Sha256Digest::from_hex(b.at(name).get<std::string>()); });
}

inline HardenedHeader header(const nlohmann::json& b, const char* name) {
  return parse(name, [&] { return header_from_json(b.at(name)); });
}

}  // namespace cfslab::body
