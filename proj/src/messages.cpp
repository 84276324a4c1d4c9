#include "cfslab/runtime/messages.hpp"

#include "cfslab/errors.hpp"

namespace cfslab {

using nlohmann::json;

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

const json& field(const json& j, const char* name) {
  auto it = j.find(name);
  if (it == j.end()) throw FrameError(std::string("missing field '") + name + "'");
  return *it;
}

std::string string_field(const json& j, const char* name) {
  const auto& v = field(j, name);
  if (!v.is_string()) throw FrameError(std::string("field '") + name + "' must be a string");
  return v.get<std::string>();
}

std::int64_t int_field(const json& j, const char* name) {
  const auto& v = field(j, name);
  if (!v.is_number_integer()) throw FrameError(std::string("field '") + name + "' must be an integer");
  return v.get<std::int64_t>();
}

// Decoding helpers translate any encoding failure into FrameError.
template <typename F>
auto decode_as(const char* name, F&& f) {
  try {
    return f();
  } catch (const FrameError&) {
    throw;
  } catch (const std::exception& e) {
    throw FrameError(std::string("field '") + name + "': " + e.what());
  }
}

Guid guid_field(const json& j, const char* name) {
  auto g = Guid::parse(string_field(j, name));
  if (!g) throw FrameError(std::string("field '") + name + "' is not a canonical guid");
  return *g;
}

Bytes base64_field(const json& j, const char* name) {
  auto s = string_field(j, name);
  return decode_as(name, [&] { return from_base64(s); });
}

Bytes hex_field(const json& j, const char* name) {
  auto s = string_field(j, name);
  return decode_as(name, [&] { return from_hex(s); });
}

Sha256Digest digest_field(const json& j, const char* name) {
  auto s = string_field(j, name);
  return decode_as(name, [&] { return Sha256Digest::from_hex(s); });
}

Address address_field(const json& j, const char* name) {
  auto s = string_field(j, name);
  return decode_as(name, [&] { return Address::from_hex(s); });
}

}  // namespace

json header_to_json(const HardenedHeader& h) {
  return {{"version", h.version}, {"salt", to_hex(h.salt)}, {"iv", to_hex(h.iv)}, {"kdf_iterations", h.kdf_iterations}};
}

HardenedHeader header_from_json(const json& j) {
  if (!j.is_object()) throw FrameError("header must be an object");
  HardenedHeader h;
  auto version = int_field(j, "version");
  auto iterations = int_field(j, "kdf_iterations");
  if (version < 0 || version > UINT32_MAX || iterations < 0 || iterations > UINT32_MAX)
    throw FrameError("header integer out of range");
  h.version = static_cast<std::uint32_t>(version);
  h.kdf_iterations = static_cast<std::uint32_t>(iterations);
  auto salt = string_field(j, "salt");
  auto iv = string_field(j, "iv");
  h.salt = decode_as("salt", [&] { return fixed_from_hex<16>(salt); });
  h.iv = decode_as("iv", [&] { return fixed_from_hex<16>(iv); });
  return h;
}

std::string_view op_name(const Message& m) noexcept {
  return std::visit(overloaded{
                        [](const StoreRequest&) { return std::string_view("store"); },
                        [](const FetchRequest&) { return std::string_view("fetch"); },
                        [](const ShareRequest&) { return std::string_view("share"); },
                        [](const AccessRequest&) { return std::string_view("access"); },
                        [](const HStoreRequest&) { return std::string_view("hstore"); },
                        [](const HFetchRequest&) { return std::string_view("hfetch"); },
                        [](const HShareUploadRequest&) { return std::string_view("hshare_upload"); },
                        [](const HAccessRequest&) { return std::string_view("haccess"); },
                        [](const Reply&) { return std::string_view("reply"); },
                    },
                    m);
}

json to_json(const Message& m) {
  json j = std::visit(
      overloaded{
          [](const StoreRequest& r) -> json {
            return {{"ciphertext", to_base64(r.ciphertext)}, {"sha256", r.sha256.hex()}};
          },
          [](const FetchRequest& r) -> json { return {{"guid", r.guid.str()}}; },
          [](const ShareRequest& r) -> json {
            return {{"source_guid", r.source_guid.str()},
                    {"original_password", r.original_password},
                    {"sharing_password", r.sharing_password},
                    {"address", r.address.hex()}};
          },
          [](const AccessRequest& r) -> json {
            return {{"share_guid", r.share_guid.str()}, {"timestamp", r.timestamp}, {"signature", to_hex(r.signature)}};
          },
          [](const HStoreRequest& r) -> json {
            return {{"header", header_to_json(r.header)},
                    {"ciphertext", to_base64(r.ciphertext)},
                    {"sha256", r.sha256.hex()}};
          },
          [](const HFetchRequest& r) -> json { return {{"guid", r.guid.str()}}; },
          [](const HShareUploadRequest& r) -> json {
            return {{"header", header_to_json(r.header)},
                    {"ciphertext", to_base64(r.ciphertext)},
                    {"sha256", r.sha256.hex()},
                    {"address", r.address.hex()}};
          },
          [](const HAccessRequest& r) -> json {
            return {{"share_guid", r.share_guid.str()}, {"timestamp", r.timestamp}, {"signature", to_hex(r.signature)}};
          },
          [](const Reply& r) -> json {
            json out = {{"ok", r.ok}, {"body", r.body}};
            if (!r.ok) {
              out["error"] = r.error;
              out["message"] = r.message;
            }
            return out;
          },
      },
      m);
  j["op"] = op_name(m);
  return j;
}

Message message_from_json(const json& j) {
  if (!j.is_object()) throw FrameError("payload is not a JSON object");
  const auto op = string_field(j, "op");
  if (op == "store") return StoreRequest{base64_field(j, "ciphertext"), digest_field(j, "sha256")};
  if (op == "fetch") return FetchRequest{guid_field(j, "guid")};
  if (op == "share") {
    return ShareRequest{guid_field(j, "source_guid"), string_field(j, "original_password"),
                        string_field(j, "sharing_password"), address_field(j, "address")};
  }
  if (op == "access") {
    return AccessRequest{guid_field(j, "share_guid"), int_field(j, "timestamp"), hex_field(j, "signature")};
  }
  if (op == "hstore") {
    return HStoreRequest{header_from_json(field(j, "header")), base64_field(j, "ciphertext"),
                         digest_field(j, "sha256")};
  }
  if (op == "hfetch") return HFetchRequest{guid_field(j, "guid")};
  if (op == "hshare_upload") {
    return HShareUploadRequest{header_from_json(field(j, "header")), base64_field(j, "ciphertext"),
                               digest_field(j, "sha256"), address_field(j, "address")};
  }
  if (op == "haccess") {
    return HAccessRequest{guid_field(j, "share_guid"), int_field(j, "timestamp"), hex_field(j, "signature")};
  }
  if (op == "reply") {
    const auto& ok = field(j, "ok");
    if (!ok.is_boolean()) throw FrameError("field 'ok' must be a boolean");
    const auto& body = field(j, "body");
    if (!body.is_object()) throw FrameError("field 'body' must be an object");
    Reply r{ok.get<bool>(), {}, {}, body};
    if (!r.ok) {
      r.error = string_field(j, "error");
      r.message = string_field(j, "message");
    }
    return r;
  }
  throw FrameError("unknown op '" + op + "'");
}

}  // namespace cfslab
