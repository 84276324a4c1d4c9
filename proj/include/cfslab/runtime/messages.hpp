#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include <json.hpp>

#include "cfslab/bytes.hpp"
#include "cfslab/crypto/hardened_cipher.hpp"
#include "cfslab/crypto/hash.hpp"
#include "cfslab/crypto/secp256k1.hpp"
#include "cfslab/runtime/guid.hpp"

namespace cfslab {

// Wire messages. Byte fields travel as base64, digests, addresses,
// signatures and header salt/iv as hex.

struct StoreRequest {
  Bytes ciphertext;
  Sha256Digest sha256;
  friend bool operator==(const StoreRequest&, const StoreRequest&) = default;
};

struct FetchRequest {
  Guid guid;
  friend bool operator==(const FetchRequest&, const FetchRequest&) = default;
};

// Carries both passwords in clear: the legacy share flow really does this.
struct ShareRequest {
  Guid source_guid;
  std::string original_password;
  std::string sharing_password;
  Address address;
  friend bool operator==(const ShareRequest&, const ShareRequest&) = default;
};

struct AccessRequest {
  Guid share_guid;
  std::int64_t timestamp = 0;
  Bytes signature;
  friend bool operator==(const AccessRequest&, const AccessRequest&) = default;
};

struct HStoreRequest {
  HardenedHeader header;
  Bytes ciphertext;
  Sha256Digest sha256;
  friend bool operator==(const HStoreRequest&, const HStoreRequest&) = default;
};

struct HFetchRequest {
  Guid guid;
  friend bool operator==(const HFetchRequest&, const HFetchRequest&) = default;
};

struct HShareUploadRequest {
  HardenedHeader header;
  Bytes ciphertext;
  Sha256Digest sha256;
  Address address;
  friend bool operator==(const HShareUploadRequest&, const HShareUploadRequest&) = default;
};

struct HAccessRequest {
  Guid share_guid;
  std::int64_t timestamp = 0;
  Bytes signature;
  friend bool operator==(const HAccessRequest&, const HAccessRequest&) = default;
};

// Server answer to any request. On failure `error` holds the Error::kind()
// tag of what the server raised.
struct Reply {
  bool ok = true;
  std::string error;
  std::string message;
  nlohmann::json body = nlohmann::json::object();

  static Reply success(nlohmann::json body) { return {true, {}, {}, std::move(body)}; }
  static Reply failure(std::string kind, std::string message) {
    return {false, std::move(kind), std::move(message), nlohmann::json::object()};
  }
  friend bool operator==(const Reply&, const Reply&) = default;
};

using Message = std::variant<StoreRequest, FetchRequest, ShareRequest, AccessRequest, HStoreRequest, HFetchRequest,
                             HShareUploadRequest, HAccessRequest, Reply>;

// "store", "fetch", "share", "access", "hstore", "hfetch", "hshare_upload",
// "haccess" or "reply".
std::string_view op_name(const Message& m) noexcept;

nlohmann::json to_json(const Message& m);

// Throws FrameError for an unknown op, a missing field, or a field of the
// wrong type or encoding.
Message message_from_json(const nlohmann::json& j);

nlohmann::json header_to_json(const HardenedHeader& h);
HardenedHeader header_from_json(const nlohmann::json& j);

}  // namespace cfslab
