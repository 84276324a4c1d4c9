#include "cfslab/protocol/legacy_client.hpp"

#include "body_fields.hpp"
#include "cfslab/crypto/hash.hpp"
#include "cfslab/crypto/legacy_cipher.hpp"
#include "cfslab/crypto/secp256k1.hpp"
#include "cfslab/errors.hpp"

namespace cfslab {

void LegacyClient::require_policy(std::string_view password, const char* which) const {
  if (auto v = validate_password(password, policy_); !v.empty()) {
    throw PolicyError(std::string(which) + " rejected: " + describe(v));
  }
}

Guid LegacyClient::store(ByteView plaintext, std::string_view password) {
  require_policy(password, "password");
  auto blob = encrypt_legacy(plaintext, derive_legacy_key(password));
  auto digest = sha256_digest(blob.bytes());
  return body::guid(call(transport_, StoreRequest{blob.bytes(), digest}), "guid");
}

Bytes LegacyClient::fetch(const Guid& guid, std::string_view password) {
  auto b = call(transport_, FetchRequest{guid});
  auto blob = body::blob(b, "ciphertext");
  return decrypt_legacy(blob, derive_legacy_key(password));
}

Guid LegacyClient::share(const Guid& source_guid, std::string_view original_password,
                         std::string_view sharing_password) {
  require_policy(original_password, "original password");
  require_policy(sharing_password, "sharing password");
  auto keypair = derive_share_keypair(sharing_password);
  ShareRequest req{source_guid, std::string(original_password), std::string(sharing_password), keypair.address};
  return body::guid(call(transport_, req), "share_guid");
}

Bytes LegacyClient::access_shared(const Guid& share_guid, std::string_view sharing_password, std::int64_t now) {
  auto keypair = derive_share_keypair(sharing_password);
  auto sig = sign_timestamp(keypair, now).serialize();
  auto b = call(transport_, AccessRequest{share_guid, now, Bytes(sig.begin(), sig.end())});
  return decrypt_legacy(body::blob(b, "ciphertext"), derive_legacy_key(sharing_password));
}

}  // namespace cfslab
