#include "cfslab/protocol/hardened_client.hpp"

#include "body_fields.hpp"
#include "cfslab/errors.hpp"
#include "cfslab/runtime/records.hpp"

namespace cfslab {

ShareKeypair derive_hardened_share_keypair(std::string_view sharing_password) {
  return derive_share_keypair(sharing_password, kHardenedShareContext);
}

void HardenedClient::require_strength(std::string_view password, const char* which) const {
  if (auto v = password_strength_check(password, options_.policy); !v.empty()) {
    throw PolicyError(std::string(which) + " rejected: " + describe(v));
  }
}

Guid HardenedClient::store(ByteView plaintext, std::string_view password) {
  auto sealed = encrypt_hardened(plaintext, password, rng_, options_.kdf_iterations, options_.policy);
  auto digest = hardened_object_digest(sealed.header, sealed.blob.bytes());
  return body::guid(call(transport_, HStoreRequest{sealed.header, sealed.blob.bytes(), digest}), "guid");
}

Bytes HardenedClient::fetch(const Guid& guid, std::string_view password) {
  auto b = call(transport_, HFetchRequest{guid});
  auto header = body::header(b, "header");
  auto blob = body::blob(b, "ciphertext");
  if (hardened_object_digest(header, blob.bytes()) != body::digest(b, "sha256"))
    throw IntegrityError("server returned an object that does not match its digest");
  return decrypt_hardened(header, blob, password);
}

Guid HardenedClient::share(const Guid& source_guid, std::string_view original_password,
                           std::string_view sharing_password) {
  require_strength(original_password, "original password");
  require_strength(sharing_password, "sharing password");
  auto plaintext = fetch(source_guid, original_password);
  auto sealed = encrypt_hardened(plaintext, sharing_password, rng_, options_.kdf_iterations, options_.policy);
  auto keypair = derive_hardened_share_keypair(sharing_password);
  HShareUploadRequest req{sealed.header, sealed.blob.bytes(), hardened_object_digest(sealed.header, sealed.blob.bytes()),
                          keypair.address};
  return body::guid(call(transport_, req), "share_guid");
}

Bytes HardenedClient::access(const Guid& share_guid, std::string_view sharing_password, std::int64_t now) {
  auto keypair = derive_hardened_share_keypair(sharing_password);
  auto sig = sign_timestamp(keypair, now).serialize();
  auto b = call(transport_, HAccessRequest{share_guid, now, Bytes(sig.begin(), sig.end())});
  return decrypt_hardened(body::header(b, "header"), body::blob(b, "ciphertext"), sharing_password);
}

}  // namespace cfslab
