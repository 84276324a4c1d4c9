#include "cfslab/protocol/server.hpp"

#include <chrono>
#include <cstdlib>

#include "body_fields.hpp"
#include "cfslab/crypto/legacy_cipher.hpp"
#include "cfslab/errors.hpp"

namespace cfslab {

using nlohmann::json;

std::int64_t unix_now() {
  return std::chrono::duration_cast<std::chrono::seconds>(std::chrono::system_clock::now().time_since_epoch()).count();
}

namespace {

json unwrap(const Reply& reply) {
  if (!reply.ok) throw_error_by_kind(reply.error, reply.message);
  return reply.body;
}

void check_hardened_header(const HardenedHeader& h) {
  if (h.version != HardenedHeader::kVersion) throw ProtocolError("unsupported header version");
  if (h.kdf_iterations < kKdfIterationFloor) throw ProtocolError("header declares too few KDF iterations");
}

}  // namespace

Server::Server(std::filesystem::path root, RandomSource& rng, ServerOptions options)
    : store_(root), transcript_(root / "transcript.jsonl"), rng_(rng), options_(std::move(options)) {}

Bytes Server::handle_frame(ByteView frame) {
  Message request;
  try {
    request = frame_decode(frame);
  } catch (const FrameError& e) {
    return frame_encode(Reply::failure(e.kind(), e.what()));
  }
  return frame_encode(handle(request));
}

Reply Server::handle(const Message& request) {
  if (std::holds_alternative<Reply>(request)) return Reply::failure("protocol", "server does not accept replies");
  transcript_.append(std::string(op_name(request)), to_json(request));
  try {
    return dispatch(request);
  } catch (const Error& e) {
    return Reply::failure(e.kind(), e.what());
  } catch (const std::exception& e) {
    return Reply::failure("error", e.what());
  }
}

Reply Server::dispatch(const Message& request) {
  if (auto* r = std::get_if<StoreRequest>(&request)) return on_store(*r);
  if (auto* r = std::get_if<FetchRequest>(&request)) return on_fetch(*r);
  if (auto* r = std::get_if<ShareRequest>(&request)) return on_share(*r);
  if (auto* r = std::get_if<AccessRequest>(&request)) return on_access(*r);
  if (auto* r = std::get_if<HStoreRequest>(&request)) return on_hstore(*r);
  if (auto* r = std::get_if<HFetchRequest>(&request)) return on_hfetch(*r);
  if (auto* r = std::get_if<HShareUploadRequest>(&request)) return on_hshare_upload(*r);
  if (auto* r = std::get_if<HAccessRequest>(&request)) return on_haccess(*r);
  throw ProtocolError("unsupported request");
}

Guid Server::fresh_guid() {
  std::lock_guard lock(guid_mutex_);
  for (;;) {
    auto g = Guid::generate(rng_);
    if (issued_.contains(g) || store_.contains(g)) continue;
    issued_.insert(g);
    return g;
  }
}

void Server::check_access(const Address& address, std::int64_t timestamp, ByteView signature) const {
  const std::int64_t skew = now() - timestamp;
  if (skew > options_.freshness_window || skew < -options_.freshness_window) {
    throw AuthError("stale timestamp: " + std::to_string(skew) + " s outside the " +
                    std::to_string(options_.freshness_window) + " s window");
  }
  if (!verify_timestamp_sig(address, timestamp, signature)) {
    throw AuthError("signature does not recover the share address");
  }
}

Reply Server::on_store(const StoreRequest& req) {
  CipherBlob blob(req.ciphertext);
  if (sha256_digest(blob.bytes()) != req.sha256) throw IntegrityError("sha256 does not match the uploaded ciphertext");
  StoredObject obj{fresh_guid(), std::move(blob), req.sha256};
  store_.persist_object(obj);
  return Reply::success({{"guid", obj.guid.str()}});
}

Reply Server::on_fetch(const FetchRequest& req) {
  auto obj = store_.load_object(req.guid);
  return Reply::success({{"ciphertext", to_base64(obj.ciphertext.bytes())}, {"sha256", obj.sha256.hex()}});
}

// The server is handed the storage password, decrypts the stored file with
// it, and treats valid padding as proof that the password is right.
Reply Server::on_share(const ShareRequest& req) {
  auto source = store_.load_object(req.source_guid);
  ++password_uses_;
  LegacyKey key;
  try {
    key = derive_legacy_key(req.original_password);
  } catch (const KeyLengthError&) {
    throw InvalidPasswordError("original password rejected");
  }
  if (!check_padding_only(source.ciphertext, key)) throw InvalidPasswordError("original password rejected");
  auto plaintext = decrypt_legacy(source.ciphertext, key);
  auto share_key = derive_legacy_key(req.sharing_password);

  ShareRecord rec{fresh_guid(), req.source_guid, encrypt_legacy(plaintext, share_key), req.address, now()};
  store_.persist_share(rec);
  return Reply::success({{"share_guid", rec.share_guid.str()}});
}

Reply Server::on_access(const AccessRequest& req) {
  auto rec = store_.load_share(req.share_guid);
  check_access(rec.address, req.timestamp, req.signature);
  return Reply::success({{"ciphertext", to_base64(rec.share_ciphertext.bytes())}});
}

Reply Server::on_hstore(const HStoreRequest& req) {
  check_hardened_header(req.header);
  CipherBlob blob(req.ciphertext);
  if (hardened_object_digest(req.header, blob.bytes()) != req.sha256)
    throw IntegrityError("sha256 does not match the uploaded header and ciphertext");
  HardenedStoredObject obj{fresh_guid(), req.header, std::move(blob), req.sha256};
  store_.persist_hardened(obj);
  return Reply::success({{"guid", obj.guid.str()}});
}

Reply Server::on_hfetch(const HFetchRequest& req) {
  auto obj = store_.load_hardened(req.guid);
  return Reply::success({{"header", header_to_json(obj.header)},
                         {"ciphertext", to_base64(obj.ciphertext.bytes())},
                         {"sha256", obj.sha256.hex()}});
}

Reply Server::on_hshare_upload(const HShareUploadRequest& req) {
  check_hardened_header(req.header);
  CipherBlob blob(req.ciphertext);
  if (hardened_object_digest(req.header, blob.bytes()) != req.sha256)
    throw IntegrityError("sha256 does not match the uploaded header and ciphertext");
  HardenedShareRecord rec{fresh_guid(), req.header, std::move(blob), req.sha256, req.address, now()};
  store_.persist_hardened_share(rec);
  return Reply::success({{"share_guid", rec.share_guid.str()}});
}

Reply Server::on_haccess(const HAccessRequest& req) {
  auto rec = store_.load_hardened_share(req.share_guid);
  check_access(rec.address, req.timestamp, req.signature);
  return Reply::success({{"header", header_to_json(rec.header)}, {"ciphertext", to_base64(rec.ciphertext.bytes())}});
}

Guid Server::handle_store(const StoreRequest& req) { return body::guid(unwrap(handle(req)), "guid"); }

StoredObject Server::handle_fetch(const FetchRequest& req) {
  auto b = unwrap(handle(req));
  return {req.guid, body::blob(b, "ciphertext"), body::digest(b, "sha256")};
}

Guid Server::handle_share(const ShareRequest& req) { return body::guid(unwrap(handle(req)), "share_guid"); }

CipherBlob Server::handle_access(const AccessRequest& req) { return body::blob(unwrap(handle(req)), "ciphertext"); }

}  // namespace cfslab
