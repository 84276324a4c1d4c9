#pragma once

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <mutex>
#include <unordered_set>

#include "cfslab/random.hpp"
#include "cfslab/runtime/blob_store.hpp"
#include "cfslab/runtime/framing.hpp"
#include "cfslab/runtime/messages.hpp"
#include "cfslab/runtime/transcript.hpp"

namespace cfslab {

inline constexpr std::int64_t kDefaultFreshnessWindow = 300;

std::int64_t unix_now();

struct ServerOptions {
  std::int64_t freshness_window = kDefaultFreshnessWindow;
  std::function<std::int64_t()> clock = unix_now;
};

// The storage service, legacy and hardened endpoints side by side.
//
// Every decoded request is appended to the transcript before it is handled,
// so the transcript is exactly what an operator of the service observes.
// Only the legacy `share` endpoint ever touches password material.
class Server {
 public:
  explicit Server(std::filesystem::path root, RandomSource& rng = system_random(), ServerOptions options = {});

  // Full wire path: decode, record, dispatch, encode. A frame that fails to
  // decode is answered with an error reply and not recorded.
  Bytes handle_frame(ByteView frame);

  // Records the request, then dispatches. Errors become failure replies.
  Reply handle(const Message& request);

  // Typed conveniences over handle(); failure replies are rethrown as the
  // matching Error subclass.
  Guid handle_store(const StoreRequest& req);
  StoredObject handle_fetch(const FetchRequest& req);
  Guid handle_share(const ShareRequest& req);
  CipherBlob handle_access(const AccessRequest& req);

  Transcript& transcript() noexcept { return transcript_; }
  const Transcript& transcript() const noexcept { return transcript_; }
  BlobStore& store() noexcept { return store_; }

  // Number of times the server derived a key from a client password.
  std::uint64_t password_uses() const noexcept { return password_uses_.load(); }

  std::int64_t now() const { return options_.clock(); }

 private:
  Reply dispatch(const Message& request);

  Reply on_store(const StoreRequest& req);
  Reply on_fetch(const FetchRequest& req);
  Reply on_share(const ShareRequest& req);
  Reply on_access(const AccessRequest& req);
  Reply on_hstore(const HStoreRequest& req);
  Reply on_hfetch(const HFetchRequest& req);
  Reply on_hshare_upload(const HShareUploadRequest& req);
  Reply on_haccess(const HAccessRequest& req);

  Guid fresh_guid();
  void check_access(const Address& address, std::int64_t timestamp, ByteView signature) const;

  BlobStore store_;
  Transcript transcript_;
  RandomSource& rng_;
  ServerOptions options_;

  std::mutex guid_mutex_;
  std::unordered_set<Guid> issued_;
  std::atomic<std::uint64_t> password_uses_{0};
};

}  // namespace cfslab
