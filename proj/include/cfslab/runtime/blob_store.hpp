#pragma once

#include <filesystem>
#include <shared_mutex>
#include <vector>

#include "cfslab/runtime/records.hpp"

namespace cfslab {

// Directory-backed object store.
//
//   <root>/<guid>.blob          ciphertext bytes
//   <root>/<guid>.meta.json     kind, sha256, header (hardened)
//   <root>/shares/<guid>.blob   share ciphertext
//   <root>/shares/<guid>.meta.json
//
// Each file is written to a temporary name and renamed into place, blob
// before metadata; an object exists once its metadata does. Every load
// recomputes the digest and throws IntegrityError on mismatch, NotFoundError
// for an unknown guid. Writers are serialised, readers run concurrently.
class BlobStore {
 public:
  explicit BlobStore(std::filesystem::path root);

  const std::filesystem::path& root() const noexcept { return root_; }

  void persist_object(const StoredObject& obj);
  StoredObject load_object(const Guid& guid) const;

  void persist_hardened(const HardenedStoredObject& obj);
  HardenedStoredObject load_hardened(const Guid& guid) const;

  void persist_share(const ShareRecord& rec);
  ShareRecord load_share(const Guid& share_guid) const;

  void persist_hardened_share(const HardenedShareRecord& rec);
  HardenedShareRecord load_hardened_share(const Guid& share_guid) const;

  // True if the guid names any object or share.
  bool contains(const Guid& guid) const;

  // Guids of stored legacy objects, sorted.
  std::vector<Guid> list_objects() const;

  std::filesystem::path blob_path(const Guid& guid) const;
  std::filesystem::path share_blob_path(const Guid& guid) const;

 private:
  std::filesystem::path root_;
  std::filesystem::path shares_;
  mutable std::shared_mutex mutex_;
};

}  // namespace cfslab
