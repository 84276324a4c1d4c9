#pragma once

#include <cstdint>

#include "cfslab/crypto/hardened_cipher.hpp"
#include "cfslab/crypto/hash.hpp"
#include "cfslab/crypto/legacy_cipher.hpp"
#include "cfslab/crypto/secp256k1.hpp"
#include "cfslab/runtime/guid.hpp"

namespace cfslab {

// Server-side persistence records.

// sha256 == sha256_digest(ciphertext)
struct StoredObject {
  Guid guid;
  CipherBlob ciphertext;
  Sha256Digest sha256;
  friend bool operator==(const StoredObject&, const StoredObject&) = default;
};

// share_ciphertext is the source plaintext re-encrypted under the zero-padded
// sharing password.
struct ShareRecord {
  Guid share_guid;
  Guid source_guid;
  CipherBlob share_ciphertext;
  Address address;
  std::int64_t created_at = 0;
  friend bool operator==(const ShareRecord&, const ShareRecord&) = default;
};

// sha256 covers header.serialize() || ciphertext.
struct HardenedStoredObject {
  Guid guid;
  HardenedHeader header;
  CipherBlob ciphertext;
  Sha256Digest sha256;
  friend bool operator==(const HardenedStoredObject&, const HardenedStoredObject&) = default;
};

struct HardenedShareRecord {
  Guid share_guid;
  HardenedHeader header;
  CipherBlob ciphertext;
  Sha256Digest sha256;
  Address address;
  std::int64_t created_at = 0;
  friend bool operator==(const HardenedShareRecord&, const HardenedShareRecord&) = default;
};

Sha256Digest hardened_object_digest(const HardenedHeader& header, ByteView ciphertext);

}  // namespace cfslab
