#pragma once

#include <cstddef>
#include <vector>

#include "cfslab/crypto/legacy_cipher.hpp"
#include "cfslab/runtime/blob_store.hpp"

namespace cfslab {

// Number of identical leading 16-byte blocks. Under the zero-IV legacy
// scheme and a shared password this is the number of leading plaintext
// blocks the two files have in common.
std::size_t prefix_leak(const CipherBlob& a, const CipherBlob& b) noexcept;

struct PrefixFinding {
  Guid first;
  Guid second;
  std::size_t shared_blocks = 0;
};

// Pairwise scan of every legacy object in the store; only pairs sharing at
// least one block are returned.
std::vector<PrefixFinding> scan_prefix_leaks(const BlobStore& store);

}  // namespace cfslab
