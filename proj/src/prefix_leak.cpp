#include "cfslab/attack/prefix_leak.hpp"

#include <algorithm>

namespace cfslab {

std::size_t prefix_leak(const CipherBlob& a, const CipherBlob& b) noexcept {
  const auto blocks = std::min(a.block_count(), b.block_count());
  std::size_t shared = 0;
  while (shared < blocks && std::ranges::equal(a.block(shared), b.block(shared))) ++shared;
  return shared;
}

std::vector<PrefixFinding> scan_prefix_leaks(const BlobStore& store) {
  std::vector<StoredObject> objects;
  for (const auto& guid : store.list_objects()) objects.push_back(store.load_object(guid));
  std::vector<PrefixFinding> findings;
  for (std::size_t i = 0; i < objects.size(); ++i) {
    for (std::size_t j = i + 1; j < objects.size(); ++j) {
      const auto shared = prefix_leak(objects[i].ciphertext, objects[j].ciphertext);
      if (shared > 0) findings.push_back({objects[i].guid, objects[j].guid, shared});
    }
  }
  return findings;
}

}  // namespace cfslab
