#pragma once

#include <cstdint>
#include <string_view>

#include "cfslab/crypto/hardened_cipher.hpp"
#include "cfslab/crypto/secp256k1.hpp"
#include "cfslab/protocol/transport.hpp"
#include "cfslab/random.hpp"
#include "cfslab/runtime/guid.hpp"

namespace cfslab {

// Prefix mixed into the share-auth key derivation of the corrected flow, so
// its addresses never coincide with legacy ones for the same password.
inline constexpr std::string_view kHardenedShareContext = "cfslab/hardened-share-auth/v1:";

struct HardenedClientOptions {
  std::uint32_t kdf_iterations = kDefaultKdfIterations;
  HardenedPolicy policy{};
};

ShareKeypair derive_hardened_share_keypair(std::string_view sharing_password);

// Corrected client: salted PBKDF2 keys, fresh IVs, and a share flow that does
// all decryption and re-encryption locally. No request it sends carries a
// password.
class HardenedClient {
 public:
  HardenedClient(Transport& transport, RandomSource& rng, HardenedClientOptions options = {})
      : transport_(transport), rng_(rng), options_(options) {}

  // Weak passwords throw PolicyError before anything is sent.
  Guid store(ByteView plaintext, std::string_view password);
  Bytes fetch(const Guid& guid, std::string_view password);

  // Fetches and decrypts the source locally (PaddingError on a wrong
  // original password, nothing reaches the server), re-encrypts under a
  // fresh header keyed by the sharing password and uploads the result.
  Guid share(const Guid& source_guid, std::string_view original_password, std::string_view sharing_password);

  Bytes access(const Guid& share_guid, std::string_view sharing_password, std::int64_t now);

 private:
  void require_strength(std::string_view password, const char* which) const;

  Transport& transport_;
  RandomSource& rng_;
  HardenedClientOptions options_;
};

}  // namespace cfslab
