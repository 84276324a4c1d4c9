#pragma once

#include <cstdint>
#include <string_view>

#include "cfslab/crypto/policy.hpp"
#include "cfslab/protocol/transport.hpp"
#include "cfslab/runtime/guid.hpp"

namespace cfslab {

// Browser-side behaviour of the original service, flaws included: zero-IV
// CBC under the zero-padded password, and a share step that uploads both
// passwords.
class LegacyClient {
 public:
  explicit LegacyClient(Transport& transport, PasswordPolicy policy = PasswordPolicy::legacy6())
      : transport_(transport), policy_(std::move(policy)) {}

  // Throws PolicyError before contacting the server.
  Guid store(ByteView plaintext, std::string_view password);

  // PaddingError on a wrong password (unless the padding happens to be valid,
  // in which case garbage comes back).
  Bytes fetch(const Guid& guid, std::string_view password);

  Guid share(const Guid& source_guid, std::string_view original_password, std::string_view sharing_password);

  Bytes access_shared(const Guid& share_guid, std::string_view sharing_password, std::int64_t now);

  const PasswordPolicy& policy() const noexcept { return policy_; }

 private:
  void require_policy(std::string_view password, const char* which) const;

  Transport& transport_;
  PasswordPolicy policy_;
};

}  // namespace cfslab
