#include "cfslab/errors.hpp"

#include <string_view>

namespace cfslab {

namespace {

template <typename E>
bool rethrow_if(std::string_view kind, const std::string& message) {
  if (kind == E(std::string{}).kind()) throw E(message);
  return false;
}

}  // namespace

void throw_error_by_kind(const std::string& kind, const std::string& message) {
  rethrow_if<PaddingError>(kind, message);
  rethrow_if<KeyLengthError>(kind, message);
  rethrow_if<MalformedBlobError>(kind, message);
  rethrow_if<PolicyError>(kind, message);
  rethrow_if<KdfParameterError>(kind, message);
  rethrow_if<ZeroScalarError>(kind, message);
  rethrow_if<NotFoundError>(kind, message);
  rethrow_if<IntegrityError>(kind, message);
  rethrow_if<InvalidPasswordError>(kind, message);
  rethrow_if<AuthError>(kind, message);
  rethrow_if<FrameError>(kind, message);
  rethrow_if<ProtocolError>(kind, message);
  rethrow_if<TransportError>(kind, message);
  throw Error(message);
}

}  // namespace cfslab
