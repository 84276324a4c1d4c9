#pragma once

#include <stdexcept>
#include <string>

namespace cfslab {

// Root of every error the library raises. `kind()` is the stable tag used on
// the wire so a client can rethrow the same type the server raised.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept { return "error"; }
};

#define CFSLAB_DEFINE_ERROR(Name, tag)                        \
  class Name : public Error {                                 \
   public:                                                    \
    using Error::Error;                                       \
    const char* kind() const noexcept override { return tag; } \
  }

CFSLAB_DEFINE_ERROR(PaddingError, "padding");
CFSLAB_DEFINE_ERROR(KeyLengthError, "key_length");
CFSLAB_DEFINE_ERROR(MalformedBlobError, "malformed_blob");
CFSLAB_DEFINE_ERROR(PolicyError, "policy");
CFSLAB_DEFINE_ERROR(KdfParameterError, "kdf_parameter");
CFSLAB_DEFINE_ERROR(ZeroScalarError, "zero_scalar");
CFSLAB_DEFINE_ERROR(NotFoundError, "not_found");
CFSLAB_DEFINE_ERROR(IntegrityError, "integrity");
CFSLAB_DEFINE_ERROR(InvalidPasswordError, "invalid_password");
CFSLAB_DEFINE_ERROR(AuthError, "auth");
CFSLAB_DEFINE_ERROR(FrameError, "frame");
CFSLAB_DEFINE_ERROR(ProtocolError, "protocol");
CFSLAB_DEFINE_ERROR(TransportError, "transport");

#undef CFSLAB_DEFINE_ERROR

// Rebuilds a typed exception from a wire error tag; unknown tags map to Error.
[[noreturn]] void throw_error_by_kind(const std::string& kind, const std::string& message);

}  // namespace cfslab
