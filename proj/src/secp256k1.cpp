#include "cfslab/crypto/secp256k1.hpp"

#include <openssl/bn.h>
#include <openssl/ec.h>
#include <openssl/err.h>
#include <openssl/evp.h>
#include <openssl/hmac.h>
#include <openssl/obj_mac.h>

#include <cstring>
#include <memory>
#include <stdexcept>
#include <string>

#include "cfslab/crypto/hash.hpp"
#include "cfslab/errors.hpp"

namespace cfslab {

namespace {

struct BnFree {
  void operator()(BIGNUM* b) const noexcept { BN_clear_free(b); }
};
struct BnCtxFree {
  void operator()(BN_CTX* c) const noexcept { BN_CTX_free(c); }
};
struct PointFree {
  void operator()(EC_POINT* p) const noexcept { EC_POINT_free(p); }
};
struct GroupFree {
  void operator()(EC_GROUP* g) const noexcept { EC_GROUP_free(g); }
};

using Bn = std::unique_ptr<BIGNUM, BnFree>;
using BnCtx = std::unique_ptr<BN_CTX, BnCtxFree>;
using Point = std::unique_ptr<EC_POINT, PointFree>;

void check(int rc, const char* what) {
  if (rc != 1) throw std::runtime_error(std::string("secp256k1: ") + what + " failed");
}

Bn new_bn() {
  Bn b(BN_new());
  if (!b) throw std::bad_alloc();
  return b;
}

Bn bn_from_bytes(std::span<const std::uint8_t> bytes) {
  Bn b(BN_bin2bn(bytes.data(), static_cast<int>(bytes.size()), nullptr));
  if (!b) throw std::bad_alloc();
  return b;
}

std::array<std::uint8_t, 32> bn_to_bytes(const BIGNUM* b) {
  std::array<std::uint8_t, 32> out{};
  if (BN_bn2binpad(b, out.data(), static_cast<int>(out.size())) != 32)
    throw std::runtime_error("secp256k1: value does not fit in 32 bytes");
  return out;
}

// Immutable curve parameters shared by every thread.
struct Curve {
  std::unique_ptr<EC_GROUP, GroupFree> group;
  Bn order;
  Bn half_order;
  Bn field_prime;

  Curve() : group(EC_GROUP_new_by_curve_name(NID_secp256k1)) {
    if (!group) throw std::runtime_error("secp256k1 curve unavailable in libcrypto");
    order.reset(BN_dup(EC_GROUP_get0_order(group.get())));
    half_order.reset(BN_dup(order.get()));
    check(BN_rshift1(half_order.get(), half_order.get()), "BN_rshift1");
    field_prime = new_bn();
    BnCtx ctx(BN_CTX_new());
    check(EC_GROUP_get_curve(group.get(), field_prime.get(), nullptr, nullptr, ctx.get()), "EC_GROUP_get_curve");
  }
};

const Curve& curve() {
  static const Curve instance;
  return instance;
}

BnCtx new_ctx() {
  BnCtx ctx(BN_CTX_new());
  if (!ctx) throw std::bad_alloc();
  return ctx;
}

PublicPoint affine(const EC_POINT* p, BN_CTX* ctx) {
  auto x = new_bn();
  auto y = new_bn();
  check(EC_POINT_get_affine_coordinates(curve().group.get(), p, x.get(), y.get(), ctx),
        "EC_POINT_get_affine_coordinates");
  return {bn_to_bytes(x.get()), bn_to_bytes(y.get())};
}

Bn reduce_mod_order(std::span<const std::uint8_t> bytes, BN_CTX* ctx) {
  auto v = bn_from_bytes(bytes);
  check(BN_nnmod(v.get(), v.get(), curve().order.get(), ctx), "BN_nnmod");
  return v;
}

using Mac = std::array<std::uint8_t, 32>;

Mac hmac_sha256(const Mac& key, std::initializer_list<ByteView> parts) {
  Bytes msg;
  for (auto p : parts) msg.insert(msg.end(), p.begin(), p.end());
  Mac out{};
  unsigned int len = 0;
  if (!HMAC(EVP_sha256(), key.data(), static_cast<int>(key.size()), msg.data(), msg.size(), out.data(), &len))
    throw std::runtime_error("HMAC-SHA256 failed");
  return out;
}

// RFC 6979 section 3.2 candidate stream for a 256-bit order and SHA-256.
class NonceStream {
 public:
  NonceStream(const Scalar& key_octets, const Digest32& digest_octets) {
    v_.fill(0x01);
    k_.fill(0x00);
    const std::uint8_t zero = 0x00, one = 0x01;
    k_ = hmac_sha256(k_, {v_, ByteView(&zero, 1), key_octets, digest_octets});
    v_ = hmac_sha256(k_, {v_});
    k_ = hmac_sha256(k_, {v_, ByteView(&one, 1), key_octets, digest_octets});
    v_ = hmac_sha256(k_, {v_});
  }

  Mac next() {
    if (started_) {
      const std::uint8_t zero = 0x00;
      k_ = hmac_sha256(k_, {v_, ByteView(&zero, 1)});
      v_ = hmac_sha256(k_, {v_});
    }
    started_ = true;
    v_ = hmac_sha256(k_, {v_});
    return v_;
  }

 private:
  Mac k_{};
  Mac v_{};
  bool started_ = false;
};

}  // namespace

std::array<std::uint8_t, 64> PublicPoint::uncompressed() const {
  std::array<std::uint8_t, 64> out{};
  std::copy(x.begin(), x.end(), out.begin());
  std::copy(y.begin(), y.end(), out.begin() + 32);
  return out;
}

Address address_of(const PublicPoint& point) {
  auto digest = keccak256(point.uncompressed());
  Address a;
  std::copy(digest.end() - 20, digest.end(), a.bytes.begin());
  return a;
}

ShareKeypair keypair_from_scalar(const Scalar& scalar) {
  auto ctx = new_ctx();
  auto d = reduce_mod_order(scalar, ctx.get());
  if (BN_is_zero(d.get())) throw ZeroScalarError("private scalar is zero modulo the curve order");
  Point p(EC_POINT_new(curve().group.get()));
  check(EC_POINT_mul(curve().group.get(), p.get(), d.get(), nullptr, nullptr, ctx.get()), "EC_POINT_mul");
  ShareKeypair kp;
  kp.private_scalar = scalar;
  kp.public_point = affine(p.get(), ctx.get());
  kp.address = address_of(kp.public_point);
  return kp;
}

Scalar share_scalar(std::string_view sharing_password, std::string_view context_prefix) {
  std::string material;
  material.reserve(context_prefix.size() + sharing_password.size() + kLegacyShareConstant.size());
  material.append(context_prefix).append(sharing_password).append(kLegacyShareConstant);
  auto inner = keccak256(as_bytes(material));
  return keccak256(inner);
}

ShareKeypair derive_share_keypair(std::string_view sharing_password, std::string_view context_prefix) {
  if (sharing_password.empty()) throw std::invalid_argument("sharing password must not be empty");
  return keypair_from_scalar(share_scalar(sharing_password, context_prefix));
}

std::array<std::uint8_t, 65> RecoverableSignature::serialize() const {
  std::array<std::uint8_t, 65> out{};
  std::copy(r.begin(), r.end(), out.begin());
  std::copy(s.begin(), s.end(), out.begin() + 32);
  out[64] = recovery_id;
  return out;
}

std::optional<RecoverableSignature> RecoverableSignature::parse(ByteView bytes) {
  if (bytes.size() != 65 || bytes[64] > 3) return std::nullopt;
  RecoverableSignature sig;
  std::copy(bytes.begin(), bytes.begin() + 32, sig.r.begin());
  std::copy(bytes.begin() + 32, bytes.begin() + 64, sig.s.begin());
  sig.recovery_id = bytes[64];
  return sig;
}

RecoverableSignature sign_digest(const Scalar& private_scalar, const Digest32& digest) {
  const auto& c = curve();
  auto ctx = new_ctx();
  auto d = reduce_mod_order(private_scalar, ctx.get());
  if (BN_is_zero(d.get())) throw ZeroScalarError("private scalar is zero modulo the curve order");
  auto z = reduce_mod_order(digest, ctx.get());

  NonceStream nonces(bn_to_bytes(d.get()), bn_to_bytes(z.get()));
  auto k = new_bn();
  auto r = new_bn();
  auto s = new_bn();
  auto tmp = new_bn();
  Point big_r(EC_POINT_new(c.group.get()));
  for (;;) {
    auto candidate = nonces.next();
    BN_bin2bn(candidate.data(), static_cast<int>(candidate.size()), k.get());
    if (BN_is_zero(k.get()) || BN_cmp(k.get(), c.order.get()) >= 0) continue;

    check(EC_POINT_mul(c.group.get(), big_r.get(), k.get(), nullptr, nullptr, ctx.get()), "EC_POINT_mul");
    auto point = affine(big_r.get(), ctx.get());
    auto rx = bn_from_bytes(point.x);
    check(BN_nnmod(r.get(), rx.get(), c.order.get(), ctx.get()), "BN_nnmod");
    if (BN_is_zero(r.get())) continue;

    std::uint8_t recid = (point.y[31] & 1) | (BN_cmp(rx.get(), c.order.get()) >= 0 ? 2 : 0);

    // s = k^-1 (z + r d) mod n
    check(BN_mod_mul(tmp.get(), r.get(), d.get(), c.order.get(), ctx.get()), "BN_mod_mul");
    check(BN_mod_add(tmp.get(), tmp.get(), z.get(), c.order.get(), ctx.get()), "BN_mod_add");
    if (!BN_mod_inverse(s.get(), k.get(), c.order.get(), ctx.get())) throw std::runtime_error("BN_mod_inverse failed");
    check(BN_mod_mul(s.get(), s.get(), tmp.get(), c.order.get(), ctx.get()), "BN_mod_mul");
    if (BN_is_zero(s.get())) continue;

    if (BN_cmp(s.get(), c.half_order.get()) > 0) {
      check(BN_sub(s.get(), c.order.get(), s.get()), "BN_sub");
      recid ^= 1;
    }
    return {bn_to_bytes(r.get()), bn_to_bytes(s.get()), recid};
  }
}

std::optional<PublicPoint> recover_public_point(const Digest32& digest, const RecoverableSignature& sig) {
  if (sig.recovery_id > 3) return std::nullopt;
  const auto& c = curve();
  auto ctx = new_ctx();
  auto r = bn_from_bytes(sig.r);
  auto s = bn_from_bytes(sig.s);
  if (BN_is_zero(r.get()) || BN_is_zero(s.get()) || BN_cmp(r.get(), c.order.get()) >= 0 ||
      BN_cmp(s.get(), c.order.get()) >= 0)
    return std::nullopt;

  auto x = new_bn();
  if (!BN_copy(x.get(), r.get())) throw std::bad_alloc();
  if (sig.recovery_id & 2) check(BN_add(x.get(), x.get(), c.order.get()), "BN_add");
  if (BN_cmp(x.get(), c.field_prime.get()) >= 0) return std::nullopt;

  Point big_r(EC_POINT_new(c.group.get()));
  ERR_set_mark();
  const bool on_curve =
      EC_POINT_set_compressed_coordinates(c.group.get(), big_r.get(), x.get(), sig.recovery_id & 1, ctx.get()) == 1;
  ERR_pop_to_mark();
  if (!on_curve) return std::nullopt;

  // Q = r^-1 (s R - z G)
  auto z = reduce_mod_order(digest, ctx.get());
  auto r_inv = new_bn();
  if (!BN_mod_inverse(r_inv.get(), r.get(), c.order.get(), ctx.get())) return std::nullopt;
  auto u1 = new_bn();
  auto u2 = new_bn();
  check(BN_mod_sub(u1.get(), c.order.get(), z.get(), c.order.get(), ctx.get()), "BN_mod_sub");
  check(BN_mod_mul(u1.get(), u1.get(), r_inv.get(), c.order.get(), ctx.get()), "BN_mod_mul");
  check(BN_mod_mul(u2.get(), s.get(), r_inv.get(), c.order.get(), ctx.get()), "BN_mod_mul");

  Point q(EC_POINT_new(c.group.get()));
  check(EC_POINT_mul(c.group.get(), q.get(), u1.get(), big_r.get(), u2.get(), ctx.get()), "EC_POINT_mul");
  if (EC_POINT_is_at_infinity(c.group.get(), q.get())) return std::nullopt;
  return affine(q.get(), ctx.get());
}

Digest32 timestamp_digest(std::int64_t timestamp) {
  return keccak256(as_bytes(std::to_string(timestamp)));
}

RecoverableSignature sign_timestamp(const ShareKeypair& keypair, std::int64_t timestamp) {
  return sign_digest(keypair.private_scalar, timestamp_digest(timestamp));
}

bool verify_timestamp_sig(const Address& address, std::int64_t timestamp, ByteView signature) {
  auto sig = RecoverableSignature::parse(signature);
  if (!sig) return false;
  // High-s duplicates of a valid signature are refused.
  auto s = bn_from_bytes(sig->s);
  if (BN_cmp(s.get(), curve().half_order.get()) > 0) return false;
  auto point = recover_public_point(timestamp_digest(timestamp), *sig);
  return point && address_of(*point) == address;
}

}  // namespace cfslab
