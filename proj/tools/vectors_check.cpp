#include "vectors_check.hpp"

#include <fstream>
#include <functional>

#include <json.hpp>

#include "cfslab/crypto.hpp"
#include "cfslab/protocol/hardened_client.hpp"

namespace cfslab::tools {

namespace {

using nlohmann::json;
using Checker = std::function<std::vector<std::string>(const json&)>;

void expect(std::vector<std::string>& out, bool ok, const std::string& what) {
  if (!ok) out.push_back(what);
}

std::vector<std::string> check_share(const json& v, std::string_view context) {
  std::vector<std::string> out;
  const auto pw = v.at("password").get<std::string>();
  auto kp = derive_share_keypair(pw, context);
  expect(out, to_hex(kp.private_scalar) == v.at("private_scalar_hex"), pw + ": scalar");
  expect(out, kp.address.hex() == v.at("address_hex"), pw + ": address");
  expect(out, to_hex(kp.public_point.uncompressed()) == v.at("public_hex"), pw + ": public point");
  const auto ts = v.at("timestamp").get<std::int64_t>();
  expect(out, to_hex(sign_timestamp(kp, ts).serialize()) == v.at("signature_hex"), pw + ": signature");
  expect(out, verify_timestamp_sig(kp.address, ts, from_hex(v.at("signature_hex").get<std::string>())),
         pw + ": verification");
  return out;
}

std::vector<std::string> check_kdf(const json& v) {
  const auto pw = v.at("password").get<std::string>();
  const auto expected = v.at("key_hex").get<std::string>();
  auto key = pbkdf2_hmac_sha256(pw, from_hex(v.at("salt_hex").get<std::string>()), v.at("iterations").get<std::uint32_t>(),
                                expected.size() / 2);
  if (to_hex(key) == expected) return {};
  return {pw + " @ " + std::to_string(v.at("iterations").get<std::uint32_t>()) + " iterations"};
}

std::vector<std::string> check_legacy(const json& v) {
  std::vector<std::string> out;
  const auto pw = v.at("password").get<std::string>();
  auto key = derive_legacy_key(pw);
  auto blob = encrypt_legacy(from_hex(v.at("plaintext_hex").get<std::string>()), key);
  expect(out, to_hex(key.bytes) == v.at("key_hex"), pw + ": key");
  expect(out, to_hex(blob.bytes()) == v.at("ciphertext_hex"), pw + ": ciphertext");
  expect(out, sha256_digest(blob.bytes()).hex() == v.at("sha256_hex"), pw + ": sha256");
  return out;
}

std::vector<std::string> check_digest(const json& v) {
  std::vector<std::string> out;
  auto input = from_hex(v.at("input_hex").get<std::string>());
  expect(out, sha256_digest(input).hex() == v.at("sha256_hex"), "sha256 of " + std::to_string(input.size()) + " bytes");
  expect(out, to_hex(keccak256(input)) == v.at("keccak256_hex"), "keccak256 of " + std::to_string(input.size()) + " bytes");
  return out;
}

VectorCheckResult run(const std::filesystem::path& file, const Checker& checker) {
  VectorCheckResult result{file.filename().string(), 0, {}};
  std::ifstream in(file);
  if (!in) {
    result.failures.push_back("cannot open " + file.string());
    return result;
  }
  for (std::string line; std::getline(in, line);) {
    if (line.empty()) continue;
    try {
      auto record = json::parse(line);
      if (record.contains("_comment")) continue;
      ++result.checked;
      for (auto& f : checker(record)) result.failures.push_back(std::move(f));
    } catch (const std::exception& e) {
      result.failures.push_back(std::string("bad record: ") + e.what());
    }
  }
  if (result.checked == 0) result.failures.push_back("no records");
  return result;
}

}  // namespace

std::vector<VectorCheckResult> check_vectors(const std::filesystem::path& dir) {
  return {
      run(dir / "share_vectors.jsonl", [](const json& v) { return check_share(v, {}); }),
      run(dir / "hardened_share_vectors.jsonl", [](const json& v) { return check_share(v, kHardenedShareContext); }),
      run(dir / "kdf_vectors.jsonl", check_kdf),
      run(dir / "legacy_vectors.jsonl", check_legacy),
      run(dir / "digest_vectors.jsonl", check_digest),
  };
}

}  // namespace cfslab::tools
