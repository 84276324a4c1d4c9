#include "cfslab/runtime/blob_store.hpp"

#include <fstream>
#include <mutex>

#include <json.hpp>

#include "cfslab/errors.hpp"
#include "cfslab/runtime/messages.hpp"

namespace cfslab {

namespace fs = std::filesystem;
using nlohmann::json;

Sha256Digest hardened_object_digest(const HardenedHeader& header, ByteView ciphertext) {
  auto h = header.serialize();
  Bytes material(h.begin(), h.end());
  material.insert(material.end(), ciphertext.begin(), ciphertext.end());
  return sha256_digest(material);
}

namespace {

void write_atomic(const fs::path& path, ByteView data) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
    if (!out.flush()) throw Error("short write to " + tmp.string());
  }
  fs::rename(tmp, path);
}

Bytes read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw NotFoundError("missing file " + path.filename().string());
  return Bytes(std::istreambuf_iterator<char>(in), {});
}

json read_meta(const fs::path& path, const Guid& guid) {
  std::ifstream in(path);
  if (!in) throw NotFoundError("unknown guid " + guid.str());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw IntegrityError("corrupted metadata for " + guid.str() + ": " + e.what());
  }
}

CipherBlob read_blob(const fs::path& path, const Guid& guid) {
  auto bytes = read_file(path);
  try {
    return CipherBlob(std::move(bytes));
  } catch (const MalformedBlobError&) {
    throw IntegrityError("stored blob for " + guid.str() + " has an invalid length");
  }
}

void expect_kind(const json& meta, std::string_view kind, const Guid& guid) {
  if (meta.value("kind", "") != kind) throw NotFoundError("no " + std::string(kind) + " record " + guid.str());
}

template <typename F>
auto parse_meta_field(const Guid& guid, F&& f) {
  try {
    return f();
  } catch (const std::exception& e) {
    throw IntegrityError("corrupted metadata for " + guid.str() + ": " + e.what());
  }
}

void verify(const Sha256Digest& expected, const Sha256Digest& actual, const Guid& guid) {
  if (expected != actual) throw IntegrityError("sha256 mismatch for " + guid.str() + ": stored blob is corrupted");
}

}  // namespace

BlobStore::BlobStore(fs::path root) : root_(std::move(root)), shares_(root_ / "shares") {
  fs::create_directories(shares_);
}

fs::path BlobStore::blob_path(const Guid& guid) const { return root_ / (guid.str() + ".blob"); }
fs::path BlobStore::share_blob_path(const Guid& guid) const { return shares_ / (guid.str() + ".blob"); }

void BlobStore::persist_object(const StoredObject& obj) {
  json meta = {{"guid", obj.guid.str()}, {"kind", "legacy"}, {"sha256", obj.sha256.hex()}};
  std::unique_lock lock(mutex_);
  write_atomic(blob_path(obj.guid), obj.ciphertext.bytes());
  write_atomic(root_ / (obj.guid.str() + ".meta.json"), as_bytes(meta.dump()));
}

StoredObject BlobStore::load_object(const Guid& guid) const {
  std::shared_lock lock(mutex_);
  auto meta = read_meta(root_ / (guid.str() + ".meta.json"), guid);
  expect_kind(meta, "legacy", guid);
  auto sha = parse_meta_field(guid, [&] { return Sha256Digest::from_hex(meta.at("sha256").get<std::string>()); });
  auto blob = read_blob(blob_path(guid), guid);
  verify(sha, sha256_digest(blob.bytes()), guid);
  return {guid, std::move(blob), sha};
}

void BlobStore::persist_hardened(const HardenedStoredObject& obj) {
  json meta = {{"guid", obj.guid.str()},
               {"kind", "hardened"},
               {"sha256", obj.sha256.hex()},
               {"header", header_to_json(obj.header)}};
  std::unique_lock lock(mutex_);
  write_atomic(blob_path(obj.guid), obj.ciphertext.bytes());
  write_atomic(root_ / (obj.guid.str() + ".meta.json"), as_bytes(meta.dump()));
}

HardenedStoredObject BlobStore::load_hardened(const Guid& guid) const {
  std::shared_lock lock(mutex_);
  auto meta = read_meta(root_ / (guid.str() + ".meta.json"), guid);
  expect_kind(meta, "hardened", guid);
  auto sha = parse_meta_field(guid, [&] { return Sha256Digest::from_hex(meta.at("sha256").get<std::string>()); });
  auto header = parse_meta_field(guid, [&] { return header_from_json(meta.at("header")); });
  auto blob = read_blob(blob_path(guid), guid);
  verify(sha, hardened_object_digest(header, blob.bytes()), guid);
  return {guid, header, std::move(blob), sha};
}

void BlobStore::persist_share(const ShareRecord& rec) {
  json meta = {{"guid", rec.share_guid.str()},
               {"kind", "legacy_share"},
               {"source_guid", rec.source_guid.str()},
               {"address", rec.address.hex()},
               {"created_at", rec.created_at},
               {"sha256", sha256_digest(rec.share_ciphertext.bytes()).hex()}};
  std::unique_lock lock(mutex_);
  write_atomic(share_blob_path(rec.share_guid), rec.share_ciphertext.bytes());
  write_atomic(shares_ / (rec.share_guid.str() + ".meta.json"), as_bytes(meta.dump()));
}

ShareRecord BlobStore::load_share(const Guid& share_guid) const {
  std::shared_lock lock(mutex_);
  auto meta = read_meta(shares_ / (share_guid.str() + ".meta.json"), share_guid);
  expect_kind(meta, "legacy_share", share_guid);
  auto [source, address, created, sha] = parse_meta_field(share_guid, [&] {
    auto src = Guid::parse(meta.at("source_guid").get<std::string>());
    if (!src) throw std::invalid_argument("bad source_guid");
    return std::tuple{*src, Address::from_hex(meta.at("address").get<std::string>()),
                      meta.at("created_at").get<std::int64_t>(),
                      Sha256Digest::from_hex(meta.at("sha256").get<std::string>())};
  });
  auto blob = read_blob(share_blob_path(share_guid), share_guid);
  verify(sha, sha256_digest(blob.bytes()), share_guid);
  return {share_guid, source, std::move(blob), address, created};
}

void BlobStore::persist_hardened_share(const HardenedShareRecord& rec) {
  json meta = {{"guid", rec.share_guid.str()},
               {"kind", "hardened_share"},
               {"address", rec.address.hex()},
               {"created_at", rec.created_at},
               {"sha256", rec.sha256.hex()},
               {"header", header_to_json(rec.header)}};
  std::unique_lock lock(mutex_);
  write_atomic(share_blob_path(rec.share_guid), rec.ciphertext.bytes());
  write_atomic(shares_ / (rec.share_guid.str() + ".meta.json"), as_bytes(meta.dump()));
}

HardenedShareRecord BlobStore::load_hardened_share(const Guid& share_guid) const {
  std::shared_lock lock(mutex_);
  auto meta = read_meta(shares_ / (share_guid.str() + ".meta.json"), share_guid);
  expect_kind(meta, "hardened_share", share_guid);
  auto [header, address, created, sha] = parse_meta_field(share_guid, [&] {
    return std::tuple{header_from_json(meta.at("header")), Address::from_hex(meta.at("address").get<std::string>()),
                      meta.at("created_at").get<std::int64_t>(),
                      Sha256Digest::from_hex(meta.at("sha256").get<std::string>())};
  });
  auto blob = read_blob(share_blob_path(share_guid), share_guid);
  verify(sha, hardened_object_digest(header, blob.bytes()), share_guid);
  return {share_guid, header, std::move(blob), sha, address, created};
}

bool BlobStore::contains(const Guid& guid) const {
  std::shared_lock lock(mutex_);
  return fs::exists(root_ / (guid.str() + ".meta.json")) || fs::exists(shares_ / (guid.str() + ".meta.json"));
}

std::vector<Guid> BlobStore::list_objects() const {
  std::shared_lock lock(mutex_);
  std::vector<Guid> out;
  for (const auto& entry : fs::directory_iterator(root_)) {
    auto name = entry.path().filename().string();
    constexpr std::string_view kSuffix = ".meta.json";
    if (name.size() != 36 + kSuffix.size() || !name.ends_with(kSuffix)) continue;
    auto guid = Guid::parse(std::string_view(name).substr(0, 36));
    if (!guid) continue;
    std::ifstream in(entry.path());
    auto meta = json::parse(in, nullptr, false);
    if (!meta.is_discarded() && meta.value("kind", "") == "legacy") out.push_back(*guid);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace cfslab
