#include <gtest/gtest.h>

#include <fstream>
#include <set>

#include "cfslab/crypto.hpp"
#include "cfslab/errors.hpp"
#include "cfslab/protocol/server.hpp"
#include "cfslab/runtime/blob_store.hpp"
#include "cfslab/runtime/framing.hpp"
#include "cfslab/runtime/tcp.hpp"
#include "cfslab/runtime/transcript.hpp"
#include "support/temp_dir.hpp"

namespace cfslab {
namespace {

using testing::TempDir;

StoredObject make_object(RandomSource& rng, std::size_t size) {
  auto blob = encrypt_legacy(rng.bytes(size), derive_legacy_key("abc!ef"));
  auto digest = sha256_digest(blob.bytes());
  return {Guid::generate(rng), std::move(blob), digest};
}

Address some_address() { return derive_share_keypair("hunter2!").address; }

// --- guid --------------------------------------------------------------------

TEST(GuidTest, GeneratedIsCanonicalVersion4) {
  SeededRandom rng(1);
  auto g = Guid::generate(rng);
  ASSERT_EQ(g.str().size(), 36u);
  EXPECT_EQ(g.str()[14], '4');
  EXPECT_NE(std::string("89ab").find(g.str()[19]), std::string::npos);
  EXPECT_EQ(Guid::parse(g.str()), g);
}

TEST(GuidTest, ParseRejectsNonCanonical) {
  EXPECT_FALSE(Guid::parse("not-a-guid"));
  EXPECT_FALSE(Guid::parse("../../etc/passwd"));
  EXPECT_FALSE(Guid::parse("ABCDEF01-2345-4678-89ab-0123456789ab"));
  EXPECT_TRUE(Guid::parse("abcdef01-2345-4678-89ab-0123456789ab"));
}

// --- blob store --------------------------------------------------------------

TEST(BlobStoreTest, PersistThenLoadRoundTrips) {
  TempDir dir;
  SeededRandom rng(2);
  BlobStore store(dir.path());
  auto obj = make_object(rng, 100);
  store.persist_object(obj);
  EXPECT_EQ(store.load_object(obj.guid), obj);
  EXPECT_TRUE(store.contains(obj.guid));
  EXPECT_EQ(store.list_objects(), std::vector{obj.guid});
}

TEST(BlobStoreTest, SurvivesReopen) {
  TempDir dir;
  SeededRandom rng(3);
  auto obj = make_object(rng, 33);
  BlobStore(dir.path()).persist_object(obj);
  EXPECT_EQ(BlobStore(dir.path()).load_object(obj.guid), obj);
}

TEST(BlobStoreTest, UnknownGuidIsNotFound) {
  TempDir dir;
  SeededRandom rng(4);
  BlobStore store(dir.path());
  EXPECT_THROW(store.load_object(Guid::generate(rng)), NotFoundError);
  EXPECT_FALSE(store.contains(Guid::generate(rng)));
}

TEST(BlobStoreTest, FlippedByteOnDiskIsIntegrityError) {
  TempDir dir;
  SeededRandom rng(5);
  BlobStore store(dir.path());
  auto obj = make_object(rng, 64);
  store.persist_object(obj);
  {
    std::fstream f(store.blob_path(obj.guid), std::ios::in | std::ios::out | std::ios::binary);
    f.seekp(7);
    f.put(static_cast<char>(obj.ciphertext.bytes()[7] ^ 0x01));
  }
  EXPECT_THROW(store.load_object(obj.guid), IntegrityError);
}

TEST(BlobStoreTest, ShareRecordRoundTrip) {
  TempDir dir;
  SeededRandom rng(6);
  BlobStore store(dir.path());
  auto obj = make_object(rng, 20);
  ShareRecord rec{Guid::generate(rng), obj.guid, obj.ciphertext, some_address(), 1700000000};
  store.persist_share(rec);
  EXPECT_EQ(store.load_share(rec.share_guid), rec);
  EXPECT_THROW(store.load_object(rec.share_guid), NotFoundError);
}

TEST(BlobStoreTest, HardenedRecordsRoundTrip) {
  TempDir dir;
  SeededRandom rng(7);
  BlobStore store(dir.path());
  auto header = HardenedHeader::fresh(rng, kKdfIterationFloor);
  CipherBlob blob(rng.bytes(48));
  HardenedStoredObject obj{Guid::generate(rng), header, blob, hardened_object_digest(header, blob.bytes())};
  store.persist_hardened(obj);
  EXPECT_EQ(store.load_hardened(obj.guid), obj);
  HardenedShareRecord rec{Guid::generate(rng), header, blob, obj.sha256, some_address(), 5};
  store.persist_hardened_share(rec);
  EXPECT_EQ(store.load_hardened_share(rec.share_guid), rec);
}

// --- transcript --------------------------------------------------------------

TEST(TranscriptTest, ArrivalIndicesIncrease) {
  Transcript t;
  EXPECT_EQ(t.append("store", {{"a", 1}}), 0u);
  EXPECT_EQ(t.append("fetch", {{"b", 2}}), 1u);
  auto entries = t.entries();
  ASSERT_EQ(entries.size(), 2u);
  EXPECT_EQ(entries[1].op, "fetch");
}

TEST(TranscriptTest, GrepFindsNestedStringsAndNumbers) {
  Transcript t;
  t.append("share", {{"op", "share"}, {"nested", {{"deep", {"x", "secret-pw!"}}}}});
  t.append("access", {{"timestamp", 1700000000}});
  t.append("store", {{"op", "store"}});
  EXPECT_EQ(t.grep("secret-pw").size(), 1u);
  EXPECT_EQ(t.grep("17000").size(), 1u);
  EXPECT_TRUE(t.grep("absent").empty());
  EXPECT_TRUE(t.grep("").empty());
}

TEST(TranscriptTest, PersistsAcrossReopen) {
  TempDir dir;
  auto file = dir.path() / "t.jsonl";
  {
    Transcript t(file);
    t.append("store", {{"k", "v1"}});
    t.append("fetch", {{"k", "v2"}});
  }
  Transcript reopened(file);
  EXPECT_EQ(reopened.size(), 2u);
  EXPECT_EQ(reopened.append("access", {}), 2u);
  EXPECT_EQ(Transcript::read_file(file).size(), 3u);
}

// --- framing -----------------------------------------------------------------

std::vector<Message> every_message_kind() {
  SeededRandom rng(8);
  auto g = Guid::generate(rng);
  auto header = HardenedHeader::fresh(rng, kKdfIterationFloor);
  Bytes blob = rng.bytes(32);
  auto digest = sha256_digest(blob);
  return {
      StoreRequest{blob, digest},
      FetchRequest{g},
      ShareRequest{g, "orig!pw", "share!pw", some_address()},
      AccessRequest{g, 1700000000, rng.bytes(65)},
      HStoreRequest{header, blob, digest},
      HFetchRequest{g},
      HShareUploadRequest{header, blob, digest, some_address()},
      HAccessRequest{g, -5, rng.bytes(65)},
      Reply::success({{"guid", g.str()}}),
      Reply::failure("padding", "bad padding"),
  };
}

TEST(FramingTest, EveryKindRoundTrips) {
  for (const auto& m : every_message_kind()) {
    EXPECT_EQ(frame_decode(frame_encode(m)), m) << op_name(m);
  }
}

TEST(FramingTest, HeaderIsBigEndianLength) {
  auto frame = frame_encode(FetchRequest{*Guid::parse("abcdef01-2345-4678-89ab-0123456789ab")});
  EXPECT_EQ(frame_payload_length(ByteView(frame).first(4)), frame.size() - 4);
  EXPECT_EQ(frame[0], 0);
}

TEST(FramingTest, TruncatedFrameFails) {
  auto frame = frame_encode(FetchRequest{*Guid::parse("abcdef01-2345-4678-89ab-0123456789ab")});
  for (std::size_t cut : {std::size_t{0}, std::size_t{3}, frame.size() - 1}) {
    EXPECT_THROW(frame_decode(ByteView(frame).first(cut)), FrameError);
  }
}

TEST(FramingTest, OverLengthHeaderRejectedWithoutReadingPayload) {
  const std::uint32_t len = 65u * 1024 * 1024;
  Bytes header{static_cast<std::uint8_t>(len >> 24), static_cast<std::uint8_t>(len >> 16),
               static_cast<std::uint8_t>(len >> 8), static_cast<std::uint8_t>(len)};
  EXPECT_THROW(frame_payload_length(header), FrameError);
  EXPECT_THROW(frame_decode(header), FrameError);
  FrameReader reader;
  reader.feed(header);
  EXPECT_THROW(reader.next(), FrameError);
}

TEST(FramingTest, MalformedPayloadsFail) {
  auto wrap = [](std::string payload) {
    Bytes out{0, 0, 0, static_cast<std::uint8_t>(payload.size())};
    out.insert(out.end(), payload.begin(), payload.end());
    return out;
  };
  EXPECT_THROW(frame_decode(wrap("{nope")), FrameError);
  EXPECT_THROW(frame_decode(wrap(R"({"op":"teleport"})")), FrameError);
  EXPECT_THROW(frame_decode(wrap(R"({"op":"fetch"})")), FrameError);
  EXPECT_THROW(frame_decode(wrap(R"({"op":"fetch","guid":"x"})")), FrameError);
  EXPECT_THROW(frame_decode(wrap(R"([1,2])")), FrameError);
}

TEST(FramingTest, ReaderSplitsConcatenatedFramesFedByteByByte) {
  auto messages = every_message_kind();
  Bytes stream;
  for (const auto& m : messages) {
    auto f = frame_encode(m);
    stream.insert(stream.end(), f.begin(), f.end());
  }
  FrameReader reader;
  std::vector<Message> decoded;
  for (auto b : stream) {
    reader.feed(ByteView(&b, 1));
    while (auto m = reader.next()) decoded.push_back(std::move(*m));
  }
  EXPECT_EQ(decoded, messages);
  EXPECT_EQ(reader.buffered(), 0u);
}

// --- tcp ---------------------------------------------------------------------

TEST(TcpTest, ServerRoundTripOverLoopbackSocket) {
  TempDir dir;
  SeededRandom rng(9);
  Server server(dir.path(), rng);
  TcpServer tcp([&](ByteView f) { return server.handle_frame(f); }, "127.0.0.1", 0);
  auto port = tcp.listen();
  tcp.start();

  TcpTransport transport("127.0.0.1", port);
  auto blob = encrypt_legacy(as_bytes("over the wire"), derive_legacy_key("abc!ef"));
  auto body = call(transport, StoreRequest{blob.bytes(), sha256_digest(blob.bytes())});
  auto guid = Guid::parse(body.at("guid").get<std::string>());
  ASSERT_TRUE(guid);
  auto fetched = call(transport, FetchRequest{*guid});
  EXPECT_EQ(from_base64(fetched.at("ciphertext").get<std::string>()), blob.bytes());

  SeededRandom other(10);
  EXPECT_THROW(call(transport, FetchRequest{Guid::generate(other)}), NotFoundError);
  tcp.stop();
}

TEST(TcpTest, ConnectFailureIsTransportError) {
  TcpServer tcp([](ByteView) { return Bytes{}; }, "127.0.0.1", 0);
  auto port = tcp.listen();
  tcp.stop();
  EXPECT_THROW(TcpTransport("127.0.0.1", port), TransportError);
}

// --- server dispatch ---------------------------------------------------------

TEST(ServerFrameTest, UndecodableFrameAnsweredAndNotRecorded) {
  TempDir dir;
  Server server(dir.path());
  Bytes junk{0, 0, 0, 2, '{', '}'};
  auto reply = frame_decode(server.handle_frame(junk));
  ASSERT_TRUE(std::holds_alternative<Reply>(reply));
  EXPECT_FALSE(std::get<Reply>(reply).ok);
  EXPECT_EQ(std::get<Reply>(reply).error, "frame");
  EXPECT_EQ(server.transcript().size(), 0u);
}

}  // namespace
}  // namespace cfslab
