#include <gtest/gtest.h>

#include <set>
#include <thread>

#include "cfslab/attack/padding_collision.hpp"
#include "cfslab/crypto.hpp"
#include "cfslab/errors.hpp"
#include "cfslab/protocol/legacy_client.hpp"
#include "cfslab/protocol/server.hpp"
#include "support/temp_dir.hpp"

namespace cfslab {
namespace {

using testing::TempDir;

constexpr std::int64_t kNow = 1700000000;

class LegacyProtocol : public ::testing::Test {
 protected:
  LegacyProtocol()
      : rng_(42), server_(dir_.path(), rng_, ServerOptions{kDefaultFreshnessWindow, [] { return kNow; }}),
        transport_(server_), client_(transport_) {}

  TempDir dir_;
  SeededRandom rng_;
  Server server_;
  LoopbackTransport transport_;
  LegacyClient client_;
};

const Bytes kDocument = to_bytes("quarterly report: all figures are confidential and must not leave the team.");

TEST_F(LegacyProtocol, StoreThenFetchRoundTrips) {
  auto guid = client_.store(kDocument, "abc!ef");
  EXPECT_EQ(client_.fetch(guid, "abc!ef"), kDocument);
}

TEST_F(LegacyProtocol, SpecialOnlySixCharacterPasswordIsAccepted) {
  auto guid = client_.store(kDocument, "!!!!!!");
  EXPECT_EQ(client_.fetch(guid, "!!!!!!"), kDocument);
}

TEST_F(LegacyProtocol, PolicyViolationNeverReachesServer) {
  LegacyClient strict(transport_, PasswordPolicy::legacy8());
  EXPECT_THROW(strict.store(kDocument, "!!!!!!"), PolicyError);
  EXPECT_THROW(client_.store(kDocument, "abcdef"), PolicyError);
  EXPECT_EQ(server_.transcript().size(), 0u);
}

TEST_F(LegacyProtocol, SameInputsGiveDistinctGuidsButIdenticalBlobs) {
  auto a = client_.store(kDocument, "abc!ef");
  auto b = client_.store(kDocument, "abc!ef");
  EXPECT_NE(a, b);
  EXPECT_EQ(server_.handle_fetch({a}).ciphertext, server_.handle_fetch({b}).ciphertext);
}

TEST_F(LegacyProtocol, MismatchedDigestRejectedAndNothingStored) {
  auto blob = encrypt_legacy(kDocument, derive_legacy_key("abc!ef"));
  auto wrong = sha256_digest(as_bytes("something else"));
  EXPECT_THROW(server_.handle_store({blob.bytes(), wrong}), IntegrityError);
  EXPECT_TRUE(server_.store().list_objects().empty());
}

TEST_F(LegacyProtocol, MalformedLengthRejected) {
  Bytes odd(17, 0);
  EXPECT_THROW(server_.handle_store({odd, sha256_digest(odd)}), MalformedBlobError);
}

TEST_F(LegacyProtocol, WrongPasswordFetchUsuallyFailsPadding) {
  auto guid = client_.store(kDocument, "abc!ef");
  EXPECT_THROW(client_.fetch(guid, "abc!eg"), PaddingError);
}

TEST_F(LegacyProtocol, UnknownGuidIsNotFound) {
  SeededRandom other(1);
  EXPECT_THROW(client_.fetch(Guid::generate(other), "abc!ef"), NotFoundError);
}

TEST_F(LegacyProtocol, ShareThenAccessWithinWindow) {
  auto source = client_.store(kDocument, "abc!ef");
  auto share = client_.share(source, "abc!ef", "hunter2!");
  EXPECT_NE(share, source);
  EXPECT_EQ(client_.access_shared(share, "hunter2!", kNow), kDocument);
  EXPECT_EQ(client_.access_shared(share, "hunter2!", kNow - 299), kDocument);
}

TEST_F(LegacyProtocol, ShareCiphertextIsSourceReencryptedUnderSharingPassword) {
  auto source = client_.store(kDocument, "abc!ef");
  auto share = client_.share(source, "abc!ef", "hunter2!");
  auto rec = server_.store().load_share(share);
  EXPECT_EQ(rec.share_ciphertext, encrypt_legacy(kDocument, derive_legacy_key("hunter2!")));
  EXPECT_EQ(rec.source_guid, source);
  EXPECT_EQ(rec.address, derive_share_keypair("hunter2!").address);
}

TEST_F(LegacyProtocol, ShareWithPaddingInvalidPasswordIsRejected) {
  auto source = client_.store(kDocument, "abc!ef");
  auto wrong = derive_legacy_key("abc!eg");
  ASSERT_FALSE(check_padding_only(server_.handle_fetch({source}).ciphertext, wrong));
  EXPECT_THROW(client_.share(source, "abc!eg", "hunter2!"), InvalidPasswordError);
}

TEST_F(LegacyProtocol, ShareWithLuckyPaddingPasswordIsAcceptedAndYieldsGarbage) {
  auto source = client_.store(kDocument, "abc!ef");
  auto blob = server_.handle_fetch({source}).ciphertext;
  PasswordSpace space{charset_from_spec("lower+special"), 6, 6, true, std::string(kLegacySpecials)};
  auto collision = find_padding_collision(blob, space, "abc!ef");
  ASSERT_TRUE(collision.found());

  auto share = client_.share(source, *collision.password, "hunter2!");
  auto garbage = client_.access_shared(share, "hunter2!", kNow);
  EXPECT_EQ(garbage, decrypt_legacy(blob, derive_legacy_key(*collision.password)));
  EXPECT_NE(garbage, kDocument);
}

TEST_F(LegacyProtocol, ServerAcceptanceMatchesPaddingOracle) {
  auto source = client_.store(kDocument, "abc!ef");
  auto blob = server_.handle_fetch({source}).ciphertext;
  auto address = derive_share_keypair("hunter2!").address;
  PasswordSpace space{charset_from_spec("lower+special"), 3, 3, true, std::string(kLegacySpecials)};
  int accepted = 0;
  space.for_each_in_partition(0, 1, [&](std::string_view pw) {
    const bool expected = check_padding_only(blob, derive_legacy_key(pw));
    bool got = true;
    try {
      server_.handle_share({source, std::string(pw), "hunter2!", address});
    } catch (const InvalidPasswordError&) {
      got = false;
    }
    EXPECT_EQ(got, expected) << pw;
    accepted += got;
    return true;
  });
  EXPECT_GT(space_size(space), 5000);
  EXPECT_LT(accepted, 200);
}

TEST_F(LegacyProtocol, AccessWithWrongPasswordIsAuthError) {
  auto share = client_.share(client_.store(kDocument, "abc!ef"), "abc!ef", "hunter2!");
  EXPECT_THROW(client_.access_shared(share, "hunter3!", kNow), AuthError);
}

TEST_F(LegacyProtocol, StaleTimestampIsAuthError) {
  auto share = client_.share(client_.store(kDocument, "abc!ef"), "abc!ef", "hunter2!");
  EXPECT_THROW(client_.access_shared(share, "hunter2!", kNow - 600), AuthError);
  EXPECT_THROW(client_.access_shared(share, "hunter2!", kNow + 600), AuthError);
}

TEST_F(LegacyProtocol, SignatureForOtherTimestampIsAuthError) {
  auto share = client_.share(client_.store(kDocument, "abc!ef"), "abc!ef", "hunter2!");
  auto sig = sign_timestamp(derive_share_keypair("hunter2!"), kNow - 1).serialize();
  EXPECT_THROW(server_.handle_access({share, kNow, Bytes(sig.begin(), sig.end())}), AuthError);
}

TEST_F(LegacyProtocol, TranscriptRevealsBothPasswords) {
  auto source = client_.store(kDocument, "abc!ef");
  client_.share(source, "abc!ef", "hunter2!");
  auto orig = server_.transcript().grep("abc!ef");
  auto sharing = server_.transcript().grep("hunter2!");
  ASSERT_EQ(orig.size(), 1u);
  ASSERT_EQ(sharing.size(), 1u);
  EXPECT_EQ(orig[0].op, "share");
  EXPECT_EQ(orig[0].raw_fields.at("original_password"), "abc!ef");
  EXPECT_EQ(sharing[0].raw_fields.at("sharing_password"), "hunter2!");
}

TEST_F(LegacyProtocol, OnlyShareTouchesPasswords) {
  auto source = client_.store(kDocument, "abc!ef");
  client_.fetch(source, "abc!ef");
  EXPECT_EQ(server_.password_uses(), 0u);
  auto share = client_.share(source, "abc!ef", "hunter2!");
  client_.access_shared(share, "hunter2!", kNow);
  EXPECT_EQ(server_.password_uses(), 1u);
}

TEST_F(LegacyProtocol, ConcurrentClientsAreLinearizable) {
  constexpr int kThreads = 8;
  constexpr int kPerThread = 25;
  std::vector<std::vector<std::pair<Guid, Bytes>>> results(kThreads);
  {
    std::vector<std::jthread> workers;
    for (int t = 0; t < kThreads; ++t) {
      workers.emplace_back([&, t] {
        LoopbackTransport transport(server_);
        LegacyClient client(transport);
        for (int i = 0; i < kPerThread; ++i) {
          auto doc = to_bytes("thread " + std::to_string(t) + " doc " + std::to_string(i));
          auto guid = client.store(doc, "abc!ef");
          EXPECT_EQ(client.fetch(guid, "abc!ef"), doc);
          results[t].emplace_back(guid, doc);
        }
      });
    }
  }
  std::set<Guid> guids;
  for (const auto& per : results) {
    for (const auto& [guid, doc] : per) {
      guids.insert(guid);
      EXPECT_EQ(client_.fetch(guid, "abc!ef"), doc);
    }
  }
  EXPECT_EQ(guids.size(), static_cast<std::size_t>(kThreads * kPerThread));
  EXPECT_EQ(server_.transcript().size(), static_cast<std::size_t>(kThreads * kPerThread * 2 + guids.size()));
}

}  // namespace
}  // namespace cfslab
