#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "cfslab/attack.hpp"
#include "cfslab/crypto.hpp"
#include "cfslab/protocol/legacy_client.hpp"
#include "cfslab/protocol/server.hpp"
#include "support/temp_dir.hpp"

namespace cfslab {
namespace {

double analytic_padding_rate() {
  double p = 0;
  for (int k = 1; k <= 16; ++k) p += std::pow(256.0, -k);
  return p;
}

PasswordSpace lower_special(std::size_t lo, std::size_t hi) {
  return PasswordSpace{charset_from_spec("lower+special"), lo, hi, true, std::string(kLegacySpecials)};
}

Bytes random_text(RandomSource& rng, std::size_t size) {
  static constexpr std::string_view kAlphabet = "abcdefghijklmnopqrstuvwxyz ABCDEFGHIJKLMNOPQRSTUVWXYZ.,\n0123456789";
  Bytes out(size);
  for (auto& b : out) b = static_cast<std::uint8_t>(kAlphabet[rng.uniform(kAlphabet.size())]);
  return out;
}

CrackOptions quiet(std::size_t parallelism) {
  CrackOptions o;
  o.parallelism = parallelism;
  o.extrapolate_spaces.clear();
  return o;
}

// --- space size and enumeration ----------------------------------------------

TEST(SpaceSize, TwoSymbolExample) {
  PasswordSpace space{"a!", 2, 2, true, "!"};
  EXPECT_EQ(space_size(space), 3);
  auto all = enumerate_partition(space, 0, 1);
  EXPECT_EQ(std::set<std::string>(all.begin(), all.end()), (std::set<std::string>{"a!", "!a", "!!"}));
}

TEST(SpaceSize, LegacySixCharacterSpaceIsExact) {
  EXPECT_EQ(space_size(PasswordSpace::legacy(6)), BigCount("285302545920"));
  EXPECT_EQ(space_size(PasswordSpace::legacy(6)), boost::multiprecision::pow(BigCount(94), 6) - boost::multiprecision::pow(BigCount(86), 6));
}

TEST(SpaceSize, MonteCarloMembershipAgreesWithClosedForm) {
  const auto space = PasswordSpace::legacy(6);
  std::mt19937_64 gen(11);
  std::uniform_int_distribution<std::size_t> pick(0, space.charset.size() - 1);
  constexpr int kSamples = 200000;
  int members = 0;
  for (int i = 0; i < kSamples; ++i) {
    std::string pw(6, ' ');
    for (auto& c : pw) c = space.charset[pick(gen)];
    members += space.contains(pw);
  }
  const double expected = space_size(space).convert_to<double>() / std::pow(94.0, 6);
  EXPECT_NEAR(static_cast<double>(members) / kSamples, expected, 0.005);
}

TEST(SpaceSize, NoRequirementIsPlainPower) {
  PasswordSpace space{printable_ascii(), 12, 12, false, {}};
  EXPECT_EQ(space_size(space), boost::multiprecision::pow(BigCount(94), 12));
}

TEST(SpaceSize, HugeSpacesDoNotOverflow) {
  PasswordSpace space{printable_ascii(), 32, 32, true, std::string(kLegacySpecials)};
  EXPECT_GT(space_size(space), BigCount(1) << 200);
  EXPECT_THROW(space.enumerable_total(), std::length_error);
}

TEST(Enumeration, MatchesBruteForceMembershipForSmallSpaces) {
  const std::vector<PasswordSpace> spaces = {
      {"ab!", 1, 4, true, "!"},
      {"abcde!@", 1, 5, true, "!@"},
      {"xyz", 2, 3, false, "!"},
      {"!@", 1, 6, true, "!@"},
      lower_special(1, 3),
  };
  for (const auto& space : spaces) {
    auto all = enumerate_partition(space, 0, 1);
    std::set<std::string> unique(all.begin(), all.end());
    EXPECT_EQ(unique.size(), all.size()) << space.describe();
    EXPECT_EQ(BigCount(all.size()), space_size(space)) << space.describe();
    for (const auto& pw : all) ASSERT_TRUE(space.contains(pw)) << pw;
  }
}

TEST(Enumeration, PartitionsAreDisjointAndCovering) {
  const auto space = lower_special(1, 3);
  const auto full = enumerate_partition(space, 0, 1);
  for (std::size_t parts : {2u, 3u, 7u, 64u}) {
    std::vector<std::string> joined;
    for (std::size_t p = 0; p < parts; ++p) {
      auto slice = enumerate_partition(space, p, parts);
      joined.insert(joined.end(), slice.begin(), slice.end());
    }
    EXPECT_EQ(joined, full) << parts;
  }
}

TEST(Enumeration, FourPartsOverTwoSymbolExample) {
  PasswordSpace space{"a!", 2, 2, true, "!"};
  std::size_t total = 0;
  for (std::size_t p = 0; p < 4; ++p) total += enumerate_partition(space, p, 4).size();
  EXPECT_EQ(total, 3u);
}

TEST(Enumeration, IsDeterministic) {
  const auto space = lower_special(2, 2);
  EXPECT_EQ(enumerate_partition(space, 1, 3), enumerate_partition(space, 1, 3));
}

TEST(Enumeration, RejectsBadArguments) {
  EXPECT_THROW(enumerate_partition(lower_special(1, 1), 2, 2), std::invalid_argument);
  EXPECT_THROW(enumerate_partition(PasswordSpace{"", 1, 1, false, {}}, 0, 1), std::invalid_argument);
  EXPECT_THROW(enumerate_partition(PasswordSpace{"a", 3, 2, false, {}}, 0, 1), std::invalid_argument);
}

TEST(Enumeration, EarlyStopVisitsPrefix) {
  const auto space = lower_special(1, 2);
  std::vector<std::string> seen;
  space.for_each_in_partition(0, 1, [&](std::string_view pw) {
    seen.emplace_back(pw);
    return seen.size() < 5;
  });
  auto full = enumerate_partition(space, 0, 1);
  EXPECT_EQ(seen, std::vector<std::string>(full.begin(), full.begin() + 5));
}

// --- heuristics --------------------------------------------------------------

TEST(Heuristics, PrintableRatio) {
  EXPECT_DOUBLE_EQ(printable_ratio(as_bytes("hello\tworld\r\n")), 1.0);
  EXPECT_DOUBLE_EQ(printable_ratio(Bytes{0x00, 'a', 0xff, 'b'}), 0.5);
  EXPECT_DOUBLE_EQ(printable_ratio({}), 0.0);
}

TEST(Heuristics, MagicBytes) {
  auto png = scorer_from_spec("magic:89504e47");
  EXPECT_EQ(png(Bytes{0x89, 0x50, 0x4e, 0x47, 0x0d}), 1.0);
  EXPECT_EQ(png(Bytes{0x89, 0x50}), 0.0);
  EXPECT_THROW(scorer_from_spec("entropy"), std::invalid_argument);
}

// --- cracking ----------------------------------------------------------------

TEST(Crack, RecoversPlantedPassword) {
  SeededRandom rng(21);
  auto text = random_text(rng, 200);
  auto blob = encrypt_legacy(text, derive_legacy_key("z!"));
  auto report = crack(blob, lower_special(2, 2), quiet(1));
  auto plausible = report.above(kPlausibleTextThreshold);
  ASSERT_EQ(plausible.size(), 1u);
  EXPECT_EQ(plausible[0].password, "z!");
  EXPECT_EQ(report.best()->password, "z!");
  EXPECT_EQ(report.guesses_tried, 480u);
}

TEST(Crack, PasswordOutsideSpaceIsAbsent) {
  SeededRandom rng(22);
  auto blob = encrypt_legacy(random_text(rng, 100), derive_legacy_key("Zz!"));
  auto report = crack(blob, lower_special(1, 3), quiet(2));
  for (const auto& c : report.candidates) EXPECT_NE(c.password, "Zz!");
  EXPECT_TRUE(report.above(kPlausibleTextThreshold).empty());
}

TEST(Crack, CandidateSetIndependentOfParallelism) {
  SeededRandom rng(23);
  auto blob = encrypt_legacy(random_text(rng, 64), derive_legacy_key("q@x"));
  const auto space = lower_special(1, 3);
  auto reference = crack(blob, space, quiet(1));
  for (std::size_t p : {2u, 3u, 8u}) {
    auto report = crack(blob, space, quiet(p));
    EXPECT_EQ(report.candidates, reference.candidates) << p;
    EXPECT_EQ(report.guesses_tried, reference.guesses_tried);
  }
}

TEST(Crack, FalseCandidateCountFollowsPaddingRate) {
  SeededRandom rng(24);
  const auto space = lower_special(4, 4);
  const double wrong = space_size(space).convert_to<double>() - 1;
  for (int trial = 0; trial < 3; ++trial) {
    auto blob = encrypt_legacy(random_text(rng, 80), derive_legacy_key("ab!d"));
    auto report = crack(blob, space, quiet(1));
    const double false_candidates = static_cast<double>(report.padding_valid_count) - 1;
    EXPECT_NEAR(false_candidates / (analytic_padding_rate() * wrong), 1.0, 0.2) << trial;
  }
}

TEST(Crack, KeepThresholdFiltersButStillCounts) {
  SeededRandom rng(25);
  auto blob = encrypt_legacy(random_text(rng, 80), derive_legacy_key("k!"));
  auto options = quiet(1);
  options.keep_min_score = kPlausibleTextThreshold;
  auto filtered = crack(blob, lower_special(1, 3), options);
  auto full = crack(blob, lower_special(1, 3), quiet(1));
  EXPECT_EQ(filtered.padding_valid_count, full.padding_valid_count);
  ASSERT_EQ(filtered.candidates.size(), 1u);
  EXPECT_EQ(filtered.candidates[0].password, "k!");
}

TEST(Crack, MagicBytesHeuristicIdentifiesBinaryPlaintext) {
  SeededRandom rng(26);
  Bytes file{0x89, 'P', 'N', 'G', 0x0d, 0x0a, 0x1a, 0x0a};
  auto tail = rng.bytes(120);
  file.insert(file.end(), tail.begin(), tail.end());
  auto blob = encrypt_legacy(file, derive_legacy_key("m@"));
  auto options = quiet(2);
  options.heuristic = magic_bytes_scorer({0x89, 'P', 'N', 'G'});
  auto report = crack(blob, lower_special(2, 2), options);
  EXPECT_EQ(report.best()->password, "m@");
  EXPECT_EQ(report.best()->score, 1.0);
}

TEST(Crack, WordlistSource) {
  SeededRandom rng(27);
  auto blob = encrypt_legacy(random_text(rng, 50), derive_legacy_key("letmein!"));
  Wordlist list{{"password", "123456", "letmein!", "qwerty", std::string(40, 'x')}};
  auto report = crack(blob, list, quiet(2));
  EXPECT_EQ(report.guesses_tried, 4u);
  EXPECT_EQ(report.best()->password, "letmein!");
}

TEST(Crack, ReportIsConsistent) {
  SeededRandom rng(28);
  auto blob = encrypt_legacy(random_text(rng, 50), derive_legacy_key("a!"));
  CrackOptions options;
  auto report = crack(blob, lower_special(1, 3), options);
  EXPECT_NEAR(report.throughput, report.guesses_tried / report.elapsed_seconds, 1e-6 * report.throughput);
  EXPECT_EQ(report.extrapolations.size(), reference_spaces().size());
  auto j = report.to_json();
  EXPECT_EQ(j.at("candidates").size(), report.candidates.size());
  EXPECT_EQ(j.at("extrapolations")[0].at("size"), "285302545920");
}

// --- extrapolation -----------------------------------------------------------

TEST(Extrapolate, ThirtyHourArithmetic) {
  auto e = extrapolate(PasswordSpace::legacy(6), 2.64e6);
  EXPECT_NEAR(e.hours(), 30.0, 0.05);
  EXPECT_NEAR(required_throughput(BigCount("285302545920"), 30 * kSecondsPerHour), 2.6417e6, 1e2);
}

TEST(Extrapolate, TwelveCharactersIsOutOfReach) {
  auto e = extrapolate(PasswordSpace{printable_ascii(), 12, 12, false, {}}, 2.64e6);
  EXPECT_GT(e.years(), 1e9);
}

TEST(Extrapolate, Linear) {
  const auto space = PasswordSpace::legacy(8);
  EXPECT_DOUBLE_EQ(extrapolate(space, 1e6).seconds, 2 * extrapolate(space, 2e6).seconds);
  EXPECT_THROW(extrapolate(space, 0), std::invalid_argument);
}

// --- prefix leak -------------------------------------------------------------

TEST(PrefixLeak, SharedFortyEightBytesGiveThreeBlocks) {
  SeededRandom rng(31);
  auto key = derive_legacy_key("abc!ef");
  auto a = random_text(rng, 100);
  auto b = a;
  b[48] ^= 0x01;
  EXPECT_EQ(prefix_leak(encrypt_legacy(a, key), encrypt_legacy(b, key)), 3u);
}

TEST(PrefixLeak, IdenticalFilesShareEveryBlock) {
  SeededRandom rng(32);
  auto key = derive_legacy_key("abc!ef");
  auto a = encrypt_legacy(random_text(rng, 70), key);
  EXPECT_EQ(prefix_leak(a, a), a.block_count());
}

TEST(PrefixLeak, DifferentKeysShareNothing) {
  SeededRandom rng(33);
  auto text = random_text(rng, 70);
  EXPECT_EQ(prefix_leak(encrypt_legacy(text, derive_legacy_key("abc!ef")), encrypt_legacy(text, derive_legacy_key("abc!eg"))), 0u);
}

TEST(PrefixLeak, StoreScanReportsPairs) {
  testing::TempDir dir;
  SeededRandom rng(34);
  Server server(dir.path(), rng);
  LoopbackTransport transport(server);
  LegacyClient client(transport);
  auto header = to_bytes(std::string(40, 'H'));
  auto a = header, b = header;
  a.push_back('1');
  b.push_back('2');
  auto ga = client.store(a, "abc!ef");
  auto gb = client.store(b, "abc!ef");
  client.store(a, "xyz!uv");
  auto findings = scan_prefix_leaks(server.store());
  ASSERT_EQ(findings.size(), 1u);
  EXPECT_EQ(std::set({findings[0].first, findings[0].second}), std::set({ga, gb}));
  EXPECT_EQ(findings[0].shared_blocks, 2u);
}

// --- padding collision -------------------------------------------------------

TEST(PaddingCollision, FoundCollisionIsValidAndNotTheTruePassword) {
  SeededRandom rng(41);
  const auto space = lower_special(3, 3);
  for (int trial = 0; trial < 20; ++trial) {
    CipherBlob blob(rng.bytes(10 * kBlockSize));
    const std::string truth = "ab!";
    auto result = find_padding_collision(blob, space, truth);
    ASSERT_TRUE(result.found());
    EXPECT_NE(*result.password, truth);
    EXPECT_TRUE(check_padding_only(blob, derive_legacy_key(*result.password)));
  }
}

TEST(PaddingCollision, MeanAttemptsNearInversePaddingRate) {
  SeededRandom rng(42);
  const auto space = lower_special(3, 3);
  constexpr int kTrials = 100;
  double total = 0;
  for (int trial = 0; trial < kTrials; ++trial) {
    CipherBlob blob(rng.bytes(10 * kBlockSize));
    auto result = find_padding_collision(blob, space, "");
    ASSERT_TRUE(result.found());
    total += static_cast<double>(result.attempts);
  }
  EXPECT_NEAR(total / kTrials / (1 / analytic_padding_rate()), 1.0, 0.25);
}

TEST(PaddingCollision, ExhaustedSpaceReportsNotFound) {
  CipherBlob blob(Bytes(16, 0));
  PasswordSpace tiny{"a!", 1, 1, true, "!"};
  auto key = derive_legacy_key("!");
  if (check_padding_only(blob, key)) GTEST_SKIP();
  auto result = find_padding_collision(blob, tiny, "x");
  EXPECT_FALSE(result.found());
  EXPECT_EQ(result.attempts, 1u);
}

// --- secrecy audit -----------------------------------------------------------

TEST(SecrecyAudit, ReportsEntriesPerSecret) {
  Transcript t;
  t.append("store", {{"ciphertext", "AAAA"}});
  t.append("share", {{"original_password", "abc!ef"}, {"sharing_password", "hunter2!"}});
  auto report = secrecy_audit(t, {"abc!ef", "hunter2!", "unused!"});
  ASSERT_EQ(report.exposures.size(), 3u);
  EXPECT_EQ(report.exposures[0].arrival_indices, std::vector<std::uint64_t>{1});
  EXPECT_EQ(report.exposures[1].ops, std::vector<std::string>{"share"});
  EXPECT_FALSE(report.exposures[2].exposed());
  EXPECT_EQ(report.exposed_count(), 2u);
}

TEST(SecrecyAudit, LegacyStoreOnlySessionExposesNothing) {
  testing::TempDir dir;
  Server server(dir.path());
  LoopbackTransport transport(server);
  LegacyClient client(transport);
  auto guid = client.store(as_bytes("notes"), "abc!ef");
  client.fetch(guid, "abc!ef");
  EXPECT_EQ(secrecy_audit(server.transcript(), {"abc!ef"}).exposed_count(), 0u);
}

// --- bench -------------------------------------------------------------------

TEST(Bench, ShortSampleProducesPositiveThroughput) {
  auto result = bench_legacy_guessing(0.2, 0.0);
  EXPECT_GT(result.guesses, 0u);
  EXPECT_GT(result.guesses_per_second, 0);
  EXPECT_FALSE(result.hardware.empty());
}

}  // namespace
}  // namespace cfslab
