#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "bellrand/complexity.hpp"
#include "bellrand/error.hpp"
#include "bellrand/synth.hpp"
#include "lz_cases.hpp"
#include "oracles.hpp"

using namespace bellrand;

namespace {

std::size_t count(std::string_view s) { return lz76_count(oracle::from_string(s)); }

}  // namespace

TEST(Lz76, HandParsedExamples) {
  EXPECT_EQ(count("0101010101"), 3u);
  EXPECT_EQ(count("00000000"), 2u);
  EXPECT_EQ(count("0"), 1u);
  EXPECT_EQ(count(""), 0u);
  // 0 | 001 | 10 | 100 | 1000 | 101 ; classic worked example
  EXPECT_EQ(count("0001101001000101"), 6u);
}

TEST(Lz76, WordStartsFollowTheParse) {
  const auto starts = lz76_word_starts(oracle::from_string("0001101001000101"));
  EXPECT_EQ(starts, (std::vector<std::size_t>{0, 1, 4, 6, 9, 13}));
}

TEST(Lz76, OracleAgreesOnCraftedCases) {
  for (const auto& s : lz_cases::crafted()) {
    const auto bits = oracle::from_string(s);
    const auto expected = oracle::lz76_count(s);
    EXPECT_EQ(lz76_count(bits), expected) << s;
    EXPECT_EQ(serial::lz76_count(bits), expected) << s;
  }
}

TEST(Lz76, OracleAgreesOnRandomStrings) {
  std::mt19937_64 rng(12345);
  std::uniform_int_distribution<std::size_t> len(1, 512);
  std::uniform_real_distribution<double> bias(0.02, 0.98);
  for (int trial = 0; trial < 1500; ++trial) {
    const std::size_t n = len(rng);
    std::bernoulli_distribution coin(bias(rng));
    std::string s;
    for (std::size_t i = 0; i < n; ++i) s.push_back(coin(rng) ? '1' : '0');
    const auto bits = oracle::from_string(s);
    const auto expected = oracle::lz76_count(s);
    ASSERT_EQ(lz76_count(bits), expected) << s;
    ASSERT_EQ(serial::lz76_count(bits), expected) << s;
  }
}

TEST(Lz76, StructuralProperties) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::size_t> len(1, 300);
  for (int trial = 0; trial < 200; ++trial) {
    const auto bits = oracle::random_bits(len(rng), rng());
    const auto c = lz76_count(bits);
    EXPECT_GE(c, 1u);
    EXPECT_LE(c, bits.size());

    // Complement invariance.
    auto comp = bits;
    for (auto& b : comp) b ^= 1;
    EXPECT_EQ(lz76_count(comp), c);

    // Doubling adds at most one word.
    auto twice = bits;
    twice.insert(twice.end(), bits.begin(), bits.end());
    EXPECT_LE(lz76_count(twice), c + 1);

    // Prefix counts are non-decreasing.
    std::size_t prev = 0;
    for (std::size_t m = 1; m <= bits.size(); ++m) {
      const auto cm = lz76_count(std::span(bits).first(m));
      EXPECT_GE(cm, prev);
      prev = cm;
    }
    EXPECT_EQ(prev, c);
  }
}

TEST(NormalizedK, Values) {
  EXPECT_NEAR(normalized_k(3, 10), 3.0 * std::log2(10.0) / 10.0, 1e-15);
  EXPECT_NEAR(normalized_k(3, 10), 0.9966, 1e-4);
  EXPECT_DOUBLE_EQ(normalized_k(2, 2), 1.0);
  try {
    normalized_k(1, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::LengthTooShort);
  }
  EXPECT_THROW(complexity(std::vector<std::uint8_t>{1}), Error);
}

TEST(NormalizedK, ShortRandomStringsExceedOne) {
  // "01": two words, K = 2 * log2(2) / 2 = 1; short random strings sit above 1.
  EXPECT_DOUBLE_EQ(complexity(oracle::from_string("01")).k, 1.0);
  double sum = 0.0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) sum += complexity(oracle::random_bits(64, seed)).k;
  EXPECT_GT(sum / 50.0, 1.0);
}

TEST(Profile, MatchesDirectComputationOnPrefixes) {
  const auto bits = oracle::random_bits(5000, 3);
  const std::vector<std::size_t> checkpoints = {2, 10, 333, 1000, 4999, 5000};
  const auto profile = complexity_profile(bits, checkpoints);
  ASSERT_EQ(profile.size(), checkpoints.size());
  for (std::size_t i = 0; i < profile.size(); ++i) {
    const auto prefix = std::span(bits).first(checkpoints[i]);
    EXPECT_EQ(profile[i].c, lz76_count(prefix));
    EXPECT_EQ(profile[i].n, checkpoints[i]);
    EXPECT_DOUBLE_EQ(profile[i].k, complexity(prefix).k);
  }
}

TEST(Profile, PeriodicInputDecays) {
  const auto seq = gen_reference(reference::Periodic{"0010111"}, 10000);
  const std::vector<std::size_t> checkpoints = {100, 1000, 10000};
  const auto p = complexity_profile(seq.view(), checkpoints);
  EXPECT_GT(p[0].k, p[1].k);
  EXPECT_GT(p[1].k, p[2].k);
  EXPECT_EQ(p[1].c, p[2].c);
}

TEST(Profile, PrngStaysNearOne) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto seq = gen_reference(reference::Prng{seed}, 100000);
    const std::vector<std::size_t> checkpoints = {1000, 10000, 100000};
    for (const auto& p : complexity_profile(seq.view(), checkpoints)) {
      EXPECT_GE(p.k, 0.9) << p.n;
      EXPECT_LE(p.k, 1.2) << p.n;
    }
  }
}

TEST(Profile, BadCheckpoints) {
  const auto bits = oracle::random_bits(100, 1);
  for (const auto& cps : {std::vector<std::size_t>{10, 10}, std::vector<std::size_t>{20, 10},
                          std::vector<std::size_t>{101}, std::vector<std::size_t>{1}}) {
    try {
      complexity_profile(bits, cps);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), Errc::BadCheckpoint);
    }
  }
}

TEST(Regimes, PeriodicQuasiPeriodicAndLogistic) {
  EXPECT_LT(complexity(gen_reference(reference::Periodic{"0110"}, 10000).view()).k, 0.1);
  EXPECT_LT(complexity(gen_reference(reference::QuasiPeriodic{}, 100000).view()).k, 0.1);
  // Fully chaotic logistic map with the generating-partition threshold
  // behaves like a fair coin.
  const double k = complexity(gen_reference(reference::Logistic{}, 100000).view()).k;
  EXPECT_GT(k, 0.9);
}
