#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "bellrand/encode.hpp"
#include "bellrand/error.hpp"
#include "bellrand/nist.hpp"
#include "longdist35_fixture.hpp"

using namespace bellrand;

TEST(EncodeCodes, TwoBitsMsbFirst) {
  EXPECT_EQ(encode_codes(std::vector<std::uint8_t>{0}).to_string(), "00");
  EXPECT_EQ(encode_codes(std::vector<std::uint8_t>{3}).to_string(), "11");
  EXPECT_EQ(encode_codes(std::vector<std::uint8_t>{1, 1, 2}).to_string(), "010110");
  EXPECT_THROW(encode_codes(std::vector<std::uint8_t>{}), Error);
}

TEST(EncodeCodes, Longdist35HeadGives58Bits) {
  const auto codes = parse_code_file(fixture::kLongdist35AliceC);
  const auto seq = encode_codes(codes);
  EXPECT_EQ(seq.size(), 58u);
  EXPECT_FALSE(seq.encoding.empty());
}

TEST(EncodeCodes, DecodeIsInverse) {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<int> code(0, 3), len(1, 200);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::uint8_t> codes(static_cast<std::size_t>(len(rng)));
    for (auto& c : codes) c = static_cast<std::uint8_t>(code(rng));
    EXPECT_EQ(decode_codes(encode_codes(codes).bits), codes);
  }
  EXPECT_THROW(decode_codes(std::vector<std::uint8_t>{1}), Error);
}

TEST(EncodeJoint, FourBitsPerCoincidence) {
  CoincidenceSequence one;
  one.events.push_back({0.0, 0, 3});
  EXPECT_EQ(encode_joint(one).to_string(), "0011");

  CoincidenceSequence two;
  two.events.push_back({0.0, 1, 2});
  two.events.push_back({1.0, 3, 0});
  EXPECT_EQ(encode_joint(two).to_string(), "01101100");
  EXPECT_THROW(encode_joint(CoincidenceSequence{}), Error);

  std::mt19937_64 rng(2);
  std::uniform_int_distribution<int> code(0, 3);
  CoincidenceSequence many;
  for (int i = 0; i < 97; ++i) many.events.push_back({i * 1.0, static_cast<std::uint8_t>(code(rng)), 1});
  EXPECT_EQ(encode_joint(many).size(), 4 * many.size());
  EXPECT_EQ(encode_alice_codes(many).size(), 2 * many.size());
}

TEST(BinarizeTimes, MedianThreshold) {
  EXPECT_EQ(binarize_times(std::vector<double>{0, 1, 3, 4}).to_string(), "010");
  EXPECT_EQ(binarize_times(std::vector<double>{0, 1, 2, 3, 4, 5}).to_string(), "00000");
  // Even number of deltas: median is the mean of the middle two (1.5).
  EXPECT_EQ(binarize_times(std::vector<double>{0, 1, 3, 4, 6}).to_string(), "0101");
}

TEST(BinarizeTimes, Errors) {
  try {
    binarize_times(std::vector<double>{0.0, 1.0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::TooShort);
  }
  EXPECT_THROW(binarize_times(std::vector<double>{0.0, 1.0, 1.0}), Error);
}

// Ones fraction never exceeds 1/2 and is at least 1/2 - ties/n.
TEST(BinarizeTimes, OnesFractionBounds) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> gap(1, 6), len(3, 300);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<double> t{0.0};
    const int n = len(rng);
    for (int i = 1; i < n; ++i) t.push_back(t.back() + gap(rng));
    const auto seq = binarize_times(t);
    std::vector<double> d;
    for (std::size_t i = 1; i < t.size(); ++i) d.push_back(t[i] - t[i - 1]);
    auto sorted = d;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t m = sorted.size();
    const double median = m % 2 ? sorted[m / 2] : 0.5 * (sorted[m / 2 - 1] + sorted[m / 2]);
    const auto ties = static_cast<double>(std::count(d.begin(), d.end(), median));
    const auto ones = static_cast<double>(std::count(seq.bits.begin(), seq.bits.end(), 1));
    const double frac = ones / static_cast<double>(m);
    EXPECT_LE(frac, 0.5);
    EXPECT_GE(frac, 0.5 - ties / static_cast<double>(m) - 0.5 / static_cast<double>(m));
  }
}

TEST(BinarizeTimes, PoissonArrivalsPassMonobit) {
  int passes = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    std::mt19937_64 rng(seed);
    std::exponential_distribution<double> gap(1.0);
    std::vector<double> t{0.0};
    for (int i = 0; i < 100000; ++i) t.push_back(t.back() + gap(rng));
    passes += nist::monobit(binarize_times(t).view()).pass;
  }
  EXPECT_EQ(passes, 20);
}

TEST(BinarySequence, FromTextSkipsWhitespace) {
  EXPECT_EQ(BinarySequence::from_text("01 1\n0\r\n").to_string(), "0110");
  EXPECT_THROW(BinarySequence::from_text("0102"), Error);
}
