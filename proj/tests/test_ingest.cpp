#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "bellrand/error.hpp"
#include "bellrand/ingest.hpp"
#include "bellrand/synth.hpp"
#include "longdist35_fixture.hpp"

using namespace bellrand;

namespace {

Errc error_code(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected bellrand::Error";
  return Errc::IoFailure;
}

std::size_t error_line(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.line();
  }
  return 0;
}

}  // namespace

TEST(ParseTimeFile, ReadsScientificNotation) {
  const auto t = parse_time_file("2.1634050886170270e-006\n8.0075823256314910e-006");
  ASSERT_EQ(t.size(), 2u);
  EXPECT_EQ(t[0], 2.1634050886170270e-6);
  EXPECT_EQ(t[1], 8.0075823256314910e-6);
}

TEST(ParseTimeFile, AcceptsPlainNotationCrlfAndBlankLines) {
  const auto t = parse_time_file("  0.5\r\n\r\n1.25 \r\n\n\n");
  EXPECT_EQ(t, (std::vector<double>{0.5, 1.25}));
}

TEST(ParseTimeFile, EqualTimesAreNonMonotonic) {
  EXPECT_EQ(error_code([] { parse_time_file("0.0\n0.0"); }), Errc::NonMonotonicTime);
  EXPECT_EQ(error_line([] { parse_time_file("0.0\n0.0"); }), 2u);
}

TEST(ParseTimeFile, GarbageIsMalformed) {
  EXPECT_EQ(error_code([] { parse_time_file("1e-3\nabc"); }), Errc::MalformedLine);
  EXPECT_EQ(error_line([] { parse_time_file("1e-3\nabc"); }), 2u);
  EXPECT_EQ(error_code([] { parse_time_file("1e-3 2e-3"); }), Errc::MalformedLine);
  EXPECT_EQ(error_code([] { parse_time_file("-1.0"); }), Errc::MalformedLine);
}

TEST(ParseTimeFile, EmptyIsAnError) {
  EXPECT_EQ(error_code([] { parse_time_file(""); }), Errc::EmptyFile);
  EXPECT_EQ(error_code([] { parse_time_file("\n \n\r\n"); }), Errc::EmptyFile);
}

TEST(ParseCodeFile, ReadsCodes) {
  EXPECT_EQ(parse_code_file("1\n1\n2"), (std::vector<std::uint8_t>{1, 1, 2}));
  EXPECT_EQ(parse_code_file("0\n3"), (std::vector<std::uint8_t>{0, 3}));
}

TEST(ParseCodeFile, RejectsOutOfRange) {
  try {
    parse_code_file("4");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::CodeOutOfRange);
    EXPECT_EQ(e.line(), 1u);
    EXPECT_EQ(e.value(), 4);
  }
  EXPECT_EQ(error_code([] { parse_code_file("1\n-1"); }), Errc::CodeOutOfRange);
  EXPECT_EQ(error_code([] { parse_code_file("1\n1.5"); }), Errc::MalformedLine);
  EXPECT_EQ(error_code([] { parse_code_file(""); }), Errc::EmptyFile);
}

TEST(LoadStation, Longdist35HeadColumns) {
  const auto s = load_station(fixture::kLongdist35AliceV, fixture::kLongdist35AliceC, Station::Alice);
  EXPECT_EQ(s.size(), 29u);
  EXPECT_EQ(s.events.front().code, 1);
  EXPECT_EQ(s.events.back().t, 5.2821928900505510e-4);
  EXPECT_EQ(s.events.back().code, 1);
}

TEST(LoadStation, LengthMismatch) {
  try {
    load_station("1\n2", "0\n1\n2", Station::Bob);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::LengthMismatch);
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.value(), 3);
  }
}

TEST(LoadStation, FormatRoundTripIsExact) {
  const auto s = load_station(fixture::kLongdist35AliceV, fixture::kLongdist35AliceC, Station::Alice);
  const auto again = load_station(format_time_file(s), format_code_file(s), Station::Alice);
  EXPECT_EQ(again, s);
}

// Property: a generated file pair is accepted iff times are strictly
// increasing, codes are in range and line counts agree.
TEST(LoadStation, AcceptanceMatchesValidityOnFuzzedInputs) {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> len(1, 12), pick(0, 9), code(-1, 4);
  for (int trial = 0; trial < 500; ++trial) {
    const int nv = len(rng);
    const int nc = pick(rng) < 8 ? nv : len(rng);
    std::string v, c;
    double t = 0.0;
    bool monotone = true, in_range = true;
    double prev = -1.0;
    for (int i = 0; i < nv; ++i) {
      t += (pick(rng) == 0) ? 0.0 : 0.001 * (1 + pick(rng));
      if (pick(rng) == 0 && i > 0) t -= 0.0005;
      if (t <= prev) monotone = false;
      prev = t;
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.16e\n", t);
      v += buf;
    }
    for (int i = 0; i < nc; ++i) {
      const int k = pick(rng) == 0 ? code(rng) : pick(rng) % 4;
      if (k < 0 || k > 3) in_range = false;
      c += std::to_string(k) + "\n";
    }
    const bool valid = monotone && in_range && nv == nc;
    bool accepted = true;
    try {
      const auto s = load_station(v, c, Station::Alice);
      for (std::size_t i = 1; i < s.size(); ++i) ASSERT_LT(s.events[i - 1].t, s.events[i].t);
    } catch (const Error&) {
      accepted = false;
    }
    EXPECT_EQ(accepted, valid) << "trial " << trial;
  }
}

TEST(LoadRun, SynthRoundTripThroughFiles) {
  SynthConfig cfg;
  cfg.name = "roundtrip";
  cfg.pair_rate = 2000;
  cfg.duration = 0.5;
  cfg.efficiency = 0.7;
  cfg.jitter_sigma = 1e-9;
  cfg.drift_offset = 3e-7;
  cfg.seed = 11;
  const auto bundle = gen_bell_run(cfg);
  const auto dir = std::filesystem::temp_directory_path() / "bellrand_ingest_rt";
  std::filesystem::remove_all(dir);
  write_run(bundle, dir);
  const auto loaded = load_run(dir / "roundtrip", Condition::Synthetic);
  EXPECT_EQ(loaded, bundle);
  std::filesystem::remove_all(dir);
}

TEST(LoadRun, DirectoryExpandsToSortedPrefixes) {
  const auto dir = std::filesystem::temp_directory_path() / "bellrand_resolve";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  for (const auto* name : {"b_alice_V.dat", "a_alice_V.dat", "a_alice_C.dat", "notes.txt"}) {
    std::ofstream(dir / name) << "1\n";
  }
  const auto prefixes = resolve_run_prefixes(dir);
  ASSERT_EQ(prefixes.size(), 2u);
  EXPECT_EQ(prefixes[0].filename(), "a");
  EXPECT_EQ(prefixes[1].filename(), "b");
  EXPECT_EQ(resolve_run_prefixes(dir / "a").front(), dir / "a");
  std::filesystem::remove_all(dir);
}

TEST(LoadRun, MissingFileIsIoFailure) {
  EXPECT_EQ(error_code([] { load_run("/nonexistent/run", Condition::RemoteSwitched); }), Errc::IoFailure);
}
