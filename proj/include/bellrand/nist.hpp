#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace bellrand::nist {

inline constexpr double kDefaultAlpha = 0.01;
inline constexpr std::size_t kDefaultBlockSize = 128;

enum class Status { Pass, Fail, TooShort, PrerequisiteFailed };

std::string_view to_string(Status s) noexcept;

/// Outcome of one test. For Status::TooShort no p-value is computed and
/// `p_value` is NaN; every other status carries p in [0, 1] and
/// pass == (p_value >= alpha).
struct TestResult {
  std::string name;
  double p_value = 0.0;
  bool pass = false;
  double statistic = 0.0;
  Status status = Status::Fail;
  std::vector<std::pair<std::string, double>> params;
  std::vector<std::string> notes;

  double param(std::string_view key) const;
};

struct BatteryVerdict {
  std::array<TestResult, 6> results;
  bool overall = false;
};

inline constexpr std::array<std::string_view, 6> kTestNames = {
    "monobit", "block_frequency", "runs", "longest_run", "matrix_rank", "dft_spectral"};

// Special functions
double erfc(double x);
/// Regularized upper incomplete gamma Q(a, x).
double igamc(double a, double x);

TestResult monobit(std::span<const std::uint8_t> bits, double alpha = kDefaultAlpha);
TestResult block_frequency(std::span<const std::uint8_t> bits,
                           std::size_t block_size = kDefaultBlockSize,
                           double alpha = kDefaultAlpha);
TestResult runs(std::span<const std::uint8_t> bits, double alpha = kDefaultAlpha);
TestResult longest_run(std::span<const std::uint8_t> bits, double alpha = kDefaultAlpha);
TestResult matrix_rank(std::span<const std::uint8_t> bits, std::size_t rows = 32,
                       std::size_t cols = 32, double alpha = kDefaultAlpha);
TestResult dft_spectral(std::span<const std::uint8_t> bits, double alpha = kDefaultAlpha);

/// Runs the six tests (concurrently under OpenMP). A test whose length
/// minimum is not met yields Status::TooShort and counts as not passed.
BatteryVerdict battery(std::span<const std::uint8_t> bits, double alpha = kDefaultAlpha,
                       std::size_t block_size = kDefaultBlockSize);

// Building blocks exposed for tests and benchmarks.

/// Minimum length needed by matrix_rank for the given shape (38 matrices).
std::size_t matrix_rank_min_length(std::size_t rows, std::size_t cols) noexcept;

/// Rank over GF(2) of a matrix whose rows are bit masks of width `cols` (<= 64).
std::size_t gf2_rank(std::span<std::uint64_t> rows, std::size_t cols) noexcept;

/// Probabilities that a random rows x cols GF(2) matrix has full rank,
/// full rank minus one, or less.
std::array<double, 3> rank_probabilities(std::size_t rows, std::size_t cols);

/// Matrix counts per rank category (full, full-1, rest); OpenMP over matrices.
std::array<std::size_t, 3> rank_categories(std::span<const std::uint8_t> bits, std::size_t rows,
                                           std::size_t cols);

/// |DFT| of the +/-1 mapped sequence at frequencies 0..n/2-1.
std::vector<double> spectrum_moduli(std::span<const std::uint8_t> bits);

namespace serial {

std::array<std::size_t, 3> rank_categories(std::span<const std::uint8_t> bits, std::size_t rows,
                                           std::size_t cols);
BatteryVerdict battery(std::span<const std::uint8_t> bits, double alpha = kDefaultAlpha,
                       std::size_t block_size = kDefaultBlockSize);

}  // namespace serial

}  // namespace bellrand::nist
