#include "bellrand/nist.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <exception>
#include <limits>
#include <mutex>
#include <numeric>

#include <boost/math/special_functions/gamma.hpp>
#include <fftw3.h>

#include "bellrand/error.hpp"

namespace bellrand::nist {

std::string_view to_string(Status s) noexcept {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::TooShort: return "too-short";
    case Status::PrerequisiteFailed: return "prerequisite-failed";
  }
  return "fail";
}

double TestResult::param(std::string_view key) const {
  for (const auto& [k, v] : params) {
    if (k == key) return v;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

double erfc(double x) { return std::erfc(x); }

double igamc(double a, double x) {
  if (!(a > 0.0) || x < 0.0) throw Error(Errc::BadParameters, "igamc needs a > 0 and x >= 0");
  if (x == 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;
  return boost::math::gamma_q(a, x);
}

namespace {

TestResult finish(std::string name, double p, double statistic, double alpha) {
  TestResult r;
  r.name = std::move(name);
  r.p_value = std::clamp(p, 0.0, 1.0);
  r.statistic = statistic;
  r.pass = r.p_value >= alpha;
  r.status = r.pass ? Status::Pass : Status::Fail;
  r.params.emplace_back("alpha", alpha);
  return r;
}

void require_nonempty(std::span<const std::uint8_t> bits, std::string_view test) {
  if (bits.empty()) throw Error(Errc::EmptySequence, std::string(test) + ": empty sequence");
}

void require_length(std::span<const std::uint8_t> bits, std::size_t min, std::string_view test) {
  if (bits.size() < min) {
    throw Error(Errc::SequenceTooShort,
                std::string(test) + ": needs at least " + std::to_string(min) + " bits, got " +
                    std::to_string(bits.size()),
                0, static_cast<std::int64_t>(min));
  }
}

std::size_t count_ones(std::span<const std::uint8_t> bits) {
  return static_cast<std::size_t>(std::count_if(bits.begin(), bits.end(), [](auto b) { return b != 0; }));
}

struct LongestRunTable {
  std::size_t block;
  std::size_t low;  // runs <= low fall into category 0
  std::vector<double> pi;
};

const LongestRunTable& longest_run_table(std::size_t n) {
  static const LongestRunTable k8{8, 1, {0.2148, 0.3672, 0.2305, 0.1875}};
  static const LongestRunTable k128{128, 4, {0.1174, 0.2430, 0.2493, 0.1752, 0.1027, 0.1124}};
  static const LongestRunTable k10000{
      10000, 10, {0.0882, 0.2092, 0.2483, 0.1933, 0.1208, 0.0675, 0.0727}};
  if (n < 6272) return k8;
  if (n < 750000) return k128;
  return k10000;
}

// FFTW planning is not thread-safe; execution is.
std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

TestResult too_short(std::string_view name, const Error& e) {
  TestResult r;
  r.name = std::string(name);
  r.p_value = std::numeric_limits<double>::quiet_NaN();
  r.pass = false;
  r.status = Status::TooShort;
  r.statistic = std::numeric_limits<double>::quiet_NaN();
  r.notes.emplace_back(e.what());
  return r;
}

}  // namespace

TestResult monobit(std::span<const std::uint8_t> bits, double alpha) {
  require_nonempty(bits, "monobit");
  const auto n = static_cast<double>(bits.size());
  const double s_n = 2.0 * static_cast<double>(count_ones(bits)) - n;
  const double s_obs = std::abs(s_n) / std::sqrt(n);
  auto r = finish("monobit", erfc(s_obs / std::sqrt(2.0)), s_obs, alpha);
  r.params.emplace_back("s_n", s_n);
  if (bits.size() < 100) r.notes.emplace_back("n < 100: below recommended length");
  return r;
}

TestResult block_frequency(std::span<const std::uint8_t> bits, std::size_t block_size,
                           double alpha) {
  if (block_size < 20) {
    throw Error(Errc::BlockTooSmall, "block_frequency: block size must be >= 20", 0,
                static_cast<std::int64_t>(block_size));
  }
  require_length(bits, block_size, "block_frequency");
  const std::size_t blocks = bits.size() / block_size;
  double sum = 0.0;
  for (std::size_t b = 0; b < blocks; ++b) {
    const auto ones = count_ones(bits.subspan(b * block_size, block_size));
    const double pi = static_cast<double>(ones) / static_cast<double>(block_size) - 0.5;
    sum += pi * pi;
  }
  const double chi2 = 4.0 * static_cast<double>(block_size) * sum;
  auto r = finish("block_frequency", igamc(static_cast<double>(blocks) / 2.0, chi2 / 2.0), chi2, alpha);
  r.params.emplace_back("M", static_cast<double>(block_size));
  r.params.emplace_back("N", static_cast<double>(blocks));
  if (static_cast<double>(block_size) <= 0.01 * static_cast<double>(bits.size())) {
    r.notes.emplace_back("M <= 0.01 n: larger block recommended");
  }
  if (blocks >= 100) r.notes.emplace_back("N >= 100 blocks: larger block recommended");
  return r;
}

TestResult runs(std::span<const std::uint8_t> bits, double alpha) {
  require_nonempty(bits, "runs");
  const auto n = static_cast<double>(bits.size());
  const double pi = static_cast<double>(count_ones(bits)) / n;
  const double tau = 2.0 / std::sqrt(n);
  if (std::abs(pi - 0.5) >= tau) {
    TestResult r = finish("runs", 0.0, 0.0, alpha);
    r.status = Status::PrerequisiteFailed;
    r.params.emplace_back("pi", pi);
    r.notes.emplace_back("frequency prerequisite |pi - 1/2| < 2/sqrt(n) not met");
    return r;
  }
  std::size_t transitions = 0;
  for (std::size_t i = 1; i < bits.size(); ++i) transitions += (bits[i] != bits[i - 1]);
  const double v_obs = static_cast<double>(transitions) + 1.0;
  const double q = pi * (1.0 - pi);
  const double p = erfc(std::abs(v_obs - 2.0 * n * q) / (2.0 * std::sqrt(2.0 * n) * q));
  auto r = finish("runs", p, v_obs, alpha);
  r.params.emplace_back("pi", pi);
  return r;
}

TestResult longest_run(std::span<const std::uint8_t> bits, double alpha) {
  require_length(bits, 128, "longest_run");
  const auto& table = longest_run_table(bits.size());
  const std::size_t categories = table.pi.size();
  const std::size_t blocks = bits.size() / table.block;
  std::vector<std::size_t> v(categories, 0);
  for (std::size_t b = 0; b < blocks; ++b) {
    std::size_t run = 0, longest = 0;
    for (const auto bit : bits.subspan(b * table.block, table.block)) {
      run = bit ? run + 1 : 0;
      longest = std::max(longest, run);
    }
    const std::size_t cat = longest <= table.low ? 0 : std::min(longest - table.low, categories - 1);
    ++v[cat];
  }
  double chi2 = 0.0;
  const auto nb = static_cast<double>(blocks);
  for (std::size_t i = 0; i < categories; ++i) {
    const double expected = nb * table.pi[i];
    chi2 += (static_cast<double>(v[i]) - expected) * (static_cast<double>(v[i]) - expected) / expected;
  }
  const double dof = static_cast<double>(categories - 1);
  auto r = finish("longest_run", igamc(dof / 2.0, chi2 / 2.0), chi2, alpha);
  r.params.emplace_back("M", static_cast<double>(table.block));
  r.params.emplace_back("K", dof);
  r.params.emplace_back("N", nb);
  return r;
}

std::size_t matrix_rank_min_length(std::size_t rows, std::size_t cols) noexcept {
  return 38 * rows * cols;
}

std::size_t gf2_rank(std::span<std::uint64_t> rows, std::size_t cols) noexcept {
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows.size(); ++col) {
    const std::uint64_t mask = std::uint64_t{1} << col;
    std::size_t pivot = rank;
    while (pivot < rows.size() && !(rows[pivot] & mask)) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      if (rows[r] & mask) rows[r] ^= rows[rank];
    }
    ++rank;
  }
  return rank;
}

std::array<double, 3> rank_probabilities(std::size_t rows, std::size_t cols) {
  const auto m = static_cast<double>(rows), q = static_cast<double>(cols);
  const auto prob = [&](std::size_t r) {
    const auto rd = static_cast<double>(r);
    double log2p = rd * (q + m - rd) - m * q;
    double prod = 1.0;
    for (std::size_t i = 0; i < r; ++i) {
      const auto id = static_cast<double>(i);
      prod *= (1.0 - std::exp2(id - q)) * (1.0 - std::exp2(id - m)) / (1.0 - std::exp2(id - rd));
    }
    return std::exp2(log2p) * prod;
  };
  const std::size_t full = std::min(rows, cols);
  const double p_full = prob(full);
  const double p_minus = full >= 1 ? prob(full - 1) : 0.0;
  return {p_full, p_minus, 1.0 - p_full - p_minus};
}

namespace {

void check_shape(std::size_t rows, std::size_t cols) {
  if (rows == 0 || cols == 0 || cols > 64) {
    throw Error(Errc::BadParameters, "matrix_rank: need 1 <= cols <= 64 and rows >= 1");
  }
}

std::size_t classify_matrix(std::span<const std::uint8_t> bits, std::size_t index, std::size_t rows,
                            std::size_t cols, std::vector<std::uint64_t>& scratch) {
  const std::size_t base = index * rows * cols;
  for (std::size_t r = 0; r < rows; ++r) {
    std::uint64_t row = 0;
    for (std::size_t c = 0; c < cols; ++c) row |= std::uint64_t{bits[base + r * cols + c] & 1u} << c;
    scratch[r] = row;
  }
  const std::size_t full = std::min(rows, cols);
  const std::size_t rank = gf2_rank(scratch, cols);
  return rank == full ? 0 : (rank + 1 == full ? 1 : 2);
}

}  // namespace

std::array<std::size_t, 3> rank_categories(std::span<const std::uint8_t> bits, std::size_t rows,
                                           std::size_t cols) {
  check_shape(rows, cols);
  const auto matrices = static_cast<std::ptrdiff_t>(bits.size() / (rows * cols));
  std::size_t c0 = 0, c1 = 0, c2 = 0;
#pragma omp parallel reduction(+ : c0, c1, c2)
  {
    std::vector<std::uint64_t> scratch(rows);
#pragma omp for schedule(static)
    for (std::ptrdiff_t k = 0; k < matrices; ++k) {
      switch (classify_matrix(bits, static_cast<std::size_t>(k), rows, cols, scratch)) {
        case 0: ++c0; break;
        case 1: ++c1; break;
        default: ++c2; break;
      }
    }
  }
  return {c0, c1, c2};
}

TestResult matrix_rank(std::span<const std::uint8_t> bits, std::size_t rows, std::size_t cols,
                       double alpha) {
  check_shape(rows, cols);
  require_length(bits, matrix_rank_min_length(rows, cols), "matrix_rank");
  const auto counts = rank_categories(bits, rows, cols);
  const auto probs = rank_probabilities(rows, cols);
  const auto n = static_cast<double>(counts[0] + counts[1] + counts[2]);
  double chi2 = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    const double expected = n * probs[i];
    chi2 += (static_cast<double>(counts[i]) - expected) * (static_cast<double>(counts[i]) - expected) / expected;
  }
  auto r = finish("matrix_rank", std::exp(-chi2 / 2.0), chi2, alpha);
  r.params.emplace_back("M", static_cast<double>(rows));
  r.params.emplace_back("Q", static_cast<double>(cols));
  r.params.emplace_back("N", n);
  r.params.emplace_back("F_full", static_cast<double>(counts[0]));
  r.params.emplace_back("F_full_minus_1", static_cast<double>(counts[1]));
  r.params.emplace_back("F_rest", static_cast<double>(counts[2]));
  return r;
}

std::vector<double> spectrum_moduli(std::span<const std::uint8_t> bits) {
  const std::size_t n = bits.size();
  if (n < 2) throw Error(Errc::SequenceTooShort, "dft_spectral: needs at least 2 bits", 0, 2);
  double* in = fftw_alloc_real(n);
  fftw_complex* out = fftw_alloc_complex(n / 2 + 1);
  fftw_plan plan;
  {
    std::lock_guard lock(fftw_planner_mutex());
    plan = fftw_plan_dft_r2c_1d(static_cast<int>(n), in, out, FFTW_ESTIMATE);
  }
  for (std::size_t i = 0; i < n; ++i) in[i] = bits[i] ? 1.0 : -1.0;
  fftw_execute(plan);
  std::vector<double> moduli(n / 2);
  for (std::size_t j = 0; j < moduli.size(); ++j) moduli[j] = std::hypot(out[j][0], out[j][1]);
  {
    std::lock_guard lock(fftw_planner_mutex());
    fftw_destroy_plan(plan);
  }
  fftw_free(out);
  fftw_free(in);
  return moduli;
}

TestResult dft_spectral(std::span<const std::uint8_t> bits, double alpha) {
  require_nonempty(bits, "dft_spectral");
  const auto moduli = spectrum_moduli(bits);
  const auto n = static_cast<double>(bits.size());
  const double threshold = std::sqrt(std::log(1.0 / 0.05) * n);
  const double n0 = 0.95 * n / 2.0;
  const auto n1 = static_cast<double>(
      std::count_if(moduli.begin(), moduli.end(), [&](double m) { return m < threshold; }));
  const double d = (n1 - n0) / std::sqrt(n * 0.95 * 0.05 / 4.0);
  auto r = finish("dft_spectral", erfc(std::abs(d) / std::sqrt(2.0)), d, alpha);
  r.params.emplace_back("threshold", threshold);
  r.params.emplace_back("N0", n0);
  r.params.emplace_back("N1", n1);
  r.notes.emplace_back("threshold sqrt(n ln(1/0.05)) (revised constant)");
  if (bits.size() < 1000) r.notes.emplace_back("n < 1000: below recommended length");
  return r;
}

namespace {

TestResult run_test(std::size_t index, std::span<const std::uint8_t> bits, double alpha,
                    std::size_t block_size) {
  try {
    switch (index) {
      case 0: return monobit(bits, alpha);
      case 1: return block_frequency(bits, block_size, alpha);
      case 2: return runs(bits, alpha);
      case 3: return longest_run(bits, alpha);
      case 4: return matrix_rank(bits, 32, 32, alpha);
      default: return dft_spectral(bits, alpha);
    }
  } catch (const Error& e) {
    if (e.code() == Errc::SequenceTooShort || e.code() == Errc::EmptySequence) {
      return too_short(kTestNames[index], e);
    }
    throw;
  }
}

void check_battery_args(double alpha, std::size_t block_size) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw Error(Errc::BadParameters, "alpha must be in (0, 1)");
  if (block_size < 20) {
    throw Error(Errc::BlockTooSmall, "block_frequency: block size must be >= 20", 0,
                static_cast<std::int64_t>(block_size));
  }
}

BatteryVerdict conclude(std::array<TestResult, 6> results) {
  BatteryVerdict v;
  v.results = std::move(results);
  v.overall = std::all_of(v.results.begin(), v.results.end(), [](const TestResult& r) { return r.pass; });
  return v;
}

}  // namespace

BatteryVerdict battery(std::span<const std::uint8_t> bits, double alpha, std::size_t block_size) {
  check_battery_args(alpha, block_size);
  std::array<TestResult, 6> results;
  std::array<std::exception_ptr, 6> failures;
#pragma omp parallel for schedule(dynamic, 1)
  for (int i = 0; i < 6; ++i) {
    const auto k = static_cast<std::size_t>(i);
    try {
      results[k] = run_test(k, bits, alpha, block_size);
    } catch (...) {
      failures[k] = std::current_exception();
    }
  }
  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }
  return conclude(std::move(results));
}

namespace serial {

std::array<std::size_t, 3> rank_categories(std::span<const std::uint8_t> bits, std::size_t rows,
                                           std::size_t cols) {
  check_shape(rows, cols);
  const std::size_t matrices = bits.size() / (rows * cols);
  std::array<std::size_t, 3> counts{};
  std::vector<std::uint64_t> scratch(rows);
  for (std::size_t k = 0; k < matrices; ++k) ++counts[classify_matrix(bits, k, rows, cols, scratch)];
  return counts;
}

BatteryVerdict battery(std::span<const std::uint8_t> bits, double alpha, std::size_t block_size) {
  check_battery_args(alpha, block_size);
  std::array<TestResult, 6> results;
  for (std::size_t i = 0; i < 6; ++i) results[i] = run_test(i, bits, alpha, block_size);
  return conclude(std::move(results));
}

}  // namespace serial

}  // namespace bellrand::nist
