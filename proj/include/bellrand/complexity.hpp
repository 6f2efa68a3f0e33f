#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace bellrand {

/// Lempel-Ziv (1976) production complexity with the normalization
/// K(N) = c(N) * log2(N) / N.
struct ComplexityResult {
  std::size_t c = 0;
  std::size_t n = 0;
  double k = 0.0;
};

struct ProfilePoint {
  std::size_t n = 0;
  std::size_t c = 0;
  double k = 0.0;
};

/// Start offsets of the words of the exhaustive-history parse. Each word is
/// the longest prefix copyable from an earlier start (overlap allowed) plus
/// one innovation symbol; the last word may be a pure copy.
///
/// Runs in O(n log n): a suffix array gives, for every position, the
/// nearest lexicographic neighbours with a smaller start, and one of those
/// two attains the longest previous factor.
std::vector<std::size_t> lz76_word_starts(std::span<const std::uint8_t> bits);

std::size_t lz76_count(std::span<const std::uint8_t> bits);

double normalized_k(std::size_t c, std::size_t n);

ComplexityResult complexity(std::span<const std::uint8_t> bits);

/// K on each prefix length in `checkpoints` (strictly increasing, each in
/// [2, n]) from a single parse of the full string.
std::vector<ProfilePoint> complexity_profile(std::span<const std::uint8_t> bits,
                                             std::span<const std::size_t> checkpoints);

namespace serial {

/// Kaspar-Schuster scan, quadratic in the worst case. Kept as the baseline
/// for the benchmark and as a second route in tests.
std::size_t lz76_count(std::span<const std::uint8_t> bits);

}  // namespace serial

}  // namespace bellrand
