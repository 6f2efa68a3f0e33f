#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "bellrand/coincidence.hpp"

namespace bellrand {

/// Which bit of the two-bit code carries the analyzer setting and which the
/// detector that fired. Outcome bit 0 decodes to +1, bit 1 to -1.
struct CodeMap {
  int setting_bit = 1;
  int outcome_bit = 0;

  void validate() const;
  int setting(std::uint8_t code) const noexcept { return (code >> setting_bit) & 1; }
  int outcome(std::uint8_t code) const noexcept { return ((code >> outcome_bit) & 1) ? -1 : +1; }
  std::uint8_t encode(int setting, int outcome) const noexcept {
    return static_cast<std::uint8_t>((setting << setting_bit) | ((outcome < 0 ? 1 : 0) << outcome_bit));
  }
};

/// 16 joint-outcome counters indexed by (a_setting, b_setting, a_outcome, b_outcome).
struct JointCounts {
  std::array<std::uint64_t, 16> cells{};
  std::uint64_t total = 0;

  static constexpr std::size_t index(int a, int b, int out_a, int out_b) noexcept {
    return static_cast<std::size_t>(a * 8 + b * 4 + (out_a > 0 ? 0 : 2) + (out_b > 0 ? 0 : 1));
  }
  std::uint64_t at(int a, int b, int out_a, int out_b) const noexcept {
    return cells[index(a, b, out_a, out_b)];
  }
  std::uint64_t& at(int a, int b, int out_a, int out_b) noexcept {
    return cells[index(a, b, out_a, out_b)];
  }
  std::uint64_t pair_total(int a, int b) const noexcept;

  JointCounts& operator+=(const JointCounts& other) noexcept;
  friend bool operator==(const JointCounts&, const JointCounts&) = default;
};

enum class SignMode { Auto, Fixed };

/// Position of the single minus sign among the terms E00, E01, E10, E11.
/// The fixed CHSH combination E00 - E01 + E10 + E11 has minus_term = 1.
struct SignCombination {
  int minus_term = 1;
  double signed_value = 0.0;

  std::string describe() const;
};

struct ChshResult {
  std::array<std::array<double, 2>, 2> e{};
  std::array<std::array<std::uint64_t, 2>, 2> pair_counts{};
  double s = 0.0;
  SignCombination sign;
};

/// Decodes every coincidence into the joint-outcome table; parallel over
/// chunks with per-thread partial tables summed at the end.
JointCounts tally(const CoincidenceSequence& seq, const CodeMap& map);

double correlation(const JointCounts& counts, int a, int b);

/// Fixed: S = E00 - E01 + E10 + E11. Auto: the four single-minus placements
/// are evaluated and the largest |S| is reported (s >= 0).
ChshResult chsh(const JointCounts& counts, SignMode mode = SignMode::Auto);

namespace serial {

JointCounts tally(const CoincidenceSequence& seq, const CodeMap& map);

}  // namespace serial

}  // namespace bellrand
