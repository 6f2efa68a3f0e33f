#include "bellrand/chsh.hpp"

#include <cmath>

#include "bellrand/error.hpp"

namespace bellrand {

void CodeMap::validate() const {
  if (setting_bit < 0 || setting_bit > 1 || outcome_bit < 0 || outcome_bit > 1 ||
      setting_bit == outcome_bit) {
    throw Error(Errc::InvalidConfig, "code map needs distinct setting/outcome bits in {0,1}");
  }
}

std::uint64_t JointCounts::pair_total(int a, int b) const noexcept {
  return at(a, b, +1, +1) + at(a, b, +1, -1) + at(a, b, -1, +1) + at(a, b, -1, -1);
}

JointCounts& JointCounts::operator+=(const JointCounts& other) noexcept {
  for (std::size_t i = 0; i < cells.size(); ++i) cells[i] += other.cells[i];
  total += other.total;
  return *this;
}

std::string SignCombination::describe() const {
  static constexpr const char* kTerms[4] = {"E00", "E01", "E10", "E11"};
  std::string out;
  for (int t = 0; t < 4; ++t) {
    if (t > 0 || t == minus_term) out += (t == minus_term) ? "-" : "+";
    out += kTerms[t];
  }
  return out;
}

namespace {

void add_event(JointCounts& counts, const CoincidenceEvent& e, const CodeMap& map) {
  ++counts.at(map.setting(e.code_a), map.setting(e.code_b), map.outcome(e.code_a),
              map.outcome(e.code_b));
  ++counts.total;
}

}  // namespace

JointCounts tally(const CoincidenceSequence& seq, const CodeMap& map) {
  map.validate();
  if (seq.empty()) throw Error(Errc::EmptySequence, "no coincidences to tally");
  JointCounts counts;
  const auto n = static_cast<std::ptrdiff_t>(seq.size());
#pragma omp parallel
  {
    JointCounts local;
#pragma omp for schedule(static) nowait
    for (std::ptrdiff_t i = 0; i < n; ++i) add_event(local, seq.events[static_cast<std::size_t>(i)], map);
#pragma omp critical(bellrand_tally)
    counts += local;
  }
  return counts;
}

double correlation(const JointCounts& counts, int a, int b) {
  const auto total = counts.pair_total(a, b);
  if (total == 0) {
    throw Error(Errc::NoDataForPair,
                "no coincidences for setting pair (" + std::to_string(a) + "," + std::to_string(b) + ")",
                static_cast<std::size_t>(a), b);
  }
  const auto agree = static_cast<double>(counts.at(a, b, +1, +1) + counts.at(a, b, -1, -1));
  const auto disagree = static_cast<double>(counts.at(a, b, +1, -1) + counts.at(a, b, -1, +1));
  return (agree - disagree) / static_cast<double>(total);
}

ChshResult chsh(const JointCounts& counts, SignMode mode) {
  ChshResult r;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      r.e[a][b] = correlation(counts, a, b);
      r.pair_counts[a][b] = counts.pair_total(a, b);
    }
  }
  const std::array<double, 4> terms = {r.e[0][0], r.e[0][1], r.e[1][0], r.e[1][1]};
  const double sum = terms[0] + terms[1] + terms[2] + terms[3];
  const auto with_minus = [&](int t) { return sum - 2.0 * terms[t]; };

  if (mode == SignMode::Fixed) {
    r.sign = {1, with_minus(1)};
    r.s = r.sign.signed_value;
    return r;
  }
  r.sign = {0, with_minus(0)};
  for (int t = 1; t < 4; ++t) {
    const double v = with_minus(t);
    if (std::abs(v) > std::abs(r.sign.signed_value)) r.sign = {t, v};
  }
  r.s = std::abs(r.sign.signed_value);
  return r;
}

namespace serial {

JointCounts tally(const CoincidenceSequence& seq, const CodeMap& map) {
  map.validate();
  if (seq.empty()) throw Error(Errc::EmptySequence, "no coincidences to tally");
  JointCounts counts;
  for (const auto& e : seq.events) add_event(counts, e, map);
  return counts;
}

}  // namespace serial

}  // namespace bellrand
