#include "bellrand/complexity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bellrand/error.hpp"
#include "suffix_array.hpp"

namespace bellrand {

namespace {

constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

std::size_t common_prefix(std::span<const std::uint8_t> s, std::size_t earlier, std::size_t pos) {
  std::size_t l = 0;
  while (pos + l < s.size() && s[earlier + l] == s[pos + l]) ++l;
  return l;
}

}  // namespace

std::vector<std::size_t> lz76_word_starts(std::span<const std::uint8_t> bits) {
  const std::size_t n = bits.size();
  std::vector<std::size_t> starts;
  if (n == 0) return starts;

  std::uint32_t sigma = 0;
  for (const auto b : bits) sigma = std::max<std::uint32_t>(sigma, b);
  const auto sa = detail::suffix_array(bits, sigma + 1);

  // For each text position: nearest suffix before / after it in SA order
  // whose start is smaller. The longest previous factor is the larger of
  // the two common prefixes.
  std::vector<std::uint32_t> psv(n, kNone), nsv(n, kNone), stack;
  stack.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    while (!stack.empty() && stack.back() > sa[j]) stack.pop_back();
    psv[sa[j]] = stack.empty() ? kNone : stack.back();
    stack.push_back(sa[j]);
  }
  stack.clear();
  for (std::size_t j = n; j-- > 0;) {
    while (!stack.empty() && stack.back() > sa[j]) stack.pop_back();
    nsv[sa[j]] = stack.empty() ? kNone : stack.back();
    stack.push_back(sa[j]);
  }

  std::size_t i = 0;
  while (i < n) {
    starts.push_back(i);
    std::size_t copy = 0;
    if (psv[i] != kNone) copy = common_prefix(bits, psv[i], i);
    if (nsv[i] != kNone) copy = std::max(copy, common_prefix(bits, nsv[i], i));
    i += copy + 1;
  }
  return starts;
}

std::size_t lz76_count(std::span<const std::uint8_t> bits) { return lz76_word_starts(bits).size(); }

double normalized_k(std::size_t c, std::size_t n) {
  if (n < 2) throw Error(Errc::LengthTooShort, "normalized complexity needs n >= 2");
  return static_cast<double>(c) * std::log2(static_cast<double>(n)) / static_cast<double>(n);
}

ComplexityResult complexity(std::span<const std::uint8_t> bits) {
  if (bits.size() < 2) throw Error(Errc::LengthTooShort, "normalized complexity needs n >= 2");
  const auto c = lz76_count(bits);
  return {c, bits.size(), normalized_k(c, bits.size())};
}

std::vector<ProfilePoint> complexity_profile(std::span<const std::uint8_t> bits,
                                             std::span<const std::size_t> checkpoints) {
  std::size_t prev = 0;
  for (const auto m : checkpoints) {
    if (m < 2 || m > bits.size() || m <= prev) {
      throw Error(Errc::BadCheckpoint,
                  "checkpoint " + std::to_string(m) + " must be increasing and within [2, n]", 0,
                  static_cast<std::int64_t>(m));
    }
    prev = m;
  }
  // A prefix of length m parses into exactly the words of the full parse
  // that start before m; the word straddling m becomes its terminal word.
  const auto starts = lz76_word_starts(bits);
  std::vector<ProfilePoint> out;
  out.reserve(checkpoints.size());
  auto it = starts.begin();
  for (const auto m : checkpoints) {
    it = std::lower_bound(it, starts.end(), m);
    const auto c = static_cast<std::size_t>(it - starts.begin());
    out.push_back({m, c, normalized_k(c, m)});
  }
  return out;
}

namespace serial {

std::size_t lz76_count(std::span<const std::uint8_t> s) {
  const std::size_t n = s.size();
  if (n == 0) return 0;
  if (n == 1) return 1;
  std::size_t c = 1, l = 1, i = 0, k = 1, k_max = 1;
  while (true) {
    if (s[i + k - 1] == s[l + k - 1]) {
      ++k;
      if (l + k > n) {
        ++c;
        break;
      }
    } else {
      k_max = std::max(k, k_max);
      ++i;
      if (i == l) {
        ++c;
        l += k_max;
        if (l + 1 > n) break;
        i = 0;
        k = 1;
        k_max = 1;
      } else {
        k = 1;
      }
    }
  }
  return c;
}

}  // namespace serial

}  // namespace bellrand
