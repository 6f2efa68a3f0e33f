#include "suffix_array.hpp"

#include <algorithm>
#include <limits>

#include "bellrand/error.hpp"

namespace bellrand::detail {

std::vector<std::uint32_t> suffix_array(std::span<const std::uint8_t> text, std::uint32_t sigma) {
  const std::size_t n = text.size();
  if (n >= std::numeric_limits<std::uint32_t>::max()) {
    throw Error(Errc::BadParameters, "sequence too long for suffix array");
  }
  std::vector<std::uint32_t> sa(n), rank(n), tmp(n), second(n);
  if (n == 0) return sa;

  std::vector<std::uint32_t> count(std::max<std::size_t>(n, sigma) + 1, 0);
  for (std::size_t i = 0; i < n; ++i) ++count[text[i]];
  for (std::size_t c = 1; c < count.size(); ++c) count[c] += count[c - 1];
  for (std::size_t i = n; i-- > 0;) sa[--count[text[i]]] = static_cast<std::uint32_t>(i);
  for (std::size_t i = 0; i < n; ++i) rank[i] = text[i];

  std::uint32_t classes = sigma;
  for (std::size_t k = 1;; k <<= 1) {
    // Order by second key: suffixes with no second half first.
    std::size_t p = 0;
    for (std::size_t i = n - std::min(k, n); i < n; ++i) second[p++] = static_cast<std::uint32_t>(i);
    for (std::size_t j = 0; j < n; ++j) {
      if (sa[j] >= k) second[p++] = static_cast<std::uint32_t>(sa[j] - k);
    }
    // Stable counting sort by first key.
    std::fill(count.begin(), count.begin() + classes + 1, 0);
    for (std::size_t i = 0; i < n; ++i) ++count[rank[i]];
    for (std::size_t c = 1; c <= classes; ++c) count[c] += count[c - 1];
    for (std::size_t j = n; j-- > 0;) sa[--count[rank[second[j]]]] = second[j];

    tmp[sa[0]] = 0;
    std::uint32_t r = 0;
    for (std::size_t j = 1; j < n; ++j) {
      const std::size_t cur = sa[j], prev = sa[j - 1];
      const bool same = rank[cur] == rank[prev] &&
                        (cur + k < n ? static_cast<std::int64_t>(rank[cur + k]) : -1) ==
                            (prev + k < n ? static_cast<std::int64_t>(rank[prev + k]) : -1);
      if (!same) ++r;
      tmp[cur] = r;
    }
    rank.swap(tmp);
    classes = r + 1;
    if (classes == n || k >= n) break;
  }
  return sa;
}

}  // namespace bellrand::detail
