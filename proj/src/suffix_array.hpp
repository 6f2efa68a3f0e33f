#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace bellrand::detail {

/// Suffix array of a string over a small integer alphabet (symbols < sigma)
/// by prefix doubling with two counting-sort passes per round.
std::vector<std::uint32_t> suffix_array(std::span<const std::uint8_t> text, std::uint32_t sigma);

}  // namespace bellrand::detail
