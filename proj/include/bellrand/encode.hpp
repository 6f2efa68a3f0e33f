#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bellrand/coincidence.hpp"

namespace bellrand {

/// A bit string (one 0/1 byte per bit) plus a descriptor naming the
/// encoding that produced it. Downstream reports carry the descriptor.
struct BinarySequence {
  std::vector<std::uint8_t> bits;
  std::string encoding;

  std::size_t size() const noexcept { return bits.size(); }
  bool empty() const noexcept { return bits.empty(); }
  std::span<const std::uint8_t> view() const noexcept { return bits; }
  std::string to_string() const;

  /// Accepts '0'/'1' characters; whitespace is skipped, anything else throws
  /// MalformedLine.
  static BinarySequence from_text(std::string_view text, std::string encoding = "text");
};

/// Two bits per code, most significant bit first.
BinarySequence encode_codes(std::span<const std::uint8_t> codes);

/// Inverse of encode_codes (2-bit chunking); the length must be even.
std::vector<std::uint8_t> decode_codes(std::span<const std::uint8_t> bits);

/// Four bits per coincidence: code_a then code_b, each MSB first.
BinarySequence encode_joint(const CoincidenceSequence& seq);

/// Alice's codes of the matched coincidences, two bits each.
BinarySequence encode_alice_codes(const CoincidenceSequence& seq);

/// Inter-arrival binarization: delta > median -> 1, otherwise 0.
/// Needs at least 3 strictly increasing times.
BinarySequence binarize_times(std::span<const double> times);

}  // namespace bellrand
