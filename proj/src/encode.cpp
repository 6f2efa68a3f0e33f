#include "bellrand/encode.hpp"

#include <algorithm>

#include "bellrand/error.hpp"

namespace bellrand {

std::string BinarySequence::to_string() const {
  std::string out(bits.size(), '0');
  for (std::size_t i = 0; i < bits.size(); ++i) out[i] = bits[i] ? '1' : '0';
  return out;
}

BinarySequence BinarySequence::from_text(std::string_view text, std::string encoding) {
  BinarySequence seq;
  seq.encoding = std::move(encoding);
  seq.bits.reserve(text.size());
  std::size_t line = 1;
  for (const char ch : text) {
    if (ch == '0' || ch == '1') {
      seq.bits.push_back(static_cast<std::uint8_t>(ch - '0'));
    } else if (ch == '\n') {
      ++line;
    } else if (ch != ' ' && ch != '\t' && ch != '\r') {
      throw Error(Errc::MalformedLine,
                  "unexpected character '" + std::string(1, ch) + "' on line " + std::to_string(line),
                  line);
    }
  }
  return seq;
}

BinarySequence encode_codes(std::span<const std::uint8_t> codes) {
  if (codes.empty()) throw Error(Errc::EmptySequence, "no codes to encode");
  BinarySequence seq;
  seq.encoding = "codes:2bit-msb";
  seq.bits.reserve(2 * codes.size());
  for (const auto c : codes) {
    seq.bits.push_back((c >> 1) & 1);
    seq.bits.push_back(c & 1);
  }
  return seq;
}

std::vector<std::uint8_t> decode_codes(std::span<const std::uint8_t> bits) {
  if (bits.size() % 2 != 0) throw Error(Errc::BadParameters, "code bit string has odd length");
  std::vector<std::uint8_t> codes(bits.size() / 2);
  for (std::size_t i = 0; i < codes.size(); ++i) {
    codes[i] = static_cast<std::uint8_t>((bits[2 * i] << 1) | bits[2 * i + 1]);
  }
  return codes;
}

BinarySequence encode_joint(const CoincidenceSequence& seq) {
  if (seq.empty()) throw Error(Errc::EmptySequence, "no coincidences to encode");
  BinarySequence out;
  out.encoding = "joint:4bit-msb(code_a,code_b)";
  out.bits.reserve(4 * seq.size());
  for (const auto& e : seq.events) {
    out.bits.push_back((e.code_a >> 1) & 1);
    out.bits.push_back(e.code_a & 1);
    out.bits.push_back((e.code_b >> 1) & 1);
    out.bits.push_back(e.code_b & 1);
  }
  return out;
}

BinarySequence encode_alice_codes(const CoincidenceSequence& seq) {
  if (seq.empty()) throw Error(Errc::EmptySequence, "no coincidences to encode");
  std::vector<std::uint8_t> codes;
  codes.reserve(seq.size());
  for (const auto& e : seq.events) codes.push_back(e.code_a);
  auto out = encode_codes(codes);
  out.encoding = "codes:2bit-msb(alice)";
  return out;
}

BinarySequence binarize_times(std::span<const double> times) {
  if (times.size() < 3) throw Error(Errc::TooShort, "inter-arrival encoding needs at least 3 times");
  std::vector<double> deltas(times.size() - 1);
  for (std::size_t i = 1; i < times.size(); ++i) {
    deltas[i - 1] = times[i] - times[i - 1];
    if (!(deltas[i - 1] > 0.0)) {
      throw Error(Errc::NonMonotonicTime, "times must be strictly increasing", i + 1);
    }
  }
  // Even counts use the mean of the two middle deltas.
  std::vector<double> sorted = deltas;
  const auto mid = sorted.begin() + static_cast<std::ptrdiff_t>((sorted.size() - 1) / 2);
  std::nth_element(sorted.begin(), mid, sorted.end());
  double median = *mid;
  if (sorted.size() % 2 == 0) {
    const double upper = *std::min_element(mid + 1, sorted.end());
    median = 0.5 * (median + upper);
  }
  BinarySequence out;
  out.encoding = "dt:median-threshold";
  out.bits.reserve(deltas.size());
  for (const double d : deltas) out.bits.push_back(d > median ? 1 : 0);
  return out;
}

}  // namespace bellrand
