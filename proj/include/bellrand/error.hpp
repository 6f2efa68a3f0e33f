#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace bellrand {

enum class Errc {
  MalformedLine,
  NonMonotonicTime,
  EmptyFile,
  CodeOutOfRange,
  LengthMismatch,
  IoFailure,
  InvalidConfig,
  EmptyScanGrid,
  EmptySequence,
  NoDataForPair,
  TooShort,
  LengthTooShort,
  BadCheckpoint,
  BlockTooSmall,
  SequenceTooShort,
  BadParameters,
  NoApplicableRuns,
};

std::string_view to_string(Errc code) noexcept;

/// Single exception type for every failure the library reports. `line` and
/// `value` carry the offending line number / value where one applies
/// (e.g. CodeOutOfRange(line, value), LengthMismatch(nV, nC)).
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what, std::size_t line = 0, std::int64_t value = 0)
      : std::runtime_error(what), code_(code), line_(line), value_(value) {}

  Errc code() const noexcept { return code_; }
  std::size_t line() const noexcept { return line_; }
  std::int64_t value() const noexcept { return value_; }

 private:
  Errc code_;
  std::size_t line_;
  std::int64_t value_;
};

}  // namespace bellrand
