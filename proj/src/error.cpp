#include "bellrand/error.hpp"

namespace bellrand {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::MalformedLine: return "MalformedLine";
    case Errc::NonMonotonicTime: return "NonMonotonicTime";
    case Errc::EmptyFile: return "EmptyFile";
    case Errc::CodeOutOfRange: return "CodeOutOfRange";
    case Errc::LengthMismatch: return "LengthMismatch";
    case Errc::IoFailure: return "IoFailure";
    case Errc::InvalidConfig: return "InvalidConfig";
    case Errc::EmptyScanGrid: return "EmptyScanGrid";
    case Errc::EmptySequence: return "EmptySequence";
    case Errc::NoDataForPair: return "NoDataForPair";
    case Errc::TooShort: return "TooShort";
    case Errc::LengthTooShort: return "LengthTooShort";
    case Errc::BadCheckpoint: return "BadCheckpoint";
    case Errc::BlockTooSmall: return "BlockTooSmall";
    case Errc::SequenceTooShort: return "SequenceTooShort";
    case Errc::BadParameters: return "BadParameters";
    case Errc::NoApplicableRuns: return "NoApplicableRuns";
  }
  return "Unknown";
}

}  // namespace bellrand
