#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bellrand/chsh.hpp"
#include "bellrand/coincidence.hpp"
#include "bellrand/ingest.hpp"
#include "bellrand/nist.hpp"

namespace bellrand {

enum class Encoding { Codes, Joint, Dt };

std::string_view to_string(Encoding e) noexcept;
Encoding parse_encoding(std::string_view text);

/// Pipeline settings for a batch. Unset `encoding` means the per-row
/// default: joint codes for coincidences, 2-bit codes for singles.
struct AnalyzeConfig {
  double t_w = 1e-9;
  double delay = 0.0;
  bool scan = false;
  ScanGrid scan_grid;
  std::optional<Encoding> encoding;
  double alpha = nist::kDefaultAlpha;
  std::size_t block_size = nist::kDefaultBlockSize;
  double k_threshold = 0.9;
  std::optional<std::pair<std::uint8_t, std::uint8_t>> subset;
  bool singles = false;
  CodeMap code_map;
  SignMode sign_mode = SignMode::Auto;
  TimeReference time_reference = TimeReference::Alice;
  Condition condition = Condition::RemoteSwitched;
};

/// One output row. `n` is the event count (coincidences, or Alice singles),
/// `bits` the length of the analyzed binary string.
struct RunReport {
  std::string name;
  std::string kind;  // "coincidences", "subset a,b" or "singles"
  Condition condition = Condition::RemoteSwitched;
  std::string encoding;
  std::size_t n = 0;
  std::size_t bits = 0;
  std::size_t c = 0;
  double k = 0.0;
  bool nist_overall = false;
  std::array<double, 6> p_values{};
  std::array<nist::Status, 6> statuses{};
  std::optional<double> s_chsh;
  std::string sign;
  double t_w = 0.0;
  double delay = 0.0;
  bool random = false;
  bool ok = true;
  std::string error;
};

/// All rows for one in-memory run: the coincidence (or subset) row, plus a
/// singles row when requested.
std::vector<RunReport> analyze_bundle(const RunBundle& bundle, const AnalyzeConfig& config);

/// Loads and analyzes each prefix; runs are processed in parallel and rows
/// returned in input order. A run that fails yields a single row with
/// ok == false.
std::vector<RunReport> analyze(std::span<const std::filesystem::path> prefixes,
                               const AnalyzeConfig& config);

// Shared number formatting so text and CSV carry identical digits.
std::string format_k(double k);
std::string format_p(double p);
std::string format_s(const std::optional<double>& s);
std::string format_seconds(double t);

std::string format_csv(std::span<const RunReport> reports);
std::string format_text(std::span<const RunReport> reports);
std::vector<RunReport> parse_csv(std::string_view csv);

struct ScatterPoint {
  std::string name;
  double k = 0.0;
  double s_chsh = 0.0;
  bool nist_overall = false;
};

inline constexpr double kBellLimit = 2.0;
inline constexpr double kScatterKLine = 0.9;

/// Rows with an applicable S; throws NoApplicableRuns if there are none.
std::vector<ScatterPoint> scatter(std::span<const RunReport> reports);
std::string format_scatter_csv(std::span<const ScatterPoint> points, double k_line = kScatterKLine,
                               double bell_limit = kBellLimit);

}  // namespace bellrand
