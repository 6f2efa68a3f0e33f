#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace bellrand {

enum class Station { Alice, Bob };

enum class Condition { RemoteSwitched, LocalSwitched, LocalStatic, Uncorrelated, Synthetic };

std::string_view to_string(Station s) noexcept;
std::string_view to_string(Condition c) noexcept;
Condition parse_condition(std::string_view text);

/// One time-tagged detection. `t` is seconds from run start, `code` the
/// two-bit setting/detector label.
struct DetectionEvent {
  double t = 0.0;
  std::uint8_t code = 0;

  friend bool operator==(const DetectionEvent&, const DetectionEvent&) = default;
};

/// Singles of one station; times strictly increasing.
struct StationStream {
  Station station = Station::Alice;
  std::vector<DetectionEvent> events;

  std::size_t size() const noexcept { return events.size(); }
  bool empty() const noexcept { return events.empty(); }
  std::vector<double> times() const;
  std::vector<std::uint8_t> codes() const;

  friend bool operator==(const StationStream&, const StationStream&) = default;
};

struct RunBundle {
  std::string name;
  StationStream alice{Station::Alice, {}};
  StationStream bob{Station::Bob, {}};
  Condition condition = Condition::Synthetic;

  friend bool operator==(const RunBundle&, const RunBundle&) = default;
};

// Line parsers for the *_V.dat / *_C.dat formats. Lines are trimmed, blank
// lines skipped, LF and CRLF both accepted. Reported line numbers are
// 1-based physical line numbers.
std::vector<double> parse_time_file(std::string_view content);
std::vector<std::uint8_t> parse_code_file(std::string_view content);

StationStream load_station(std::string_view v_content, std::string_view c_content,
                           Station station);

std::string read_text_file(const std::filesystem::path& path);

StationStream load_station_files(const std::filesystem::path& v_file,
                                 const std::filesystem::path& c_file, Station station);

/// File names of a run: `<prefix>_alice_V.dat`, `<prefix>_alice_C.dat`,
/// `<prefix>_bob_V.dat`, `<prefix>_bob_C.dat`.
struct RunFiles {
  std::filesystem::path alice_v, alice_c, bob_v, bob_c;
};
RunFiles run_files(const std::filesystem::path& prefix);

/// Loads the four files of the run at `prefix`; the run name is the last
/// path component of the prefix.
RunBundle load_run(const std::filesystem::path& prefix, Condition condition);

/// Expands a command-line run argument: a directory yields every
/// `*_alice_V.dat` prefix inside it (sorted), anything else is taken as a
/// prefix verbatim.
std::vector<std::filesystem::path> resolve_run_prefixes(const std::filesystem::path& arg);

// Serialization in the same format the parsers accept; times are written
// with 17 significant digits so they reload bit-exactly.
std::string format_time_file(const StationStream& stream);
std::string format_code_file(const StationStream& stream);

}  // namespace bellrand
