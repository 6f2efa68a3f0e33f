#include "bellrand/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "bellrand/error.hpp"

namespace bellrand {

namespace {

std::string_view trim(std::string_view s) {
  const auto ws = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\v'; };
  while (!s.empty() && ws(s.front())) s.remove_prefix(1);
  while (!s.empty() && ws(s.back())) s.remove_suffix(1);
  return s;
}

// Calls fn(line_number, trimmed_line) for every non-blank line.
template <typename Fn>
void for_each_line(std::string_view content, Fn&& fn) {
  std::size_t line_no = 0;
  while (!content.empty()) {
    ++line_no;
    const auto eol = content.find('\n');
    const auto line = content.substr(0, eol);
    content.remove_prefix(eol == std::string_view::npos ? content.size() : eol + 1);
    const auto t = trim(line);
    if (!t.empty()) fn(line_no, t);
  }
}

[[noreturn]] void malformed(std::size_t line, std::string_view text) {
  throw Error(Errc::MalformedLine,
              "malformed line " + std::to_string(line) + ": '" + std::string(text) + "'", line);
}

}  // namespace

std::string_view to_string(Station s) noexcept { return s == Station::Alice ? "alice" : "bob"; }

std::string_view to_string(Condition c) noexcept {
  switch (c) {
    case Condition::RemoteSwitched: return "remote-switched";
    case Condition::LocalSwitched: return "local-switched";
    case Condition::LocalStatic: return "local-static";
    case Condition::Uncorrelated: return "uncorrelated";
    case Condition::Synthetic: return "synthetic";
  }
  return "unknown";
}

Condition parse_condition(std::string_view text) {
  for (auto c : {Condition::RemoteSwitched, Condition::LocalSwitched, Condition::LocalStatic,
                 Condition::Uncorrelated, Condition::Synthetic}) {
    if (to_string(c) == text) return c;
  }
  throw Error(Errc::InvalidConfig, "unknown condition '" + std::string(text) + "'");
}

std::vector<double> StationStream::times() const {
  std::vector<double> out;
  out.reserve(events.size());
  for (const auto& e : events) out.push_back(e.t);
  return out;
}

std::vector<std::uint8_t> StationStream::codes() const {
  std::vector<std::uint8_t> out;
  out.reserve(events.size());
  for (const auto& e : events) out.push_back(e.code);
  return out;
}

std::vector<double> parse_time_file(std::string_view content) {
  std::vector<double> times;
  times.reserve(content.size() / 24);
  for_each_line(content, [&](std::size_t line_no, std::string_view text) {
    double value = 0.0;
    const char* first = text.data();
    if (!text.empty() && text.front() == '+') ++first;
    const char* last = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || !std::isfinite(value) || value < 0.0) {
      malformed(line_no, text);
    }
    if (!times.empty() && value <= times.back()) {
      throw Error(Errc::NonMonotonicTime,
                  "time on line " + std::to_string(line_no) + " does not increase", line_no);
    }
    times.push_back(value);
  });
  if (times.empty()) throw Error(Errc::EmptyFile, "time file has no events");
  return times;
}

std::vector<std::uint8_t> parse_code_file(std::string_view content) {
  std::vector<std::uint8_t> codes;
  codes.reserve(content.size() / 2);
  for_each_line(content, [&](std::size_t line_no, std::string_view text) {
    long long value = 0;
    const char* first = text.data();
    if (!text.empty() && text.front() == '+') ++first;
    const char* last = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last) malformed(line_no, text);
    if (value < 0 || value > 3) {
      throw Error(Errc::CodeOutOfRange,
                  "code " + std::to_string(value) + " on line " + std::to_string(line_no) +
                      " is outside 0..3",
                  line_no, value);
    }
    codes.push_back(static_cast<std::uint8_t>(value));
  });
  if (codes.empty()) throw Error(Errc::EmptyFile, "code file has no events");
  return codes;
}

StationStream load_station(std::string_view v_content, std::string_view c_content,
                           Station station) {
  const auto times = parse_time_file(v_content);
  const auto codes = parse_code_file(c_content);
  if (times.size() != codes.size()) {
    throw Error(Errc::LengthMismatch,
                "station " + std::string(to_string(station)) + ": " + std::to_string(times.size()) +
                    " times vs " + std::to_string(codes.size()) + " codes",
                times.size(), static_cast<std::int64_t>(codes.size()));
  }
  StationStream stream{station, {}};
  stream.events.reserve(times.size());
  for (std::size_t i = 0; i < times.size(); ++i) stream.events.push_back({times[i], codes[i]});
  return stream;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::IoFailure, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw Error(Errc::IoFailure, "cannot read " + path.string());
  return std::move(ss).str();
}

StationStream load_station_files(const std::filesystem::path& v_file,
                                 const std::filesystem::path& c_file, Station station) {
  return load_station(read_text_file(v_file), read_text_file(c_file), station);
}

RunFiles run_files(const std::filesystem::path& prefix) {
  const auto base = prefix.string();
  return {base + "_alice_V.dat", base + "_alice_C.dat", base + "_bob_V.dat", base + "_bob_C.dat"};
}

RunBundle load_run(const std::filesystem::path& prefix, Condition condition) {
  const auto files = run_files(prefix);
  RunBundle bundle;
  bundle.name = prefix.filename().string();
  bundle.condition = condition;
  bundle.alice = load_station_files(files.alice_v, files.alice_c, Station::Alice);
  bundle.bob = load_station_files(files.bob_v, files.bob_c, Station::Bob);
  return bundle;
}

std::vector<std::filesystem::path> resolve_run_prefixes(const std::filesystem::path& arg) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (!fs::is_directory(arg, ec)) return {arg};
  constexpr std::string_view suffix = "_alice_V.dat";
  std::vector<fs::path> prefixes;
  for (const auto& entry : fs::directory_iterator(arg, ec)) {
    const auto name = entry.path().filename().string();
    if (name.size() > suffix.size() && name.ends_with(suffix)) {
      prefixes.push_back(entry.path().parent_path() / name.substr(0, name.size() - suffix.size()));
    }
  }
  std::sort(prefixes.begin(), prefixes.end());
  if (prefixes.empty()) return {arg};
  return prefixes;
}

std::string format_time_file(const StationStream& stream) {
  std::string out;
  out.reserve(stream.size() * 24);
  char buf[40];
  for (const auto& e : stream.events) {
    const int len = std::snprintf(buf, sizeof buf, "%.16e\n", e.t);
    out.append(buf, static_cast<std::size_t>(len));
  }
  return out;
}

std::string format_code_file(const StationStream& stream) {
  std::string out;
  out.reserve(stream.size() * 2);
  for (const auto& e : stream.events) {
    out.push_back(static_cast<char>('0' + e.code));
    out.push_back('\n');
  }
  return out;
}

}  // namespace bellrand
