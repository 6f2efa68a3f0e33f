// bellrand: coincidence extraction, CHSH, Lempel-Ziv complexity and NIST
// battery for time-tagged two-station Bell runs.

#include <CLI11.hpp>

#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "bellrand/complexity.hpp"
#include "bellrand/encode.hpp"
#include "bellrand/error.hpp"
#include "bellrand/ingest.hpp"
#include "bellrand/nist.hpp"
#include "bellrand/report.hpp"
#include "bellrand/synth.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitBadArgs = 2;

struct BadArgs : std::runtime_error {
  using std::runtime_error::runtime_error;
};

double to_double(const std::string& s, const std::string& what) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) throw BadArgs("bad number for " + what + ": '" + s + "'");
  return v;
}

std::pair<std::string, std::string> split_pair(const std::string& s, const std::string& what) {
  const auto comma = s.find(',');
  if (comma == std::string::npos) throw BadArgs(what + " expects two comma-separated values");
  return {s.substr(0, comma), s.substr(comma + 1)};
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
  if (!out) throw bellrand::Error(bellrand::Errc::IoFailure, "cannot create " + out_path);
  out << text;
}

bellrand::BinarySequence read_bits(const std::string& input, const std::string& inline_bits) {
  if (!inline_bits.empty()) return bellrand::BinarySequence::from_text(inline_bits, "text");
  if (input.empty() || input == "-") {
    std::string all((std::istreambuf_iterator<char>(std::cin)), std::istreambuf_iterator<char>());
    return bellrand::BinarySequence::from_text(all, "text:stdin");
  }
  return bellrand::BinarySequence::from_text(bellrand::read_text_file(input), "text:" + input);
}

// ---- analyze --------------------------------------------------------------

struct AnalyzeArgs {
  std::vector<std::string> runs;
  double t_w = 0.0;
  bool full_width = false;
  std::string delay = "0";
  std::string scan_range = "-2e-6,2e-6";
  std::optional<double> scan_step;
  std::string encoding;
  double alpha = bellrand::nist::kDefaultAlpha;
  std::size_t block_size = bellrand::nist::kDefaultBlockSize;
  double k_threshold = 0.9;
  std::string subset;
  bool singles = false;
  std::string out;
  std::string format = "text";
  std::string sign = "auto";
  int setting_bit = 1;
  std::string time_ref = "alice";
  std::string condition = "remote-switched";
};

int run_analyze(const AnalyzeArgs& a) {
  bellrand::AnalyzeConfig config;
  config.t_w = a.full_width ? a.t_w / 2.0 : a.t_w;
  if (a.delay == "scan") {
    config.scan = true;
    const auto [lo, hi] = split_pair(a.scan_range, "--scan-range");
    config.scan_grid.min = to_double(lo, "--scan-range");
    config.scan_grid.max = to_double(hi, "--scan-range");
    config.scan_grid.step = a.scan_step.value_or(config.t_w);
  } else {
    config.delay = to_double(a.delay, "--delay");
  }
  if (!a.encoding.empty()) config.encoding = bellrand::parse_encoding(a.encoding);
  config.alpha = a.alpha;
  config.block_size = a.block_size;
  config.k_threshold = a.k_threshold;
  if (!a.subset.empty()) {
    const auto [ca, cb] = split_pair(a.subset, "--subset");
    const auto code = [](const std::string& s) {
      if (s.size() != 1 || s[0] < '0' || s[0] > '3') throw BadArgs("--subset codes must be in 0..3");
      return static_cast<std::uint8_t>(s[0] - '0');
    };
    config.subset = std::make_pair(code(ca), code(cb));
  }
  config.singles = a.singles;
  config.sign_mode = a.sign == "fixed" ? bellrand::SignMode::Fixed : bellrand::SignMode::Auto;
  config.code_map.setting_bit = a.setting_bit;
  config.code_map.outcome_bit = 1 - a.setting_bit;
  config.time_reference = bellrand::parse_time_reference(a.time_ref);
  config.condition = bellrand::parse_condition(a.condition);

  std::vector<std::filesystem::path> prefixes;
  for (const auto& r : a.runs) {
    for (auto& p : bellrand::resolve_run_prefixes(r)) prefixes.push_back(std::move(p));
  }
  const auto reports = bellrand::analyze(prefixes, config);
  emit(a.format == "csv" ? bellrand::format_csv(reports) : bellrand::format_text(reports), a.out);
  const bool any_ok = std::any_of(reports.begin(), reports.end(), [](const auto& r) { return r.ok; });
  for (const auto& r : reports) {
    if (!r.ok) std::cerr << "bellrand: " << r.name << " (" << r.kind << "): " << r.error << '\n';
  }
  return any_ok ? kExitOk : kExitFailure;
}

// ---- synth ----------------------------------------------------------------

struct SynthArgs {
  bellrand::SynthConfig config;
  std::string angles_a = "0,45";
  std::string angles_b = "22.5,67.5";
  std::string out_dir = ".";
  std::string drift_demo;
};

int run_synth(SynthArgs a) {
  auto config = a.config;
  if (!a.drift_demo.empty()) {
    if (a.drift_demo != "on" && a.drift_demo != "off") throw BadArgs("--drift-demo expects on|off");
    config = bellrand::drift_demonstration_config(a.drift_demo == "on");
  } else {
    const auto [a0, a1] = split_pair(a.angles_a, "--angles-a");
    const auto [b0, b1] = split_pair(a.angles_b, "--angles-b");
    config.angles_a = {to_double(a0, "--angles-a"), to_double(a1, "--angles-a")};
    config.angles_b = {to_double(b0, "--angles-b"), to_double(b1, "--angles-b")};
  }
  const auto bundle = bellrand::gen_bell_run(config);
  for (const auto& path : bellrand::write_run(bundle, a.out_dir)) std::cout << path.string() << '\n';
  std::cerr << "bellrand: " << bundle.name << ": alice " << bundle.alice.size() << " events, bob "
            << bundle.bob.size() << " events\n";
  return kExitOk;
}

// ---- reference ------------------------------------------------------------

struct ReferenceArgs {
  std::string kind = "prng";
  std::size_t length = 1000000;
  std::string pattern = "01";
  double f1 = 0.1, f2 = 0.1 * 0.6180339887498949, threshold = 0.0;
  double r = 4.0, x0 = 0.3, logistic_threshold = 0.5;
  std::uint64_t seed = 1;
  std::string out;
};

int run_reference(const ReferenceArgs& a) {
  bellrand::ReferenceKind kind;
  if (a.kind == "periodic") kind = bellrand::reference::Periodic{a.pattern};
  else if (a.kind == "quasiperiodic") kind = bellrand::reference::QuasiPeriodic{a.f1, a.f2, a.threshold};
  else if (a.kind == "logistic") kind = bellrand::reference::Logistic{a.r, a.x0, a.logistic_threshold};
  else if (a.kind == "prng") kind = bellrand::reference::Prng{a.seed};
  else throw BadArgs("unknown reference kind '" + a.kind + "'");
  emit(bellrand::gen_reference(kind, a.length).to_string() + '\n', a.out);
  return kExitOk;
}

// ---- complexity / nist ----------------------------------------------------

int run_complexity(const std::string& input, const std::string& bits_text, const std::string& checkpoints) {
  const auto seq = read_bits(input, bits_text);
  if (checkpoints.empty()) {
    const auto r = bellrand::complexity(seq.view());
    std::cout << "n,c,k\n" << r.n << ',' << r.c << ',' << bellrand::format_k(r.k) << '\n';
    return kExitOk;
  }
  std::vector<std::size_t> points;
  std::string_view rest = checkpoints;
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    const std::string item(rest.substr(0, comma));
    std::size_t v = 0;
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (ec != std::errc{} || ptr != item.data() + item.size()) throw BadArgs("bad checkpoint '" + item + "'");
    points.push_back(v);
    rest.remove_prefix(comma == std::string_view::npos ? rest.size() : comma + 1);
  }
  std::cout << "n,c,k\n";
  for (const auto& p : bellrand::complexity_profile(seq.view(), points)) {
    std::cout << p.n << ',' << p.c << ',' << bellrand::format_k(p.k) << '\n';
  }
  return kExitOk;
}

int run_nist(const std::string& input, const std::string& bits_text, double alpha, std::size_t block_size) {
  const auto seq = read_bits(input, bits_text);
  const auto verdict = bellrand::nist::battery(seq.view(), alpha, block_size);
  std::cout << "test,p_value,status,statistic\n";
  for (const auto& r : verdict.results) {
    std::cout << r.name << ',' << bellrand::format_p(r.p_value) << ',' << bellrand::nist::to_string(r.status)
              << ',' << r.statistic << '\n';
  }
  std::cout << "overall," << (verdict.overall ? "yes" : "no") << ",,\n";
  return kExitOk;
}

int run_scatter(const std::string& input, const std::string& out, double k_line) {
  const auto reports = bellrand::parse_csv(bellrand::read_text_file(input));
  const auto points = bellrand::scatter(reports);
  emit(bellrand::format_scatter_csv(points, k_line), out);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Randomness certification for time-tagged Bell experiment runs"};
  app.require_subcommand(1);

  AnalyzeArgs an;
  auto* analyze = app.add_subcommand("analyze", "Coincidences, S_CHSH, complexity and NIST battery per run");
  analyze->add_option("runs", an.runs, "Run prefixes (<prefix>_alice_V.dat ...) or directories")->required();
  analyze->add_option("--tw", an.t_w, "Coincidence window half-width in seconds")->required();
  analyze->add_flag("--full-width", an.full_width, "Interpret --tw as the full window width");
  analyze->add_option("--delay", an.delay,
                      "Delay in seconds ADDED to Bob's times, or 'scan' to maximize coincidences")
      ->capture_default_str();
  analyze->add_option("--scan-range", an.scan_range, "Delay scan range min,max (seconds)")->capture_default_str();
  analyze->add_option("--scan-step", an.scan_step, "Delay scan step (default: the window)");
  analyze->add_option("--encoding", an.encoding, "codes | joint | dt (default: joint, singles: codes)")
      ->check(CLI::IsMember({"codes", "joint", "dt"}));
  analyze->add_option("--alpha", an.alpha, "NIST significance level")->capture_default_str();
  analyze->add_option("--block-size", an.block_size, "Block frequency block size")->capture_default_str();
  analyze->add_option("--k-threshold", an.k_threshold, "K threshold for the random verdict")->capture_default_str();
  analyze->add_option("--subset", an.subset, "Restrict to coincidences with codes a,b");
  analyze->add_flag("--singles", an.singles, "Add a row for Alice's singles code stream");
  analyze->add_option("--out", an.out, "Output path (default stdout)");
  analyze->add_option("--format", an.format, "text | csv")->check(CLI::IsMember({"text", "csv"}))->capture_default_str();
  analyze->add_option("--sign", an.sign, "CHSH sign placement: auto | fixed")
      ->check(CLI::IsMember({"auto", "fixed"}))->capture_default_str();
  analyze->add_option("--setting-bit", an.setting_bit, "Code bit holding the analyzer setting (other bit: outcome)")
      ->check(CLI::Range(0, 1))->capture_default_str();
  analyze->add_option("--time-ref", an.time_ref, "Coincidence timestamp: alice | bob | midpoint")
      ->check(CLI::IsMember({"alice", "bob", "midpoint"}))->capture_default_str();
  analyze->add_option("--condition", an.condition, "Experimental condition label for the rows")
      ->check(CLI::IsMember({"remote-switched", "local-switched", "local-static", "uncorrelated", "synthetic"}))
      ->capture_default_str();

  SynthArgs sy;
  auto* synth = app.add_subcommand("synth", "Generate a synthetic run in the four-file format");
  synth->add_option("--name", sy.config.name)->capture_default_str();
  synth->add_option("--pair-rate", sy.config.pair_rate, "Pairs per second")->capture_default_str();
  synth->add_option("--duration", sy.config.duration, "Seconds")->capture_default_str();
  synth->add_option("--visibility", sy.config.visibility)->capture_default_str();
  synth->add_option("--angles-a", sy.angles_a, "Alice analyzer angles a0,a1 (degrees)")->capture_default_str();
  synth->add_option("--angles-b", sy.angles_b, "Bob analyzer angles b0,b1 (degrees)")->capture_default_str();
  synth->add_option("--efficiency", sy.config.efficiency, "Per-station detection probability")->capture_default_str();
  synth->add_option("--jitter", sy.config.jitter_sigma, "Gaussian timing jitter sigma (s)")->capture_default_str();
  synth->add_option("--drift-rate", sy.config.drift_rate, "Bob clock scale error")->capture_default_str();
  synth->add_option("--drift-offset", sy.config.drift_offset, "Bob clock offset (s)")->capture_default_str();
  synth->add_option("--background-rate", sy.config.background_rate, "Uncorrelated singles per station (1/s)")
      ->capture_default_str();
  synth->add_option("--seed", sy.config.seed)->capture_default_str();
  synth->add_option("--out-dir", sy.out_dir)->capture_default_str();
  synth->add_option("--drift-demo", sy.drift_demo, "Write the shipped drift demonstration run (on|off)");

  ReferenceArgs rf;
  auto* reference = app.add_subcommand("reference", "Write a reference bit sequence");
  reference->add_option("kind", rf.kind, "periodic | quasiperiodic | logistic | prng")->required();
  reference->add_option("--length", rf.length)->capture_default_str();
  reference->add_option("--pattern", rf.pattern)->capture_default_str();
  reference->add_option("--f1", rf.f1)->capture_default_str();
  reference->add_option("--f2", rf.f2)->capture_default_str();
  reference->add_option("--tone-threshold", rf.threshold)->capture_default_str();
  reference->add_option("--r", rf.r)->capture_default_str();
  reference->add_option("--x0", rf.x0)->capture_default_str();
  reference->add_option("--logistic-threshold", rf.logistic_threshold)->capture_default_str();
  reference->add_option("--seed", rf.seed)->capture_default_str();
  reference->add_option("--out", rf.out);

  std::string cx_input, cx_bits, cx_checkpoints;
  auto* complexity = app.add_subcommand("complexity", "LZ76 word count and normalized K of a 0/1 sequence");
  complexity->add_option("input", cx_input, "File of 0/1 characters ('-' or omitted: stdin)");
  complexity->add_option("--bits", cx_bits, "Inline bit string");
  complexity->add_option("--checkpoints", cx_checkpoints, "Comma-separated prefix lengths");

  std::string ni_input, ni_bits;
  double ni_alpha = bellrand::nist::kDefaultAlpha;
  std::size_t ni_block = bellrand::nist::kDefaultBlockSize;
  auto* nist = app.add_subcommand("nist", "Six-test NIST battery on a 0/1 sequence");
  nist->add_option("input", ni_input, "File of 0/1 characters ('-' or omitted: stdin)");
  nist->add_option("--bits", ni_bits, "Inline bit string");
  nist->add_option("--alpha", ni_alpha)->capture_default_str();
  nist->add_option("--block-size", ni_block)->capture_default_str();

  std::string sc_input, sc_out;
  double sc_k_line = bellrand::kScatterKLine;
  auto* scatter = app.add_subcommand("scatter", "K vs S_CHSH plot data from an analyze CSV report");
  scatter->add_option("report", sc_input, "CSV written by 'analyze --format csv'")->required();
  scatter->add_option("--out", sc_out, "Output path (default stdout)");
  scatter->add_option("--k-line", sc_k_line)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitBadArgs;
  }

  try {
    if (*analyze) return run_analyze(an);
    if (*synth) return run_synth(sy);
    if (*reference) return run_reference(rf);
    if (*complexity) return run_complexity(cx_input, cx_bits, cx_checkpoints);
    if (*nist) return run_nist(ni_input, ni_bits, ni_alpha, ni_block);
    if (*scatter) return run_scatter(sc_input, sc_out, sc_k_line);
  } catch (const BadArgs& e) {
    std::cerr << "bellrand: " << e.what() << '\n';
    return kExitBadArgs;
  } catch (const bellrand::Error& e) {
    std::cerr << "bellrand: " << bellrand::to_string(e.code()) << ": " << e.what() << '\n';
    const auto code = e.code();
    const bool bad_args = code == bellrand::Errc::InvalidConfig || code == bellrand::Errc::BadParameters ||
                          code == bellrand::Errc::BlockTooSmall || code == bellrand::Errc::EmptyScanGrid ||
                          code == bellrand::Errc::BadCheckpoint;
    return bad_args ? kExitBadArgs : kExitFailure;
  } catch (const std::exception& e) {
    std::cerr << "bellrand: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitBadArgs;
}
