#include "bellrand/synth.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <random>

#include "bellrand/error.hpp"

namespace bellrand {

void SynthConfig::validate() const {
  const auto bad = [](const std::string& what) { throw Error(Errc::InvalidConfig, what); };
  if (!(pair_rate > 0.0) || !std::isfinite(pair_rate)) bad("pair_rate must be positive");
  if (!(duration > 0.0) || !std::isfinite(duration)) bad("duration must be positive");
  if (!(visibility >= 0.0 && visibility <= 1.0)) bad("visibility must be in [0, 1]");
  if (!(efficiency > 0.0 && efficiency <= 1.0)) bad("efficiency must be in (0, 1]");
  if (!(jitter_sigma >= 0.0) || !std::isfinite(jitter_sigma)) bad("jitter_sigma must be >= 0");
  if (!std::isfinite(drift_rate) || drift_rate <= -1.0) bad("drift_rate must be finite and > -1");
  if (!std::isfinite(drift_offset)) bad("drift_offset must be finite");
  if (!(background_rate >= 0.0) || !std::isfinite(background_rate)) bad("background_rate must be >= 0");
  for (const double a : {angles_a[0], angles_a[1], angles_b[0], angles_b[1]}) {
    if (!std::isfinite(a)) bad("angles must be finite");
  }
  code_map.validate();
}

namespace {

constexpr double kDegree = std::numbers::pi / 180.0;

struct Pending {
  double t;
  std::uint8_t code;
};

StationStream finalize(Station station, std::vector<Pending> events) {
  std::erase_if(events, [](const Pending& e) { return e.t < 0.0; });
  std::sort(events.begin(), events.end(), [](const Pending& x, const Pending& y) { return x.t < y.t; });
  StationStream out{station, {}};
  out.events.reserve(events.size());
  for (const auto& e : events) {
    double t = e.t;
    if (!out.events.empty() && t <= out.events.back().t) {
      t = std::nextafter(out.events.back().t, std::numeric_limits<double>::infinity());
    }
    out.events.push_back({t, e.code});
  }
  return out;
}

}  // namespace

RunBundle gen_bell_run(const SynthConfig& config) {
  config.validate();
  std::mt19937_64 rng(config.seed);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  std::exponential_distribution<double> gap(config.pair_rate);
  std::normal_distribution<double> jitter(0.0, 1.0);

  std::vector<Pending> alice, bob;
  const auto expected = static_cast<std::size_t>(config.pair_rate * config.duration * config.efficiency);
  alice.reserve(expected + expected / 8 + 16);
  bob.reserve(expected + expected / 8 + 16);

  const auto bob_clock = [&](double t) { return t * (1.0 + config.drift_rate) + config.drift_offset; };

  for (double t = gap(rng); t < config.duration; t += gap(rng)) {
    // Fixed draw order per pair keeps the stream reproducible.
    const int setting_a = uniform(rng) < 0.5 ? 0 : 1;
    const int setting_b = uniform(rng) < 0.5 ? 0 : 1;
    const int outcome_a = uniform(rng) < 0.5 ? +1 : -1;
    const double e = config.visibility *
                     std::cos(2.0 * (config.angles_a[setting_a] - config.angles_b[setting_b]) * kDegree);
    const int outcome_b = uniform(rng) < 0.5 * (1.0 + e) ? outcome_a : -outcome_a;
    const bool keep_a = uniform(rng) < config.efficiency;
    const bool keep_b = uniform(rng) < config.efficiency;
    const double jitter_a = config.jitter_sigma * jitter(rng);
    const double jitter_b = config.jitter_sigma * jitter(rng);
    if (keep_a) alice.push_back({t + jitter_a, config.code_map.encode(setting_a, outcome_a)});
    if (keep_b) bob.push_back({bob_clock(t + jitter_b), config.code_map.encode(setting_b, outcome_b)});
  }

  if (config.background_rate > 0.0) {
    std::exponential_distribution<double> bg_gap(config.background_rate);
    std::uniform_int_distribution<int> code(0, 3);
    for (double t = bg_gap(rng); t < config.duration; t += bg_gap(rng)) {
      alice.push_back({t, static_cast<std::uint8_t>(code(rng))});
    }
    for (double t = bg_gap(rng); t < config.duration; t += bg_gap(rng)) {
      bob.push_back({bob_clock(t), static_cast<std::uint8_t>(code(rng))});
    }
  }

  RunBundle bundle;
  bundle.name = config.name;
  bundle.condition = Condition::Synthetic;
  bundle.alice = finalize(Station::Alice, std::move(alice));
  bundle.bob = finalize(Station::Bob, std::move(bob));
  return bundle;
}

namespace {

struct ReferenceGenerator {
  std::size_t n;

  BinarySequence operator()(const reference::Periodic& p) const {
    if (p.pattern.empty() ||
        p.pattern.find_first_not_of("01") != std::string::npos) {
      throw Error(Errc::BadParameters, "periodic pattern must be a non-empty 0/1 string");
    }
    BinarySequence out;
    out.encoding = "reference:periodic(" + p.pattern + ")";
    out.bits.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.bits[i] = static_cast<std::uint8_t>(p.pattern[i % p.pattern.size()] - '0');
    return out;
  }

  BinarySequence operator()(const reference::QuasiPeriodic& q) const {
    const auto in_band = [](double f) { return f > 0.0 && f < 0.5; };
    if (!in_band(q.f1) || !in_band(q.f2) || q.f1 == q.f2 || !std::isfinite(q.threshold)) {
      throw Error(Errc::BadParameters, "quasi-periodic tones must be distinct and in (0, 0.5)");
    }
    BinarySequence out;
    out.encoding = "reference:quasiperiodic";
    out.bits.resize(n);
    const double w1 = 2.0 * std::numbers::pi * q.f1, w2 = 2.0 * std::numbers::pi * q.f2;
    for (std::size_t i = 0; i < n; ++i) {
      const auto x = static_cast<double>(i);
      out.bits[i] = std::sin(w1 * x) + std::sin(w2 * x) > q.threshold ? 1 : 0;
    }
    return out;
  }

  BinarySequence operator()(const reference::Logistic& l) const {
    if (!(l.r > 0.0 && l.r <= 4.0) || !(l.x0 > 0.0 && l.x0 < 1.0)) {
      throw Error(Errc::BadParameters, "logistic map needs 0 < r <= 4 and 0 < x0 < 1");
    }
    BinarySequence out;
    out.encoding = "reference:logistic";
    out.bits.resize(n);
    double x = l.x0;
    for (std::size_t i = 0; i < n; ++i) {
      x = l.r * x * (1.0 - x);
      out.bits[i] = x > l.threshold ? 1 : 0;
    }
    return out;
  }

  BinarySequence operator()(const reference::Prng& p) const {
    BinarySequence out;
    out.encoding = "reference:prng(mt19937_64,seed=" + std::to_string(p.seed) + ")";
    out.bits.resize(n);
    std::mt19937_64 rng(p.seed);
    std::uint64_t word = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (i % 64 == 0) word = rng();
      out.bits[i] = static_cast<std::uint8_t>((word >> (i % 64)) & 1u);
    }
    return out;
  }
};

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::IoFailure, "cannot create " + path.string());
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw Error(Errc::IoFailure, "cannot write " + path.string());
}

}  // namespace

BinarySequence gen_reference(const ReferenceKind& kind, std::size_t n) {
  if (n < 2) throw Error(Errc::BadParameters, "reference sequence needs n >= 2");
  return std::visit(ReferenceGenerator{n}, kind);
}

std::array<std::filesystem::path, 4> write_run(const RunBundle& bundle,
                                               const std::filesystem::path& directory) {
  if (bundle.alice.empty() || bundle.bob.empty()) {
    throw Error(Errc::EmptySequence, "refusing to write a run with an empty station");
  }
  if (bundle.name.empty()) throw Error(Errc::InvalidConfig, "run name is empty");
  std::error_code ec;
  std::filesystem::create_directories(directory, ec);
  if (ec) throw Error(Errc::IoFailure, "cannot create " + directory.string() + ": " + ec.message());
  const auto files = run_files(directory / bundle.name);
  write_file(files.alice_v, format_time_file(bundle.alice));
  write_file(files.alice_c, format_code_file(bundle.alice));
  write_file(files.bob_v, format_time_file(bundle.bob));
  write_file(files.bob_c, format_code_file(bundle.bob));
  return {files.alice_v, files.alice_c, files.bob_v, files.bob_c};
}

SynthConfig drift_demonstration_config(bool drift_enabled) {
  SynthConfig c;
  c.name = drift_enabled ? "drift_demo_on" : "drift_demo_off";
  c.pair_rate = 2e4;
  c.duration = 5.0;
  c.visibility = 0.95;
  c.efficiency = 0.5;
  c.jitter_sigma = 1e-9;
  c.background_rate = 5e3;
  c.drift_rate = drift_enabled ? 2e-6 : 0.0;
  c.seed = 1722;
  return c;
}

}  // namespace bellrand
