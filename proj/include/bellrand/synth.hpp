#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <variant>

#include "bellrand/chsh.hpp"
#include "bellrand/encode.hpp"
#include "bellrand/ingest.hpp"

namespace bellrand {

/// Parameters of a synthetic two-station run.
///
/// Pairs are emitted as a Poisson process of rate `pair_rate` over
/// `duration`. Each station picks a fair setting per pair; Alice's outcome
/// is fair and Bob's agrees with it with probability (1 + E)/2 where
/// E(a, b) = visibility * cos(2 (a - b)) (angles in degrees). Each station
/// keeps a detection with probability `efficiency`, adds Gaussian jitter,
/// and Bob's clock reads t * (1 + drift_rate) + drift_offset.
/// `background_rate` adds uncorrelated singles per station.
struct SynthConfig {
  std::string name = "synth";
  double pair_rate = 1e4;
  double duration = 1.0;
  double visibility = 1.0;
  std::array<double, 2> angles_a{0.0, 45.0};
  std::array<double, 2> angles_b{22.5, 67.5};
  double efficiency = 1.0;
  double jitter_sigma = 0.0;
  double drift_rate = 0.0;
  double drift_offset = 0.0;
  double background_rate = 0.0;
  std::uint64_t seed = 1;
  CodeMap code_map;

  void validate() const;
};

/// Deterministic for a fixed seed (single mt19937_64 stream).
RunBundle gen_bell_run(const SynthConfig& config);

namespace reference {

struct Periodic {
  std::string pattern = "01";
};
/// sign(sin(2 pi f1 i) + sin(2 pi f2 i) - threshold); default tones are
/// incommensurate (ratio 1/golden).
struct QuasiPeriodic {
  double f1 = 0.1;
  double f2 = 0.1 * 0.6180339887498949;
  double threshold = 0.0;
};
struct Logistic {
  double r = 4.0;
  double x0 = 0.3;
  double threshold = 0.5;
};
struct Prng {
  std::uint64_t seed = 1;
};

}  // namespace reference

using ReferenceKind =
    std::variant<reference::Periodic, reference::QuasiPeriodic, reference::Logistic, reference::Prng>;

BinarySequence gen_reference(const ReferenceKind& kind, std::size_t n);

/// Writes `<name>_alice_V.dat`, `<name>_alice_C.dat`, `<name>_bob_V.dat`,
/// `<name>_bob_C.dat` into `directory` (created if missing).
std::array<std::filesystem::path, 4> write_run(const RunBundle& bundle,
                                               const std::filesystem::path& directory);

/// The shipped clock-drift demonstration: identical runs except for the Bob
/// clock drift. Analyze with t_w = kDriftDemoWindow, delay 0, inter-arrival
/// encoding.
SynthConfig drift_demonstration_config(bool drift_enabled);
inline constexpr double kDriftDemoWindow = 5e-7;

}  // namespace bellrand
