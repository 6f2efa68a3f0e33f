#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "bellrand/ingest.hpp"

namespace bellrand {

/// Which station's clock stamps a coincidence.
enum class TimeReference { Alice, Bob, Midpoint };

std::string_view to_string(TimeReference r) noexcept;
TimeReference parse_time_reference(std::string_view text);

/// Matching parameters. `t_w` is the half-width of the acceptance window:
/// a pair is a coincidence iff |t_a - (t_b + delay)| <= t_w. The delay is
/// added to Bob's clock.
struct CoincidenceConfig {
  double t_w = 1e-9;
  double delay = 0.0;
  TimeReference time_reference = TimeReference::Alice;

  void validate() const;
};

struct CoincidenceEvent {
  double t = 0.0;
  std::uint8_t code_a = 0;
  std::uint8_t code_b = 0;

  friend bool operator==(const CoincidenceEvent&, const CoincidenceEvent&) = default;
};

struct CoincidenceSequence {
  std::vector<CoincidenceEvent> events;
  CoincidenceConfig config;

  std::size_t size() const noexcept { return events.size(); }
  bool empty() const noexcept { return events.empty(); }
  std::vector<double> times() const;
};

/// Delay grid `min + i*step` for every i with the point inside [min, max].
struct ScanGrid {
  double min = -1e-6;
  double max = 1e-6;
  double step = 1e-9;

  std::vector<double> points() const;
};

struct DelayScanResult {
  std::vector<std::pair<double, std::size_t>> curve;
  double best_delay = 0.0;
  std::size_t best_count = 0;
};

/// Greedy two-pointer matching; each event is used at most once. For
/// sorted inputs this greedy rule yields a maximum matching.
CoincidenceSequence match(const StationStream& alice, const StationStream& bob,
                          const CoincidenceConfig& config);

/// Count-only kernel behind match(); no allocation.
std::size_t count_matches(std::span<const double> alice_times, std::span<const double> bob_times,
                          double t_w, double delay) noexcept;

/// Evaluates the coincidence count on every grid delay (OpenMP across grid
/// points) and picks the argmax; ties go to the smallest |delay|, then the
/// smallest delay.
DelayScanResult scan_delay(const StationStream& alice, const StationStream& bob, double t_w,
                           const ScanGrid& grid);

CoincidenceSequence subset(const CoincidenceSequence& seq, std::uint8_t code_a,
                           std::uint8_t code_b);

namespace serial {

DelayScanResult scan_delay(const StationStream& alice, const StationStream& bob, double t_w,
                           const ScanGrid& grid);

}  // namespace serial

}  // namespace bellrand
