#include "bellrand/coincidence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bellrand/error.hpp"

namespace bellrand {

std::string_view to_string(TimeReference r) noexcept {
  switch (r) {
    case TimeReference::Alice: return "alice";
    case TimeReference::Bob: return "bob";
    case TimeReference::Midpoint: return "midpoint";
  }
  return "alice";
}

TimeReference parse_time_reference(std::string_view text) {
  for (auto r : {TimeReference::Alice, TimeReference::Bob, TimeReference::Midpoint}) {
    if (to_string(r) == text) return r;
  }
  throw Error(Errc::InvalidConfig, "unknown time reference '" + std::string(text) + "'");
}

void CoincidenceConfig::validate() const {
  if (!(t_w > 0.0) || !std::isfinite(t_w)) {
    throw Error(Errc::InvalidConfig, "coincidence window must be positive");
  }
  if (!std::isfinite(delay)) throw Error(Errc::InvalidConfig, "delay must be finite");
}

std::vector<double> CoincidenceSequence::times() const {
  std::vector<double> out;
  out.reserve(events.size());
  for (const auto& e : events) out.push_back(e.t);
  return out;
}

std::vector<double> ScanGrid::points() const {
  if (!(step > 0.0) || !std::isfinite(step) || !std::isfinite(min) || !std::isfinite(max)) {
    throw Error(Errc::InvalidConfig, "scan step must be positive and bounds finite");
  }
  if (min > max) throw Error(Errc::EmptyScanGrid, "scan range is empty");
  // Small slack so that max itself is on the grid when (max-min)/step is
  // integral up to rounding.
  const double span = (max - min) / step;
  const auto count = static_cast<std::size_t>(std::floor(span + 1e-9)) + 1;
  std::vector<double> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double d = min + static_cast<double>(i) * step;
    out.push_back(std::abs(d) < 1e-9 * step ? 0.0 : d);  // keep an exact zero delay on the grid
  }
  return out;
}

std::size_t count_matches(std::span<const double> alice_times, std::span<const double> bob_times,
                          double t_w, double delay) noexcept {
  std::size_t i = 0, j = 0, n = 0;
  const std::size_t na = alice_times.size(), nb = bob_times.size();
  while (i < na && j < nb) {
    const double ta = alice_times[i];
    const double tb = bob_times[j] + delay;
    if (std::abs(ta - tb) <= t_w) {
      ++n;
      ++i;
      ++j;
    } else if (ta < tb) {
      ++i;
    } else {
      ++j;
    }
  }
  return n;
}

CoincidenceSequence match(const StationStream& alice, const StationStream& bob,
                          const CoincidenceConfig& config) {
  config.validate();
  CoincidenceSequence out;
  out.config = config;
  const auto& a = alice.events;
  const auto& b = bob.events;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    const double ta = a[i].t;
    const double tb = b[j].t + config.delay;
    if (std::abs(ta - tb) <= config.t_w) {
      double t = ta;
      if (config.time_reference == TimeReference::Bob) t = tb;
      else if (config.time_reference == TimeReference::Midpoint) t = 0.5 * (ta + tb);
      out.events.push_back({t, a[i].code, b[j].code});
      ++i;
      ++j;
    } else if (ta < tb) {
      ++i;
    } else {
      ++j;
    }
  }
  return out;
}

namespace {

void check_window(double t_w) {
  if (!(t_w > 0.0) || !std::isfinite(t_w)) {
    throw Error(Errc::InvalidConfig, "coincidence window must be positive");
  }
}

bool better(double delay, std::size_t count, double best_delay, std::size_t best_count) {
  if (count != best_count) return count > best_count;
  const double ad = std::abs(delay), ab = std::abs(best_delay);
  if (ad != ab) return ad < ab;
  return delay < best_delay;
}

DelayScanResult pick_best(std::vector<std::pair<double, std::size_t>> curve) {
  DelayScanResult result;
  result.best_delay = curve.front().first;
  result.best_count = curve.front().second;
  for (const auto& [d, n] : curve) {
    if (better(d, n, result.best_delay, result.best_count)) {
      result.best_delay = d;
      result.best_count = n;
    }
  }
  result.curve = std::move(curve);
  return result;
}

}  // namespace

DelayScanResult scan_delay(const StationStream& alice, const StationStream& bob, double t_w,
                           const ScanGrid& grid) {
  check_window(t_w);
  const auto delays = grid.points();
  const auto ta = alice.times();
  const auto tb = bob.times();
  std::vector<std::pair<double, std::size_t>> curve(delays.size());
  const auto count = static_cast<std::ptrdiff_t>(delays.size());
#pragma omp parallel for schedule(dynamic, 4)
  for (std::ptrdiff_t k = 0; k < count; ++k) {
    const double d = delays[static_cast<std::size_t>(k)];
    curve[static_cast<std::size_t>(k)] = {d, count_matches(ta, tb, t_w, d)};
  }
  return pick_best(std::move(curve));
}

CoincidenceSequence subset(const CoincidenceSequence& seq, std::uint8_t code_a,
                           std::uint8_t code_b) {
  if (code_a > 3 || code_b > 3) throw Error(Errc::InvalidConfig, "subset codes must be in 0..3");
  CoincidenceSequence out;
  out.config = seq.config;
  std::copy_if(seq.events.begin(), seq.events.end(), std::back_inserter(out.events),
               [&](const CoincidenceEvent& e) { return e.code_a == code_a && e.code_b == code_b; });
  return out;
}

namespace serial {

DelayScanResult scan_delay(const StationStream& alice, const StationStream& bob, double t_w,
                           const ScanGrid& grid) {
  check_window(t_w);
  std::vector<std::pair<double, std::size_t>> curve;
  for (const double d : grid.points()) {
    curve.emplace_back(d, match(alice, bob, {t_w, d, TimeReference::Alice}).size());
  }
  return pick_best(std::move(curve));
}

}  // namespace serial

}  // namespace bellrand
