// Parallel kernels against their serial references.

#include <benchmark/benchmark.h>

#include "bellrand/chsh.hpp"
#include "bellrand/coincidence.hpp"
#include "bellrand/complexity.hpp"
#include "bellrand/nist.hpp"
#include "bellrand/synth.hpp"

using namespace bellrand;

namespace {

const RunBundle& bell_run() {
  static const RunBundle run = [] {
    SynthConfig cfg;
    cfg.pair_rate = 2e5;
    cfg.jitter_sigma = 1e-9;
    cfg.background_rate = 5e4;
    cfg.drift_offset = 1.2e-6;
    return gen_bell_run(cfg);
  }();
  return run;
}

const CoincidenceSequence& coincidences() {
  static const CoincidenceSequence seq = [] {
    CoincidenceConfig cfg;
    cfg.t_w = 5e-9;
    cfg.delay = -1.2e-6;
    return match(bell_run().alice, bell_run().bob, cfg);
  }();
  return seq;
}

const BinarySequence& bits(std::size_t n) {
  static const BinarySequence all = gen_reference(reference::Prng{11}, 1 << 20);
  static BinarySequence cut;
  if (cut.bits.size() != n) cut.bits.assign(all.bits.begin(), all.bits.begin() + static_cast<std::ptrdiff_t>(n));
  return cut;
}

const ScanGrid kGrid{-4e-6, 4e-6, 5e-8};

void BM_ScanDelay(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(scan_delay(bell_run().alice, bell_run().bob, 5e-8, kGrid));
}
void BM_ScanDelaySerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(serial::scan_delay(bell_run().alice, bell_run().bob, 5e-8, kGrid));
}

void BM_Tally(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(tally(coincidences(), CodeMap{}));
}
void BM_TallySerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(serial::tally(coincidences(), CodeMap{}));
}

void BM_RankCategories(benchmark::State& state) {
  const auto& b = bits(1 << 20);
  for (auto _ : state) benchmark::DoNotOptimize(nist::rank_categories(b.view(), 32, 32));
}
void BM_RankCategoriesSerial(benchmark::State& state) {
  const auto& b = bits(1 << 20);
  for (auto _ : state) benchmark::DoNotOptimize(nist::serial::rank_categories(b.view(), 32, 32));
}

void BM_Battery(benchmark::State& state) {
  const auto& b = bits(1 << 20);
  for (auto _ : state) benchmark::DoNotOptimize(nist::battery(b.view()));
}
void BM_BatterySerial(benchmark::State& state) {
  const auto& b = bits(1 << 20);
  for (auto _ : state) benchmark::DoNotOptimize(nist::serial::battery(b.view()));
}

void BM_Lz76SuffixArray(benchmark::State& state) {
  const auto& b = bits(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(lz76_count(b.view()));
}
void BM_Lz76Scan(benchmark::State& state) {
  const auto& b = bits(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(serial::lz76_count(b.view()));
}

}  // namespace

BENCHMARK(BM_ScanDelay)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ScanDelaySerial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Tally)->Unit(benchmark::kMicrosecond)->UseRealTime();
BENCHMARK(BM_TallySerial)->Unit(benchmark::kMicrosecond)->UseRealTime();
BENCHMARK(BM_RankCategories)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_RankCategoriesSerial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Battery)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_BatterySerial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Lz76SuffixArray)->Arg(1 << 14)->Arg(1 << 17)->Arg(1 << 20)->Unit(benchmark::kMillisecond);
// Quadratic scan; larger sizes take minutes.
BENCHMARK(BM_Lz76Scan)->Arg(1 << 14)->Arg(1 << 17)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
