#include <benchmark/benchmark.h>

#include <random>

#include "biseld/btff/btff.hpp"

namespace {

void BM_ExtractBtff(benchmark::State& state) {
  const biseld::dsp::FeatureConfig config;
  const auto n = static_cast<std::size_t>(state.range(0)) * config.sample_rate;
  std::mt19937_64 gen(7);
  std::normal_distribution<double> dist(0.0, 0.1);
  std::vector<double> l(n), r(n);
  for (std::size_t i = 0; i < n; ++i) {
    l[i] = dist(gen);
    r[i] = dist(gen);
  }
  const biseld::dsp::AudioClip clip({l, r}, config.sample_rate);
  for (auto _ : state) benchmark::DoNotOptimize(biseld::btff::extract_btff(clip, config));
  state.counters["realtime_x"] = benchmark::Counter(
      static_cast<double>(state.range(0)) * static_cast<double>(state.iterations()),
      benchmark::Counter::kIsRate);
}
BENCHMARK(BM_ExtractBtff)->Arg(10)->Arg(60)->Unit(benchmark::kMillisecond);

}  // namespace
